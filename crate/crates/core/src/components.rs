//! Irreducible components of the m-jet fiber `S_m^0` over the singular point.
//!
//! Components are labelled `(i, s, l)` with `2 ≤ i ≤ e-1`, `1 ≤ s ≤ ⌈m/2⌉` and
//! `s ≤ l ≤ m_i^s = min((c_i-1)s, m+1-s)`. The labels `(i, s, s)` and
//! `(i+1, s, m_{i+1}^s)` name the same component; a union-find over the labels
//! of each `s` produces the classes.

use rayon::prelude::*;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{exceptional_count_dual_cf, ToricSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    pub i: usize,
    pub s: usize,
    pub l: usize,
    pub m: usize,
}

impl ComponentLabel {
    /// Checks all label ranges against the surface.
    pub fn new(surface: &ToricSurface, m: usize, i: usize, s: usize, l: usize) -> Result<Self> {
        let cap = m_cap(surface, i, s, m)?;
        if !(s..=cap).contains(&l) {
            return Err(Error::IndexOutOfRange {
                what: "l",
                value: l as i64,
                lo: s as i64,
                hi: cap as i64,
            });
        }
        Ok(ComponentLabel { i, s, l, m })
    }

    /// Sort key `(s, i, l)`.
    pub fn key(&self) -> (usize, usize, usize) {
        (self.s, self.i, self.l)
    }
}

impl Serialize for ComponentLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.s)?;
        t.serialize_element(&self.l)?;
        t.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub canonical: ComponentLabel,
    pub members: Vec<ComponentLabel>,
    pub s: usize,
    pub codim: usize,
    pub dim: usize,
}

impl ComponentClass {
    pub fn index_of_speciality(&self) -> usize {
        self.s
    }
}

pub fn index_of_speciality(class: &ComponentClass) -> usize {
    class.index_of_speciality()
}

fn check_level(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::LevelTooSmall { m });
    }
    Ok(())
}

fn check_speciality(s: usize, m: usize) -> Result<()> {
    let hi = m.div_ceil(2);
    if !(1..=hi).contains(&s) {
        return Err(Error::IndexOutOfRange {
            what: "s",
            value: s as i64,
            lo: 1,
            hi: hi as i64,
        });
    }
    Ok(())
}

/// `m_i^s = min((c_i - 1)s, m + 1 - s)`.
pub fn m_cap(surface: &ToricSurface, i: usize, s: usize, m: usize) -> Result<usize> {
    check_level(m)?;
    surface.check_inner_index(i)?;
    check_speciality(s, m)?;
    let c = surface.c(i) as usize;
    Ok(((c - 1) * s).min(m + 1 - s))
}

/// Codimension `s·e + (m - (2s-1))(e-2)` in `A^e_m`.
pub fn codimension(surface: &ToricSurface, s: usize, m: usize) -> Result<usize> {
    check_level(m)?;
    check_speciality(s, m)?;
    let e = surface.e();
    Ok(s * e + (m + 1 - 2 * s) * (e - 2))
}

pub fn dimension(surface: &ToricSurface, s: usize, m: usize) -> Result<usize> {
    Ok(surface.e() * (m + 1) - codimension(surface, s, m)?)
}

/// Codimension `(m+1)(e-2)` of the closure of the jets over the smooth locus.
pub fn main_component_codim(surface: &ToricSurface, m: usize) -> usize {
    (m + 1) * (surface.e() - 2)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn slice_classes(surface: &ToricSurface, m: usize, s: usize) -> Vec<ComponentClass> {
    let e = surface.e();
    let codim = codimension(surface, s, m).expect("s in range");
    let dim = e * (m + 1) - codim;
    // labels in (i, l) order, which is (s, i, l) order within the slice
    let mut labels = Vec::new();
    for i in 2..e {
        let cap = m_cap(surface, i, s, m).expect("i, s in range");
        labels.extend((s..=cap).map(|l| ComponentLabel { i, s, l, m }));
    }
    let index = |i: usize, l: usize| {
        labels
            .iter()
            .position(|x| x.i == i && x.l == l)
            .expect("label exists")
    };
    let mut uf = UnionFind::new(labels.len());
    for i in 2..e - 1 {
        let cap = m_cap(surface, i + 1, s, m).expect("i in range");
        uf.union(index(i, s), index(i + 1, cap));
    }
    let mut classes: Vec<ComponentClass> = Vec::new();
    let mut root_class = vec![usize::MAX; labels.len()];
    for (k, &label) in labels.iter().enumerate() {
        let r = uf.find(k);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(ComponentClass {
                canonical: label,
                members: Vec::new(),
                s,
                codim,
                dim,
            });
        }
        classes[root_class[r]].members.push(label);
    }
    classes.sort_by_key(|c| c.canonical.key());
    classes
}

/// All component classes of `S_m^0`, sorted by `(s, i, l)` of the canonical
/// label (the lexicographic minimum of each class).
pub fn enumerate(surface: &ToricSurface, m: usize) -> Result<Vec<ComponentClass>> {
    check_level(m)?;
    Ok((1..=m.div_ceil(2))
        .flat_map(|s| slice_classes(surface, m, s))
        .collect())
}

/// Same result as [`enumerate`], with the `s`-slices computed in parallel.
pub fn enumerate_parallel(surface: &ToricSurface, m: usize) -> Result<Vec<ComponentClass>> {
    check_level(m)?;
    let slices: Vec<Vec<ComponentClass>> = (1..=m.div_ceil(2))
        .into_par_iter()
        .map(|s| slice_classes(surface, m, s))
        .collect();
    Ok(slices.into_iter().flatten().collect())
}

/// `N_c^s(m)`: `sc - (2s-1)` when `s ≤ ⌊m/c⌋`, `m - (2s-2)` otherwise.
pub fn n_term(c: usize, s: usize, m: usize) -> usize {
    if s <= m / c {
        s * c + 1 - 2 * s
    } else {
        m + 2 - 2 * s
    }
}

/// Number of components of `S_m^0` from the counting formula.
pub fn count_closed_form(surface: &ToricSurface, m: usize) -> Result<usize> {
    check_level(m)?;
    let special: Vec<usize> = surface
        .fraction()
        .entries()
        .iter()
        .filter(|&&c| c != 2)
        .map(|&c| c as usize)
        .collect();
    let top = m.div_ceil(2);
    if special.is_empty() {
        return Ok(top);
    }
    Ok((1..=top)
        .map(|s| {
            let first = n_term(special[0], s, m);
            let rest: usize = special[1..].iter().map(|&c| n_term(c, s, m) - 1).sum();
            first + rest
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct S1Count {
    pub count: usize,
    /// `m ≥ max c_i`, the range where the count matches the resolution.
    pub hypothesis_met: bool,
}

/// Number of classes with index of speciality 1.
pub fn s1_count(surface: &ToricSurface, m: usize) -> Result<S1Count> {
    check_level(m)?;
    Ok(S1Count {
        count: slice_classes(surface, m, 1).len(),
        hypothesis_met: m as i64 >= surface.max_c(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountPair {
    pub enumerated: usize,
    pub closed_form: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub m: usize,
    pub classes: Vec<ComponentClass>,
    #[serde(rename = "N")]
    pub n: CountPair,
    pub s1_count: usize,
    pub exceptional: usize,
    pub main_codim: usize,
}

impl ComponentReport {
    pub fn build(surface: &ToricSurface, m: usize) -> Result<Self> {
        let classes = enumerate(surface, m)?;
        let closed_form = count_closed_form(surface, m)?;
        let s1 = classes.iter().filter(|c| c.s == 1).count();
        Ok(ComponentReport {
            m,
            n: CountPair {
                enumerated: classes.len(),
                closed_form,
            },
            s1_count: s1,
            exceptional: exceptional_count_dual_cf(surface.cone()),
            main_codim: main_component_codim(surface, m),
            classes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(p: i64, q: i64) -> ToricSurface {
        ToricSurface::new(p, q).unwrap()
    }

    fn lbl(i: usize, s: usize, l: usize, m: usize) -> ComponentLabel {
        ComponentLabel { i, s, l, m }
    }

    fn member_keys(c: &ComponentClass) -> Vec<(usize, usize, usize)> {
        c.members.iter().map(|x| (x.i, x.s, x.l)).collect()
    }

    #[test]
    fn m_cap_examples() {
        let s = surface(3, 5);
        assert_eq!(m_cap(&s, 3, 1, 4).unwrap(), 2);
        assert_eq!(m_cap(&s, 2, 2, 4).unwrap(), 2);
        for sp in 1..=4 {
            for i in 2..=3 {
                assert_eq!(m_cap(&s, i, sp, 2 * sp - 1).unwrap(), sp);
            }
        }
        assert!(m_cap(&s, 1, 1, 4).is_err());
        assert!(m_cap(&s, 4, 1, 4).is_err());
        assert!(m_cap(&s, 2, 3, 4).is_err());
        assert!(m_cap(&s, 2, 0, 4).is_err());
        assert_eq!(m_cap(&s, 2, 1, 0), Err(Error::LevelTooSmall { m: 0 }));
    }

    #[test]
    fn enumerate_3_5_level_4() {
        let classes = enumerate(&surface(3, 5), 4).unwrap();
        let got: Vec<_> = classes.iter().map(member_keys).collect();
        assert_eq!(
            got,
            vec![
                vec![(2, 1, 1), (3, 1, 2)],
                vec![(3, 1, 1)],
                vec![(2, 2, 2), (3, 2, 3)],
                vec![(3, 2, 2)],
            ]
        );
        assert_eq!(classes[0].canonical, lbl(2, 1, 1, 4));
        assert!(classes.iter().all(|c| c.codim == 10 && c.dim == 10));
    }

    #[test]
    fn enumerate_5_7_level_3() {
        let classes = enumerate(&surface(5, 7), 3).unwrap();
        let got: Vec<_> = classes.iter().map(member_keys).collect();
        assert_eq!(
            got,
            vec![
                vec![(2, 1, 1), (3, 1, 1), (4, 1, 2)],
                vec![(4, 1, 1)],
                vec![(2, 2, 2), (3, 2, 2), (4, 2, 2)],
            ]
        );
    }

    #[test]
    fn a_type_chain_has_one_class_per_s() {
        let classes = enumerate(&surface(2, 3), 5).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(|c| c.s).collect::<Vec<_>>(), [1, 2, 3]);
        assert_eq!(count_closed_form(&surface(2, 3), 5).unwrap(), 3);
    }

    #[test]
    fn enumerate_rejects_level_zero() {
        assert_eq!(enumerate(&surface(2, 3), 0), Err(Error::LevelTooSmall { m: 0 }));
        assert_eq!(count_closed_form(&surface(2, 3), 0), Err(Error::LevelTooSmall { m: 0 }));
    }

    #[test]
    fn codimension_examples() {
        let s = surface(2, 3);
        assert_eq!(codimension(&s, 1, 4).unwrap(), 10);
        assert_eq!(codimension(&s, 2, 4).unwrap(), 10);
        let s = surface(5, 7);
        for sp in 1..=5 {
            assert_eq!(codimension(&s, sp, 2 * sp - 1).unwrap(), sp * s.e());
        }
        assert!(codimension(&s, 3, 4).is_err());
        assert_eq!(dimension(&s, 1, 1).unwrap(), 5);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(n_term(3, 1, 4), 2);
        assert_eq!(n_term(3, 2, 4), 2);
        assert_eq!(count_closed_form(&surface(3, 5), 4).unwrap(), 4);
        assert_eq!(count_closed_form(&surface(5, 7), 3).unwrap(), 3);
    }

    #[test]
    fn s1_examples() {
        let c = s1_count(&surface(3, 5), 4).unwrap();
        assert_eq!(c, S1Count { count: 2, hypothesis_met: true });
        assert_eq!(s1_count(&surface(2, 3), 5).unwrap().count, 1);
        assert_eq!(s1_count(&surface(5, 7), 5).unwrap().count, 2);
        assert!(!s1_count(&surface(5, 7), 2).unwrap().hypothesis_met);
    }

    #[test]
    fn speciality_of_classes() {
        let classes = enumerate(&surface(3, 5), 4).unwrap();
        assert_eq!(index_of_speciality(&classes[0]), 1);
        let deep = enumerate(&surface(5, 7), 5).unwrap();
        let last = deep.last().unwrap();
        assert_eq!(index_of_speciality(last), 3);
        assert_eq!(last.members.len(), 3);
    }

    #[test]
    fn label_validation() {
        let s = surface(3, 5);
        assert!(ComponentLabel::new(&s, 4, 3, 1, 2).is_ok());
        assert_eq!(
            ComponentLabel::new(&s, 4, 2, 1, 2),
            Err(Error::IndexOutOfRange { what: "l", value: 2, lo: 1, hi: 1 })
        );
    }

    #[test]
    fn report_fields() {
        let r = ComponentReport::build(&surface(3, 5), 4).unwrap();
        assert_eq!(r.n, CountPair { enumerated: 4, closed_form: 4 });
        assert_eq!((r.s1_count, r.exceptional, r.main_codim), (2, 2, 10));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["classes"][0]["canonical"], serde_json::json!([2, 1, 1]));
        assert_eq!(json["N"]["closed_form"], 4);
    }
}
