//! Continued fractions, the dual cone and its Hilbert basis, cone membership,
//! contact vectors and the exceptional-divisor count of the minimal resolution.
//!
//! The cone is `σ = cone((1,0), (p,q))` in `N = ℤ²`. The Hilbert basis of the
//! dual cone is ordered `u_1 = (0,1), u_2 = (1,0), …, u_e = (q,-p)` and obeys
//! `u_{k-1} + u_{k+1} = c_k u_k` for the Hirzebruch–Jung entries `c_k` of
//! `q/p`. All arithmetic here is exact integer arithmetic.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(p,q)` spanning `σ = cone((1,0),(p,q))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConePair {
    p: i64,
    q: i64,
}

/// Largest accepted `q`; keeps products of two coordinates inside `i64`.
pub const MAX_Q: i64 = 1 << 31;

impl ConePair {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if !(0 < p && p < q && q <= MAX_Q) {
            return Err(Error::ConeOutOfRange { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// An element of `N` (or of `M`, for the dual basis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(pub i64, pub i64);

impl LatticeVector {
    pub fn dot(self, other: LatticeVector) -> i64 {
        self.0 * other.0 + self.1 * other.1
    }

    pub fn cross(self, other: LatticeVector) -> i64 {
        self.0 * other.1 - self.1 * other.0
    }

    pub fn scale(self, k: i64) -> LatticeVector {
        LatticeVector(k * self.0, k * self.1)
    }
}

impl std::ops::Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(self.0 + rhs.0, self.1 + rhs.1)
    }
}

impl std::ops::Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(self.0 - rhs.0, self.1 - rhs.1)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Hirzebruch–Jung entries `(c_2, …, c_{e-1})`, all at least 2, at least two
/// of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction {
    entries: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if let Some(&entry) = entries.iter().find(|&&c| c < 2) {
            return Err(Error::EntryBelowTwo { entry });
        }
        if entries.len() < 2 {
            return Err(Error::EmbeddingDimensionTooSmall {
                e: entries.len() + 2,
                entries,
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn embedding_dimension(&self) -> usize {
        self.entries.len() + 2
    }
}

/// Descending continued-fraction entries of `num/den` for `num > den > 0`
/// (or `den = 1`). No length restriction.
pub(crate) fn hj_entries(mut num: i64, mut den: i64) -> Vec<i64> {
    debug_assert!(num > 0 && den > 0);
    let mut out = Vec::new();
    while den != 0 {
        // c*den - num without forming c*den, which can overflow near i64::MAX
        let r = num.mod_floor(&den);
        out.push(Integer::div_ceil(&num, &den));
        (num, den) = (den, if r == 0 { 0 } else { den - r });
    }
    out
}

/// Expands `q/p = c_2 - 1/(c_3 - 1/(…))`.
pub fn hj_expand(cone: ConePair) -> Result<ContinuedFraction> {
    ContinuedFraction::new(hj_entries(cone.q, cone.p))
}

/// Value of a descending continued fraction as a reduced pair `(num, den)`.
pub fn hj_evaluate(entries: &[i64]) -> Result<(i64, i64)> {
    let (&last, rest) = entries.split_last().ok_or(Error::EmptyContinuedFraction)?;
    if let Some(&entry) = entries.iter().find(|&&c| c < 2) {
        return Err(Error::EntryBelowTwo { entry });
    }
    let (mut num, mut den) = (last, 1i64);
    for &c in rest.iter().rev() {
        let next = i64::try_from(c as i128 * num as i128 - den as i128).map_err(|_| Error::Overflow)?;
        (num, den) = (next, num);
    }
    let g = num.gcd(&den);
    Ok((num / g, den / g))
}

/// Minimal generators `u_1, …, u_e` of `σ^∨ ∩ M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualBasis {
    generators: Vec<LatticeVector>,
}

impl DualBasis {
    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// `u_j` with 1-based `j`.
    pub fn u(&self, j: usize) -> LatticeVector {
        self.generators[j - 1]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

pub fn dual_hilbert_basis(cone: ConePair) -> Result<DualBasis> {
    let cf = hj_expand(cone)?;
    Ok(basis_from_fraction(cone, &cf))
}

fn basis_from_fraction(cone: ConePair, cf: &ContinuedFraction) -> DualBasis {
    let mut generators = vec![LatticeVector(0, 1), LatticeVector(1, 0)];
    for &c in cf.entries() {
        let n = generators.len();
        generators.push(generators[n - 1].scale(c) - generators[n - 2]);
    }
    let ray_a = LatticeVector(1, 0);
    let ray_b = LatticeVector(cone.p, cone.q);
    assert_eq!(
        generators.last().copied(),
        Some(LatticeVector(cone.q, -cone.p)),
        "dual basis recursion did not end at (q,-p) for {cone:?}"
    );
    assert!(
        generators
            .iter()
            .all(|u| u.dot(ray_a) >= 0 && u.dot(ray_b) >= 0),
        "dual basis left the dual cone for {cone:?}"
    );
    DualBasis { generators }
}

/// Minimal generators found by exhaustive search in the box `[-bound, bound]²`,
/// sorted clockwise from `(0,1)`. Independent of the continued fraction.
pub fn dual_hilbert_basis_bruteforce(cone: ConePair, bound: i64) -> Result<DualBasis> {
    if bound < cone.q {
        return Err(Error::BoundTooSmall { bound, q: cone.q });
    }
    let (p, q) = (cone.p, cone.q);
    let in_dual = |a: i64, b: i64| a >= 0 && p * a + q * b >= 0;
    let mut generators = Vec::new();
    for a in 0..=bound {
        for b in -bound..=bound {
            if (a, b) == (0, 0) || !in_dual(a, b) {
                continue;
            }
            if !decomposable(p, q, a, b) {
                generators.push(LatticeVector(a, b));
            }
        }
    }
    generators.sort_by(|x, y| x.cross(*y).cmp(&0));
    Ok(DualBasis { generators })
}

/// Whether `(a,b) = x + y` with `x, y` nonzero in `σ^∨`. Scans every `x` in the
/// parallelogram `σ^∨ ∩ ((a,b) - σ^∨)`.
fn decomposable(p: i64, q: i64, a: i64, b: i64) -> bool {
    for x in 0..=a {
        // x2 >= -p x / q  and  b - x2 >= -p (a - x) / q
        let lo = Integer::div_ceil(&(-p * x), &q);
        let hi = b + Integer::div_floor(&(p * (a - x)), &q);
        for y in lo..=hi {
            if (x, y) != (0, 0) && (x, y) != (a, b) {
                return true;
            }
        }
    }
    false
}

/// Whether `v = α(1,0) + β(p,q)` with rational `α, β ≥ 0`.
pub fn cone_contains(cone: ConePair, v: LatticeVector) -> bool {
    // β = v₂/q, α = v₁ - p v₂ / q
    v.1 >= 0 && cone.q * v.0 - cone.p * v.1 >= 0
}

/// Lattice points on the compact boundary of `conv(σ ∩ N \ {0})` strictly
/// between `(1,0)` and `(p,q)`, in order. These are the rays of the minimal
/// resolution; points in the middle of a hull edge count too.
pub fn resolution_rays(cone: ConePair) -> Vec<LatticeVector> {
    let (p, q) = (cone.p, cone.q);
    // every boundary vertex lies in the parallelogram spanned by the two rays
    let mut pts = Vec::new();
    for y in 0..=q {
        for x in 0..=p + 1 {
            let alpha_q = q * x - p * y;
            if (0..=q).contains(&alpha_q) && (x, y) != (0, 0) {
                pts.push(LatticeVector(x, y));
            }
        }
    }
    let hull = convex_hull(pts);
    let start = LatticeVector(1, 0);
    let end = LatticeVector(p, q);
    let n = hull.len();
    let i0 = hull.iter().position(|&v| v == start).expect("(1,0) is extreme");
    let i1 = hull.iter().position(|&v| v == end).expect("(p,q) is extreme");
    // two arcs between the ray generators; the far one passes (p+1,q)
    let far = LatticeVector(p + 1, q);
    let walk = |step: usize| {
        let mut arc = Vec::new();
        let mut k = (i0 + step) % n;
        while k != i1 {
            arc.push(hull[k]);
            k = (k + step) % n;
        }
        arc
    };
    let forward = walk(1);
    let corners = if forward.contains(&far) {
        walk(n - 1)
    } else {
        forward
    };
    let mut chain = vec![start];
    chain.extend(corners);
    chain.push(end);
    let mut out = Vec::new();
    for w in chain.windows(2) {
        let d = w[1] - w[0];
        let g = d.0.gcd(&d.1);
        let step = LatticeVector(d.0 / g, d.1 / g);
        out.extend((1..g).map(|k| w[0] + step.scale(k)));
        if w[1] != end {
            out.push(w[1]);
        }
    }
    out
}

/// Andrew's monotone chain, collinear points dropped. Counter-clockwise.
fn convex_hull(mut pts: Vec<LatticeVector>) -> Vec<LatticeVector> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: LatticeVector, a: LatticeVector, b: LatticeVector| (a - o).cross(b - o);
    let mut lower: Vec<LatticeVector> = Vec::new();
    for &pt in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], pt) <= 0 {
            lower.pop();
        }
        lower.push(pt);
    }
    let mut upper: Vec<LatticeVector> = Vec::new();
    for &pt in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], pt) <= 0 {
            upper.pop();
        }
        upper.push(pt);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Number of exceptional curves on the minimal resolution, read off the
/// continued fraction of `q/(q-p)`.
pub fn exceptional_count_dual_cf(cone: ConePair) -> usize {
    hj_entries(cone.q, cone.q - cone.p).len()
}

/// Number of exceptional curves on the minimal resolution, read off the
/// lattice hull of `σ ∩ N \ {0}`.
pub fn exceptional_count_hull(cone: ConePair) -> usize {
    resolution_rays(cone).len()
}

/// A surface with all of its Hirzebruch–Jung data precomputed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToricSurface {
    cone: ConePair,
    fraction: ContinuedFraction,
    basis: DualBasis,
}

impl ToricSurface {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        Self::from_cone(ConePair::new(p, q)?)
    }

    pub fn from_cone(cone: ConePair) -> Result<Self> {
        let fraction = hj_expand(cone)?;
        let basis = basis_from_fraction(cone, &fraction);
        Ok(Self {
            cone,
            fraction,
            basis,
        })
    }

    pub fn cone(&self) -> ConePair {
        self.cone
    }

    pub fn fraction(&self) -> &ContinuedFraction {
        &self.fraction
    }

    pub fn basis(&self) -> &DualBasis {
        &self.basis
    }

    /// Embedding dimension `e`.
    pub fn e(&self) -> usize {
        self.fraction.embedding_dimension()
    }

    /// Entry `c_i` for `2 ≤ i ≤ e-1`.
    pub fn c(&self, i: usize) -> i64 {
        self.fraction.entries()[i - 2]
    }

    pub fn max_c(&self) -> i64 {
        self.fraction.entries().iter().copied().max().unwrap_or(2)
    }

    pub(crate) fn check_inner_index(&self, i: usize) -> Result<()> {
        let hi = self.e() - 1;
        if !(2..=hi).contains(&i) {
            return Err(Error::IndexOutOfRange {
                what: "i",
                value: i as i64,
                lo: 2,
                hi: hi as i64,
            });
        }
        Ok(())
    }

    /// The unique `v ∈ N` with `⟨u_i,v⟩ = s` and `⟨u_{i+1},v⟩ = l`, and whether
    /// it lies in `σ`. For `s ≤ l ≤ (c_i - 1)s` it always does.
    pub fn contact_vector(&self, i: usize, s: i64, l: i64) -> Result<(LatticeVector, bool)> {
        self.check_inner_index(i)?;
        if s < 1 {
            return Err(Error::IndexOutOfRange {
                what: "s",
                value: s,
                lo: 1,
                hi: i64::MAX,
            });
        }
        if l < s {
            return Err(Error::IndexOutOfRange {
                what: "l",
                value: l,
                lo: s,
                hi: i64::MAX,
            });
        }
        let a = self.basis.u(i);
        let b = self.basis.u(i + 1);
        let det = a.cross(b);
        debug_assert!(det.abs() == 1, "consecutive generators form a basis of M");
        let v = LatticeVector((s * b.1 - a.1 * l) * det, (a.0 * l - s * b.0) * det);
        Ok((v, cone_contains(self.cone, v)))
    }

    /// `⟨u_j, v⟩` for all `j`.
    pub fn pairings(&self, v: LatticeVector) -> Vec<i64> {
        self.basis.generators().iter().map(|u| u.dot(v)).collect()
    }
}
