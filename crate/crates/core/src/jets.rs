//! Truncated power series and m-jets.
//!
//! An m-jet of `A^e` is `e` series truncated mod `t^{m+1}`; it lies on the
//! surface when every binomial generator vanishes mod `t^{m+1}`.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::equations::{generators, BinomialEquation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::{cone_contains, LatticeVector, ToricSurface};

/// `t`-order of a truncated series. `AboveM` means the series is zero mod
/// `t^{m+1}`; it is never conflated with the integer `m+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderValue {
    Finite(usize),
    AboveM,
}

impl OrderValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            OrderValue::Finite(n) => Some(n),
            OrderValue::AboveM => None,
        }
    }

    /// `self ≥ n`, with `AboveM` above every integer.
    pub fn at_least(self, n: usize) -> bool {
        match self {
            OrderValue::Finite(k) => k >= n,
            OrderValue::AboveM => true,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(n) => write!(f, "{n}"),
            OrderValue::AboveM => f.write_str(">m"),
        }
    }
}

impl Serialize for OrderValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrderValue::Finite(n) => serializer.serialize_u64(*n as u64),
            OrderValue::AboveM => serializer.serialize_str("ABOVE_M"),
        }
    }
}

/// A power series truncated to a fixed number of coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Series { coeffs }
    }

    pub fn zero(ctx: F::Ctx, len: usize) -> Self {
        Series::new(vec![F::zero(ctx); len])
    }

    pub fn one(ctx: F::Ctx, len: usize) -> Self {
        let mut s = Series::zero(ctx, len);
        s.coeffs[0] = F::one(ctx);
        s
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    pub fn order(&self) -> OrderValue {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(OrderValue::AboveM, OrderValue::Finite)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.len(), rhs.len());
        Series::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    /// Truncated product, same length as `self`. Only nonzero coefficient
    /// pairs are multiplied.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.len();
        let ctx = self.coeffs[0].ctx();
        let mut out = vec![F::zero(ctx); n];
        let support: Vec<usize> = (0..rhs.len().min(n)).filter(|&b| !rhs.coeffs[b].is_zero()).collect();
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &b in support.iter().take_while(|&&b| a + b < n) {
                out[a + b] = out[a + b].add(&x.mul(&rhs.coeffs[b]));
            }
        }
        Series::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let ctx = self.coeffs[0].ctx();
        (0..k).fold(Series::one(ctx, self.len()), |acc, _| acc.mul(self))
    }
}

/// An m-jet: `coords[j][b]` is the coefficient of `t^b` in coordinate `x_{j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedJet<F> {
    m: usize,
    coords: Vec<Vec<F>>,
}

/// Orders of all coordinates of a member jet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactProfile {
    pub orders: Vec<OrderValue>,
    /// All orders at least 1, i.e. the jet lies over the singular point.
    pub over_singular_point: bool,
}

impl<F: Field> TruncatedJet<F> {
    pub fn new(m: usize, coords: Vec<Vec<F>>) -> Result<Self> {
        for (j, c) in coords.iter().enumerate() {
            if c.len() != m + 1 {
                return Err(Error::LengthMismatch {
                    coord: j + 1,
                    got: c.len(),
                    expected: m + 1,
                });
            }
        }
        Ok(TruncatedJet { m, coords })
    }

    pub fn zero(ctx: F::Ctx, e: usize, m: usize) -> Self {
        TruncatedJet {
            m,
            coords: vec![vec![F::zero(ctx); m + 1]; e],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<F>] {
        &self.coords
    }

    /// Coordinate `x_j` (1-based) as a series.
    pub fn series(&self, j: usize) -> Series<F> {
        Series::new(self.coords[j - 1].clone())
    }

    pub fn coordinate_order(&self, j: usize) -> Result<OrderValue> {
        if !(1..=self.e()).contains(&j) {
            return Err(Error::IndexOutOfRange {
                what: "j",
                value: j as i64,
                lo: 1,
                hi: self.e() as i64,
            });
        }
        Ok(self.coords[j - 1]
            .iter()
            .position(|c| !c.is_zero())
            .map_or(OrderValue::AboveM, OrderValue::Finite))
    }

    pub fn orders(&self) -> Vec<OrderValue> {
        (1..=self.e())
            .map(|j| self.coordinate_order(j).expect("index in range"))
            .collect()
    }

    /// Drops every coefficient of index above `target`.
    pub fn truncate(&self, target: usize) -> Result<Self> {
        if target > self.m {
            return Err(Error::TruncationAbove {
                target,
                m: self.m,
            });
        }
        Ok(TruncatedJet {
            m: target,
            coords: self
                .coords
                .iter()
                .map(|c| c[..=target].to_vec())
                .collect(),
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|c| Value::Array(c.iter().map(F::to_json).collect()))
                .collect(),
        )
    }

    /// Inverse of [`TruncatedJet::to_json`]. Every coordinate must have the
    /// same nonzero length.
    pub fn from_json(ctx: F::Ctx, value: &Value) -> Result<Self> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::Parse("jet must be an array of arrays".into()))?;
        let mut coords = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("jet coordinate must be an array".into()))?;
            coords.push(
                row.iter()
                    .map(|v| F::from_json(ctx, v))
                    .collect::<Result<Vec<F>>>()?,
            );
        }
        let len = coords.first().map_or(0, Vec::len);
        if len == 0 {
            return Err(Error::Parse("jet needs at least one coefficient".into()));
        }
        TruncatedJet::new(len - 1, coords)
    }
}

/// Powers `x_k^a` of every coordinate, computed once per jet.
struct PowerCache<F> {
    powers: Vec<Vec<Series<F>>>,
}

impl<F: Field> PowerCache<F> {
    fn new(jet: &TruncatedJet<F>, max_exp: &[u32]) -> Self {
        let powers = max_exp
            .iter()
            .enumerate()
            .map(|(k, &top)| {
                let x = jet.series(k + 1);
                let mut out: Vec<Series<F>> = Vec::with_capacity(top as usize);
                for a in 0..top as usize {
                    let next = if a == 0 { x.clone() } else { out[a - 1].mul(&x) };
                    out.push(next);
                }
                out
            })
            .collect();
        PowerCache { powers }
    }

    fn monomial(&self, exps: &[u32], one: Series<F>) -> Series<F> {
        exps.iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .try_fold(one, |acc, (k, &a)| {
                // a zero product stays zero
                let next = acc.mul(&self.powers[k][a as usize - 1]);
                if next.is_zero() {
                    Err(next)
                } else {
                    Ok(next)
                }
            })
            .unwrap_or_else(|zero| zero)
    }

    fn evaluate(&self, eq: &BinomialEquation, one: &Series<F>) -> Series<F> {
        self.monomial(&eq.plus_exponents, one.clone())
            .sub(&self.monomial(&eq.minus_exponents, one.clone()))
    }
}

fn max_exponents(eqs: &[BinomialEquation], e: usize) -> Vec<u32> {
    (1..=e)
        .map(|k| eqs.iter().map(|eq| eq.max_exponent(k)).max().unwrap_or(0))
        .collect()
}

/// `E ∘ γ` mod `t^{m+1}`.
pub fn evaluate<F: Field>(eq: &BinomialEquation, jet: &TruncatedJet<F>) -> Series<F> {
    let ctx = jet.coords[0][0].ctx();
    let cache = PowerCache::new(jet, &max_exponents(std::slice::from_ref(eq), jet.e()));
    cache.evaluate(eq, &Series::one(ctx, jet.m + 1))
}

/// Whether every generator vanishes on `jet` mod `t^{m+1}`.
pub fn is_member<F: Field>(jet: &TruncatedJet<F>, surface: &ToricSurface) -> bool {
    if jet.e() != surface.e() {
        return false;
    }
    let eqs = generators(surface);
    let cache = PowerCache::new(jet, &max_exponents(&eqs, jet.e()));
    let one = Series::one(jet.coords[0][0].ctx(), jet.m + 1);
    eqs.iter().all(|eq| cache.evaluate(eq, &one).is_zero())
}

/// The arc `t ↦ (t^{⟨u_1,v⟩}, …, t^{⟨u_e,v⟩})` truncated at level `m`.
pub fn monomial_arc<F: Field>(
    surface: &ToricSurface,
    v: LatticeVector,
    m: usize,
    ctx: F::Ctx,
) -> Result<TruncatedJet<F>> {
    if !cone_contains(surface.cone(), v) {
        return Err(Error::OutsideCone(v.0, v.1));
    }
    let mut jet = TruncatedJet::zero(ctx, surface.e(), m);
    for (j, w) in surface.pairings(v).into_iter().enumerate() {
        debug_assert!(w >= 0, "σ pairs non-negatively with σ^∨");
        if (w as usize) <= m {
            jet.coords[j][w as usize] = F::one(ctx);
        }
    }
    Ok(jet)
}

pub fn contact_profile<F: Field>(
    jet: &TruncatedJet<F>,
    surface: &ToricSurface,
) -> Result<ContactProfile> {
    if jet.e() != surface.e() {
        return Err(Error::DimensionMismatch {
            got: jet.e(),
            e: surface.e(),
        });
    }
    if !is_member(jet, surface) {
        return Err(Error::NotMember);
    }
    let orders = jet.orders();
    let over_singular_point = orders.iter().all(|o| o.at_least(1));
    Ok(ContactProfile {
        orders,
        over_singular_point,
    })
}
