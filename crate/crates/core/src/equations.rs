//! The binomial equations `E_ij` cutting out the surface in `A^e`.
//!
//! For `1 ≤ i < j-1 ≤ e-1`,
//! `E_ij = x_i x_j - x_{i+1}^{c_{i+1}-1} x_{i+2}^{c_{i+2}-2} ⋯ x_{j-2}^{c_{j-2}-2} x_{j-1}^{c_{j-1}-1}`.
//! When `j = i+2` both end factors sit on `x_{i+1}`, giving `x_{i+1}^{c_{i+1}}`.

use std::fmt;

use serde::Serialize;

use crate::lattice::{LatticeVector, ToricSurface};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BinomialEquation {
    pub i: usize,
    pub j: usize,
    #[serde(skip)]
    pub plus_exponents: Vec<u32>,
    pub minus_exponents: Vec<u32>,
}

impl BinomialEquation {
    /// Largest exponent of variable `k` (1-based) in either monomial.
    pub fn max_exponent(&self, k: usize) -> u32 {
        self.plus_exponents[k - 1].max(self.minus_exponents[k - 1])
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (k, &a) in exps.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", k + 1)?;
        if a > 1 {
            write!(f, "^{a}")?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for BinomialEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.plus_exponents)?;
        f.write_str(" - ")?;
        write_monomial(f, &self.minus_exponents)
    }
}

/// All `(e-1)(e-2)/2` generators, ordered by `(i, j)`.
pub fn generators(surface: &ToricSurface) -> Vec<BinomialEquation> {
    let e = surface.e();
    let mut out = Vec::with_capacity((e - 1) * (e - 2) / 2);
    for i in 1..=e {
        for j in i + 2..=e {
            let mut plus = vec![0u32; e];
            plus[i - 1] = 1;
            plus[j - 1] = 1;
            let mut minus = vec![0u32; e];
            // c_k - 2 on every interior variable, plus one extra at each end
            for k in i + 1..j {
                minus[k - 1] += (surface.c(k) - 2) as u32;
            }
            minus[i] += 1;
            minus[j - 2] += 1;
            out.push(BinomialEquation {
                i,
                j,
                plus_exponents: plus,
                minus_exponents: minus,
            });
        }
    }
    out
}

fn degree(surface: &ToricSurface, exps: &[u32]) -> LatticeVector {
    exps.iter()
        .zip(surface.basis().generators())
        .fold(LatticeVector(0, 0), |acc, (&a, &u)| acc + u.scale(a as i64))
}

/// Whether both monomials of `eq` have the same `M`-degree.
pub fn grading_check(surface: &ToricSurface, eq: &BinomialEquation) -> bool {
    degree(surface, &eq.plus_exponents) == degree(surface, &eq.minus_exponents)
}
