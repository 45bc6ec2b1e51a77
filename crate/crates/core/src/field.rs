//! Coefficient fields for jets: exact rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Field arithmetic with a runtime context (the characteristic, for `F_p`).
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(ctx: Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(ctx: Self::Ctx, value: &Value) -> Result<Self>;
}

/// An exact rational number, serialized as the string `"num/den"` in lowest
/// terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"num/den\", got {s:?}"));
        let (num, den) = s.split_once('/').ok_or_else(bad)?;
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Field for Rational {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: ()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: (), n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    fn ctx(&self) {}

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(_: (), value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => s.parse(),
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }
}

/// The characteristic of a prime field. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`, kept reduced in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    value: u32,
    modulus: Modulus,
}

impl PrimeField {
    pub fn new(modulus: Modulus, value: i64) -> Self {
        let p = modulus.0 as i64;
        PrimeField {
            value: value.rem_euclid(p) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }
}

impl Field for PrimeField {
    type Ctx = Modulus;

    fn zero(ctx: Modulus) -> Self {
        PrimeField::new(ctx, 0)
    }

    fn one(ctx: Modulus) -> Self {
        PrimeField::new(ctx, 1)
    }

    fn from_i64(ctx: Modulus, n: i64) -> Self {
        PrimeField::new(ctx, n)
    }

    fn ctx(&self) -> Modulus {
        self.modulus
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        let p = self.modulus.0 as u64;
        let v = (self.value as u64 + rhs.value as u64) % p;
        PrimeField {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.modulus.0 as u64;
        let v = (self.value as u64 + p - rhs.value as u64) % p;
        PrimeField {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.modulus.0 as u64;
        let v = (self.value as u64 * rhs.value as u64) % p;
        PrimeField {
            value: v as u32,
            modulus: self.modulus,
        }
    }

    fn to_json(&self) -> Value {
        Value::from(self.value)
    }

    fn from_json(ctx: Modulus, value: &Value) -> Result<Self> {
        value
            .as_i64()
            .map(|n| PrimeField::new(ctx, n))
            .ok_or_else(|| Error::Parse(format!("expected integer, got {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_form() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_i64((), 5).to_string(), "5/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Modulus::new(5).unwrap();
        let a = PrimeField::new(f5, 3);
        let b = PrimeField::new(f5, 4);
        assert_eq!(a.add(&b).value(), 2);
        assert_eq!(a.sub(&b).value(), 4);
        assert_eq!(a.mul(&b).value(), 2);
        assert_eq!(PrimeField::new(f5, -1).value(), 4);
    }

    #[test]
    fn modulus_must_be_prime() {
        assert_eq!(Modulus::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Modulus::new(1), Err(Error::NotPrime(1)));
        assert!(Modulus::new(2).is_ok());
        assert!(Modulus::new(97).is_ok());
    }
}
