use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(p,q) must be 1 (got p={p}, q={q})")]
    NotCoprime { p: i64, q: i64 },

    #[error("p, q must satisfy 0 < p < q <= 2^31 (got p={p}, q={q})")]
    ConeOutOfRange { p: i64, q: i64 },

    #[error("embedding dimension {e} <= 3 unsupported (continued fraction {entries:?})")]
    EmbeddingDimensionTooSmall { e: usize, entries: Vec<i64> },

    #[error("continued fraction has no entries")]
    EmptyContinuedFraction,

    #[error("continued fraction entry {entry} is below 2")]
    EntryBelowTwo { entry: i64 },

    #[error("brute-force bound {bound} is below q={q}")]
    BoundTooSmall { bound: i64, q: i64 },

    #[error("{what} = {value} out of range, valid interval is [{lo}, {hi}]")]
    IndexOutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("jet level m must be at least 1 (got {m})")]
    LevelTooSmall { m: usize },

    #[error("cannot truncate a level-{m} jet to level {target}")]
    TruncationAbove { target: usize, m: usize },

    #[error("jet has {got} coordinates, surface has embedding dimension {e}")]
    DimensionMismatch { got: usize, e: usize },

    #[error("coordinate {coord} has {got} coefficients, expected {expected}")]
    LengthMismatch {
        coord: usize,
        got: usize,
        expected: usize,
    },

    #[error("jet is not a point of the jet scheme")]
    NotMember,

    #[error("lattice vector ({0}, {1}) lies outside the cone")]
    OutsideCone(i64, i64),

    #[error("field characteristic {0} is not prime")]
    NotPrime(u64),

    #[error("enumeration needs {required} points ({base}^{exponent}), guard is {guard}")]
    GuardExceeded {
        base: u64,
        exponent: u64,
        required: BigUint,
        guard: u64,
    },

    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}
