//! Jet schemes of singular affine toric surfaces.
//!
//! A surface is given by a coprime pair `0 < p < q`; its cone is spanned by
//! `(1,0)` and `(p,q)`. The crate computes the Hirzebruch–Jung data of the
//! surface, its binomial equations, the classification of the irreducible
//! components of the m-jet fiber over the singular point, and exhaustive
//! finite-field checks of the underlying statements.

pub mod components;
pub mod equations;
pub mod error;
pub mod field;
pub mod jets;
pub mod lattice;
pub mod oracle;

pub use components::{ComponentClass, ComponentLabel, ComponentReport};
pub use equations::BinomialEquation;
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rational};
pub use jets::{OrderValue, Series, TruncatedJet};
pub use lattice::{ConePair, ContinuedFraction, DualBasis, LatticeVector, ToricSurface};
pub use oracle::{OracleConfig, OracleReport};
