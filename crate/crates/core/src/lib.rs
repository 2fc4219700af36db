//! Minimal curve families of a reflexive sheaf over a discrete valuation ring.
//!
//! The crate works with graded polynomial matrices over `k[a][X, Y, Z, T]`,
//! where `a` is the uniformizer, and computes the numerical invariants that
//! govern the minimal curves in a biliaison class.

pub mod error;
pub mod families;
pub mod field;
pub mod fixtures;
pub mod grmatrix;
pub mod linalg;
pub mod modgb;
pub mod polyring;
pub mod qprofile;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use polyring::{gcd_many, parse_poly, squarefree_factors, MultiPoly};
