//! Gröbner bases, Hilbert functions and syzygies of graded submodules of
//! free modules over `k[X, Y, Z, T]`.

mod gb;
mod hilbert;
mod locus;
mod space;
mod syz;

#[cfg(test)]
mod tests;

pub use gb::{ambient_dimension, default_cap, groebner_basis, ModVec, SubmodulePresentation};
pub use hilbert::{fit_hilbert_polynomial, HilbertPolynomial, VALIDATION_DEGREES};
pub use locus::is_empty_projective_locus;
pub use space::{DegreeSpace, ModTerm};
pub use syz::syzygies;
