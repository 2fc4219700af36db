//! Exact polynomials in X, Y, Z, T and the uniformizer `a`.

mod factor;
mod gcd;
mod monomial;
mod parse;
mod poly;
mod univariate;

pub use factor::{coprime_base, squarefree_factors};
pub use gcd::{certify_coprime, content_primitive, gcd, gcd_many, lead_in, prem, prem_with_exponent, Line};
pub(crate) use gcd::gcd_refs;
pub use monomial::{monomials_of_degree, MonoBuildHasher, Monomial, MAX_DEGREE, NVARS, PARAM, VAR_NAMES};
pub use parse::parse_poly;
pub use poly::MultiPoly;
pub use univariate::UniPoly;
