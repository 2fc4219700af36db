use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::GradedMatrix;
use crate::polyring::{Monomial, MultiPoly, PARAM};

use super::gb::groebner_basis;

/// True when the homogeneous polynomials have no common zero in projective
/// 3-space over the algebraic closure.
///
/// The locus is empty exactly when the ideal contains a power of each
/// variable. Such an ideal, generated in degrees at most `D`, contains every
/// form of degree `4(D - 1) + 1`, so a Gröbner basis through that degree
/// decides the question.
pub fn is_empty_projective_locus<K: Field>(field: &K, polys: &[MultiPoly<K>]) -> Result<bool> {
    let mut gens = Vec::new();
    let mut degrees = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if p.contains_var(PARAM) {
            return Err(Error::Shape("locus test needs polynomials free of `a`".into()));
        }
        let d = p
            .homogeneous_degree()
            .flatten()
            .ok_or_else(|| Error::Shape("inhomogeneous polynomial".into()))?;
        if d == 0 {
            return Ok(true);
        }
        gens.push(p.clone());
        degrees.push(d as i64);
    }
    let Some(&top) = degrees.iter().max() else {
        return Ok(false);
    };
    let cap = 4 * (top - 1) + 1;
    let m = GradedMatrix::new(field, vec![0], degrees, vec![gens])?;
    let gb = groebner_basis(&m, Some(cap))?;
    let mut seen = [false; 4];
    for b in gb.basis() {
        let mono = b.lead().unwrap().mono;
        for (v, s) in seen.iter_mut().enumerate() {
            if mono.exp(v) == mono.degree() && mono != Monomial::ONE {
                *s = true;
            }
        }
    }
    Ok(seen.iter().all(|&s| s))
}
