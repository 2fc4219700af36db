use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::{binomial, GradedMatrix};

use super::coprime::{minor_gcd, DEFAULT_MINOR_BUDGET};

/// Largest number of sampled morphisms [`q_oracle`] may test.
pub const ORACLE_BUDGET: u64 = 100_000;

/// Whether the `a`-free map `w` (a morphism from a free module) is
/// injective with a cokernel that is free in codimension 1: full column
/// rank, and maximal minors without a common factor.
pub fn is_general_morphism<K: Field>(w: &GradedMatrix<K>, budget: u64, seed: u64) -> Result<bool> {
    let k = w.cols();
    if k == 0 {
        return Ok(true);
    }
    if k > w.rows() || w.rank_fraction_field() < k {
        return Ok(false);
    }
    Ok(minor_gcd(w, k, budget, seed)?.is_coprime())
}

/// A lower bound for `q#(n)` by search: the largest `m` such that a random
/// morphism from a free module of rank `m` generated in degrees `<= n`,
/// factored through the columns of `s_n` at the closed point, is injective
/// with torsion-free cokernel. Each multiset of generator degrees gets
/// `trials` random draws.
pub fn q_oracle<K: Field>(s: &GradedMatrix<K>, n: i64, trials: usize, seed: u64) -> Result<usize> {
    let m = s.truncate_columns(n).specialize_closed_point();
    let alpha = m.rank_fraction_field();
    if alpha == 0 {
        return Ok(0);
    }
    let lo = *m.col_degrees().iter().min().expect("alpha > 0");
    let degrees: Vec<i64> = (lo..=n).rev().collect();
    let draws: u64 = (1..=alpha)
        .map(|k| binomial(degrees.len() + k - 1, k))
        .sum::<u64>()
        .saturating_mul(trials as u64);
    if draws > ORACLE_BUDGET {
        return Err(Error::Budget(format!("q oracle would sample {draws} morphisms")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in (1..=alpha).rev() {
        for combo in degrees.iter().copied().combinations_with_replacement(k) {
            for _ in 0..trials {
                let v = GradedMatrix::random_homogeneous(m.field(), m.col_degrees().to_vec(), combo.clone(), &mut rng);
                let w = m.compose(&v)?;
                if is_general_morphism(&w, DEFAULT_MINOR_BUDGET, seed)? {
                    return Ok(k);
                }
            }
        }
    }
    Ok(0)
}
