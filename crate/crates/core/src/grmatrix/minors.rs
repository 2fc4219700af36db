use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::polyring::{Line, MultiPoly, UniPoly};

use super::matrix::GradedMatrix;
use super::rank::bareiss_det;

/// Which minors to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorSelection {
    All,
    /// Up to `count` distinct minors drawn deterministically from `seed`.
    Random { count: usize, seed: u64 },
}

/// Row and column index sets of one minor, both ascending.
pub type MinorIndex = (Vec<usize>, Vec<usize>);

/// `C(n, k)` as a saturating `u64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl<K: Field> GradedMatrix<K> {
    pub fn minor_count(&self, k: usize) -> u64 {
        binomial(self.rows(), k).saturating_mul(binomial(self.cols(), k))
    }

    /// Index sets of the selected `k`-minors. "All" enumerates row subsets
    /// in lexicographic order, and for each of them the column subsets.
    pub fn minor_indices(&self, k: usize, selection: MinorSelection) -> Result<Vec<MinorIndex>> {
        if k == 0 || k > self.rows().min(self.cols()) {
            return Err(Error::MinorSize {
                k,
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let all = || {
            (0..self.rows())
                .combinations(k)
                .cartesian_product((0..self.cols()).combinations(k).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        match selection {
            MinorSelection::All => Ok(all()),
            MinorSelection::Random { count, seed } => {
                if count as u64 >= self.minor_count(k) {
                    return Ok(all());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut seen = HashSet::new();
                let mut out = Vec::with_capacity(count);
                while out.len() < count {
                    let mut r = sample(&mut rng, self.rows(), k).into_vec();
                    let mut c = sample(&mut rng, self.cols(), k).into_vec();
                    r.sort_unstable();
                    c.sort_unstable();
                    if seen.insert((r.clone(), c.clone())) {
                        out.push((r, c));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Determinants of the selected `k x k` submatrices.
    pub fn minors(&self, k: usize, selection: MinorSelection) -> Result<Vec<MultiPoly<K>>> {
        Ok(self
            .minor_indices(k, selection)?
            .iter()
            .map(|(r, c)| self.minor(r, c))
            .collect())
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly<K> {
        let sub: Vec<Vec<MultiPoly<K>>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entry(i, j).clone()).collect())
            .collect();
        bareiss_det(self.field(), sub)
    }

    /// Degree of the minor on `(rows, cols)` when nonzero.
    pub fn minor_degree(&self, rows: &[usize], cols: &[usize]) -> i64 {
        cols.iter().map(|&j| self.col_degrees()[j]).sum::<i64>()
            - rows.iter().map(|&i| self.row_degrees()[i]).sum::<i64>()
    }

    /// Restriction of a minor to a line, by evaluation and interpolation.
    /// The entries must be free of `a`, so the minor is homogeneous.
    pub fn minor_on_line(&self, rows: &[usize], cols: &[usize], line: &Line<K>) -> UniPoly<K> {
        debug_assert!(!self.has_parameter());
        let field = self.field();
        let d = self.minor_degree(rows, cols).max(0) as usize;
        let nodes = Line::nodes(field, d + 1);
        let sub = self.select(rows, cols);
        let values: Vec<K::Elem> = nodes
            .iter()
            .map(|s| linalg::det(field, sub.eval(&line.point(field, s))))
            .collect();
        UniPoly::interpolate(field, &nodes, &values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(51, 17), 14_771_069_086_725);
    }
}
