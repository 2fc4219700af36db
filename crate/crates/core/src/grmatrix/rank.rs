use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg;
use crate::polyring::{MultiPoly, NVARS, PARAM};

use super::matrix::GradedMatrix;

const RANK_SEED: u64 = 0x0a11_ce55;

/// Largest grid that the rank certificate is allowed to visit before the
/// exact fraction-free elimination takes over.
pub const GRID_BUDGET: u64 = 200_000;

impl<K: Field> GradedMatrix<K> {
    /// Rank over the fraction field of the polynomial ring.
    ///
    /// A random evaluation gives a lower bound `r`. Every `(r+1)`-minor has
    /// bounded degree in each variable, so it vanishes identically once it
    /// vanishes on a grid with one more node than that bound per variable;
    /// that certifies `r`. Large grids fall back to [`Self::rank_bareiss`].
    pub fn rank_fraction_field(&self) -> usize {
        self.blocks()
            .iter()
            .map(|(rows, cols)| self.select(rows, cols).block_rank())
            .sum()
    }

    fn block_rank(&self) -> usize {
        let full = self.rows().min(self.cols());
        let mut rng = ChaCha8Rng::seed_from_u64(RANK_SEED);
        let mut r = 0;
        for _ in 0..2 {
            let point: [K::Elem; NVARS] = std::array::from_fn(|_| self.field().random(&mut rng));
            r = r.max(linalg::rank(self.field(), self.eval(&point)));
            if r == full {
                return r;
            }
        }
        loop {
            match self.grid_check(r) {
                GridOutcome::Certified => return r,
                GridOutcome::Larger(s) => {
                    r = s;
                    if r == full {
                        return r;
                    }
                }
                GridOutcome::TooLarge => return self.rank_bareiss(),
            }
        }
    }

    /// Per-variable degree bounds for the `k`-minors.
    fn minor_degree_bounds(&self, k: usize) -> [u32; NVARS] {
        std::array::from_fn(|v| {
            let top = |mut b: Vec<u32>| {
                b.sort_unstable_by(|x, y| y.cmp(x));
                b.iter().take(k).sum::<u32>()
            };
            top(self.column_degree_bounds(v)).min(top(self.row_degree_bounds(v)))
        })
    }

    fn grid_check(&self, r: usize) -> GridOutcome {
        let field = self.field();
        let bounds = self.minor_degree_bounds(r + 1);
        // the entries are homogeneous in X, Y, Z, T, so one of these may be
        // fixed to 1 without losing information about a minor
        let dehom = (0..NVARS)
            .filter(|&v| v != PARAM)
            .max_by_key(|&v| bounds[v])
            .expect("at least one variable");
        let mut sizes = [1u64; NVARS];
        let mut total = 1u64;
        for v in 0..NVARS {
            if v != dehom && bounds[v] > 0 {
                sizes[v] = bounds[v] as u64 + 1;
                total = total.saturating_mul(sizes[v]);
            }
        }
        if total > GRID_BUDGET {
            return GridOutcome::TooLarge;
        }
        let mut idx = [0u64; NVARS];
        loop {
            let point: [K::Elem; NVARS] = std::array::from_fn(|v| {
                if v == dehom {
                    field.one()
                } else {
                    field.from_i64(idx[v] as i64)
                }
            });
            let s = linalg::rank(field, self.eval(&point));
            if s > r {
                return GridOutcome::Larger(s);
            }
            // advance the mixed-radix counter
            let mut v = 0;
            loop {
                if v == NVARS {
                    return GridOutcome::Certified;
                }
                idx[v] += 1;
                if idx[v] < sizes[v] {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank_bareiss(&self) -> usize {
        bareiss_rank(self.entries().to_vec())
    }
}

enum GridOutcome {
    Certified,
    Larger(usize),
    TooLarge,
}

/// Fraction-free Gaussian elimination; after step `k` every active entry
/// is a `(k+1)`-minor, so the division by the previous pivot is exact.
pub fn bareiss_rank<K: Field>(mut m: Vec<Vec<MultiPoly<K>>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let field = m[0][0].field().clone();
    let mut prev = MultiPoly::one(&field);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].num_terms())
        else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = MultiPoly::zero(&field);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn bareiss_det<K: Field>(field: &K, mut m: Vec<Vec<MultiPoly<K>>>) -> MultiPoly<K> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(field);
    }
    let mut prev = MultiPoly::one(field);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms())
        else {
            return MultiPoly::zero(field);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}
