use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::grmatrix::{bareiss_det, GradedMatrix, MinorSelection};
use crate::linalg;
use crate::polyring::{gcd, Line, MultiPoly, UniPoly};

/// Default number of minors that may be enumerated exactly.
pub const DEFAULT_MINOR_BUDGET: u64 = 20_000;

const LINE_ATTEMPTS: usize = 3;
const LINE_COMBINATIONS: usize = 3;
const EXACT_COMBINATIONS: usize = 3;

/// Outcome of a search for a common factor of the `k`-minors.
#[derive(Clone, Debug, PartialEq)]
pub enum MinorGcd<K: Field> {
    Coprime,
    /// A nonconstant monic polynomial divisible by the gcd of all
    /// `k`-minors. It equals that gcd when `exhaustive` is set.
    Common { gcd: MultiPoly<K>, exhaustive: bool },
}

impl<K: Field> MinorGcd<K> {
    pub fn is_coprime(&self) -> bool {
        matches!(self, MinorGcd::Coprime)
    }
}

/// Common factor of the `k`-minors of an `a`-free matrix.
///
/// First a line certificate: on a random line, every combination
/// `det(A m B)` with constant `A`, `B` is a combination of `k`-minors, so a
/// common factor of the minors divides its restriction. If `m` has rank `k`
/// at the direction of the line, that factor keeps its degree there, so a
/// restricted gcd of 1 proves coprimality.
///
/// Otherwise the minors are enumerated exactly when there are at most
/// `budget` of them, and above that the gcd of a few exact random
/// combinations `det(A m B)` is returned. Every such combination is a
/// multiple of the true gcd, so each factor of the true gcd is reported.
pub fn minor_gcd<K: Field>(m: &GradedMatrix<K>, k: usize, budget: u64, seed: u64) -> Result<MinorGcd<K>> {
    if k == 0 {
        return Ok(MinorGcd::Coprime);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if line_certificate(m, k, &mut rng) {
        return Ok(MinorGcd::Coprime);
    }
    let field = m.field();
    let mut g = MultiPoly::zero(field);
    let exhaustive = m.minor_count(k) <= budget;
    if exhaustive {
        for (r, c) in m.minor_indices(k, MinorSelection::All)? {
            let d = m.minor(&r, &c);
            if d.is_zero() {
                continue;
            }
            g = gcd(&g, &d);
            if g.is_constant() {
                return Ok(MinorGcd::Coprime);
            }
        }
    } else {
        for _ in 0..EXACT_COMBINATIONS {
            let (a, b) = random_combiners(field, m.rows(), m.cols(), k, &mut rng);
            let d = bareiss_det(field, combine_poly(m, &a, &b));
            if d.is_zero() {
                continue;
            }
            g = gcd(&g, &d);
            if g.is_constant() {
                return Ok(MinorGcd::Coprime);
            }
        }
    }
    if g.is_zero() {
        return Err(crate::Error::MinorSize {
            k,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(MinorGcd::Common {
        gcd: g.monic(),
        exhaustive,
    })
}

/// True when the `k`-minors are proved coprime on a random line.
pub fn line_certificate<K: Field, R: Rng>(m: &GradedMatrix<K>, k: usize, rng: &mut R) -> bool {
    let field = m.field();
    if k > m.rows().min(m.cols()) {
        return false;
    }
    let degree = top_minor_degree(m, k);
    let nodes = Line::nodes(field, degree + 1);
    for _ in 0..LINE_ATTEMPTS {
        let line = Line::random(field, rng);
        if linalg::rank(field, m.eval(&line.dir)) < k {
            continue;
        }
        let values: Vec<Vec<Vec<K::Elem>>> = nodes.iter().map(|s| m.eval(&line.point(field, s))).collect();
        let mut g = UniPoly::zero();
        for _ in 0..LINE_COMBINATIONS {
            let (a, b) = random_combiners(field, m.rows(), m.cols(), k, rng);
            let ys: Vec<K::Elem> = values
                .iter()
                .map(|v| linalg::det(field, combine_numeric(field, v, &a, &b)))
                .collect();
            g = UniPoly::gcd(field, &g, &UniPoly::interpolate(field, &nodes, &ys));
            if g.degree() == Some(0) {
                return true;
            }
        }
    }
    false
}

/// Upper bound for the degree of a `k`-minor.
fn top_minor_degree<K: Field>(m: &GradedMatrix<K>, k: usize) -> usize {
    let mut cols = m.col_degrees().to_vec();
    let mut rows = m.row_degrees().to_vec();
    cols.sort_unstable_by(|x, y| y.cmp(x));
    rows.sort_unstable();
    let d: i64 = cols.iter().take(k).sum::<i64>() - rows.iter().take(k).sum::<i64>();
    d.max(0) as usize
}

/// Random `k x rows` and `cols x k` matrices; `None` stands for the
/// identity when `k` already equals the dimension.
type Combiners<E> = (Option<Vec<Vec<E>>>, Option<Vec<Vec<E>>>);

fn random_combiners<K: Field, R: Rng + ?Sized>(
    field: &K,
    rows: usize,
    cols: usize,
    k: usize,
    rng: &mut R,
) -> Combiners<K::Elem> {
    let mut rand = |r: usize, c: usize| -> Vec<Vec<K::Elem>> {
        (0..r).map(|_| (0..c).map(|_| field.random(rng)).collect()).collect()
    };
    let a = (k < rows).then(|| rand(k, rows));
    let b = (k < cols).then(|| rand(cols, k));
    (a, b)
}

fn combine_numeric<K: Field>(
    field: &K,
    m: &[Vec<K::Elem>],
    a: &Option<Vec<Vec<K::Elem>>>,
    b: &Option<Vec<Vec<K::Elem>>>,
) -> Vec<Vec<K::Elem>> {
    let left = match a {
        None => m.to_vec(),
        Some(a) => mat_mul(field, a, m),
    };
    match b {
        None => left,
        Some(b) => mat_mul(field, &left, b),
    }
}

fn mat_mul<K: Field>(field: &K, x: &[Vec<K::Elem>], y: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
    let cols = y.first().map_or(0, |r| r.len());
    x.iter()
        .map(|row| {
            let mut out = vec![field.zero(); cols];
            for (xi, yrow) in row.iter().zip(y) {
                if field.is_zero(xi) {
                    continue;
                }
                for (o, yv) in out.iter_mut().zip(yrow) {
                    *o = field.add(o, &field.mul(xi, yv));
                }
            }
            out
        })
        .collect()
}

fn combine_poly<K: Field>(
    m: &GradedMatrix<K>,
    a: &Option<Vec<Vec<K::Elem>>>,
    b: &Option<Vec<Vec<K::Elem>>>,
) -> Vec<Vec<MultiPoly<K>>> {
    let field = m.field();
    let mix = |coeffs: &[K::Elem], polys: &mut dyn Iterator<Item = &MultiPoly<K>>| {
        let mut acc = MultiPoly::zero(field);
        for (c, p) in coeffs.iter().zip(polys) {
            if !field.is_zero(c) && !p.is_zero() {
                acc = acc.add(&p.scale(c));
            }
        }
        acc
    };
    let left: Vec<Vec<MultiPoly<K>>> = match a {
        None => m.entries().to_vec(),
        Some(a) => a
            .iter()
            .map(|row| (0..m.cols()).map(|j| mix(row, &mut (0..m.rows()).map(|i| m.entry(i, j)))).collect())
            .collect(),
    };
    match b {
        None => left,
        Some(b) => left
            .iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| {
                        let col: Vec<K::Elem> = b.iter().map(|r| r[j].clone()).collect();
                        mix(&col, &mut row.iter())
                    })
                    .collect()
            })
            .collect(),
    }
}
