use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{content_primitive, gcd, lead_in, prem_with_exponent, MultiPoly, NVARS};

use super::matrix::GradedMatrix;

enum Step<K: Field> {
    Rank(usize),
    /// A pivot turned out to be a zero divisor; this factor of the modulus
    /// splits it into coprime pieces.
    Split(MultiPoly<K>),
}

impl<K: Field> GradedMatrix<K> {
    /// Rank over the total ring of fractions of `k[X,Y,Z,T,a]/(f)` for a
    /// squarefree `f`, i.e. the minimum of the generic ranks along the
    /// components of the hypersurface `f = 0`.
    ///
    /// Entries are kept reduced modulo `f` by pseudo-division in a main
    /// variable. When a pivot shares a factor with the modulus the modulus
    /// is split and each piece is handled separately.
    pub fn rank_modulo_hypersurface(&self, f: &MultiPoly<K>) -> Result<usize> {
        if f.is_constant() {
            return Err(Error::ConstantInput);
        }
        let mut todo = vec![f.monic()];
        let mut best = usize::MAX;
        while let Some(g) = todo.pop() {
            if g.is_constant() {
                continue;
            }
            let v = main_variable(&g);
            let (c, pp) = content_primitive(&g, v);
            if !c.is_constant() {
                todo.push(c);
                todo.push(pp);
                continue;
            }
            match self.eliminate_modulo(&pp, v) {
                Step::Rank(r) => best = best.min(r),
                Step::Split(h) => {
                    let rest = pp.exact_div(&h).expect("factor divides the modulus");
                    todo.push(h);
                    todo.push(rest);
                }
            }
            if best == 0 {
                break;
            }
        }
        Ok(best)
    }

    /// Elimination modulo `g`, primitive of positive degree in `v`.
    fn eliminate_modulo(&self, g: &MultiPoly<K>, v: usize) -> Step<K> {
        let (lc, _) = lead_in(g, v);
        let mut m: Vec<Vec<MultiPoly<K>>> = self
            .entries()
            .iter()
            .map(|row| reduce_row(row, g, v, &lc))
            .collect();
        let (rows, cols) = (self.rows(), self.cols());
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| (m[i][c].total_degree(), m[i][c].num_terms()))
            else {
                continue;
            };
            let h = gcd(&m[p][c], g);
            if !h.is_constant() {
                return Step::Split(h);
            }
            m.swap(r, p);
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let (piv, lead) = (m[r][c].clone(), m[i][c].clone());
                let row: Vec<MultiPoly<K>> = (0..cols)
                    .map(|j| {
                        if j <= c {
                            MultiPoly::zero(self.field())
                        } else {
                            piv.mul(&m[i][j]).sub(&lead.mul(&m[r][j]))
                        }
                    })
                    .collect();
                m[i] = reduce_row(&row, g, v, &lc);
            }
            r += 1;
        }
        Step::Rank(r)
    }
}

/// Chooses the variable of least positive degree.
fn main_variable<K: Field>(g: &MultiPoly<K>) -> usize {
    (0..NVARS)
        .filter(|&v| g.contains_var(v))
        .min_by_key(|&v| (g.degree_in(v), g.coefficients_in(v).iter().filter(|c| !c.is_zero()).count()))
        .expect("nonconstant modulus")
}

/// Reduces every entry of a row modulo `g` with a common power of the
/// leading coefficient `lc`, which is a non-zero-divisor modulo `g`; the
/// row is thus only rescaled by a unit of the fraction ring.
fn reduce_row<K: Field>(
    row: &[MultiPoly<K>],
    g: &MultiPoly<K>,
    v: usize,
    lc: &MultiPoly<K>,
) -> Vec<MultiPoly<K>> {
    let reduced: Vec<(MultiPoly<K>, u32)> = row
        .iter()
        .map(|e| {
            if e.is_zero() {
                (e.clone(), 0)
            } else {
                prem_with_exponent(e, g, v)
            }
        })
        .collect();
    let top = reduced.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut out: Vec<MultiPoly<K>> = reduced
        .into_iter()
        .map(|(r, e)| if e < top { r.mul(&lc.pow(top - e)) } else { r })
        .collect();
    strip_content(&mut out, g);
    out
}

/// Divides a row by the gcd of its entries when that gcd is a unit modulo
/// `g`; keeps expression swell in check.
fn strip_content<K: Field>(row: &mut [MultiPoly<K>], g: &MultiPoly<K>) {
    let nonzero: Vec<&MultiPoly<K>> = row.iter().filter(|e| !e.is_zero()).collect();
    if nonzero.is_empty() {
        return;
    }
    let c = crate::polyring::gcd_refs(&nonzero);
    if c.is_constant() || !gcd(&c, g).is_constant() {
        return;
    }
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.exact_div(&c).expect("content divides");
        }
    }
}
