use crate::error::Result;
use crate::field::Field;
use crate::grmatrix::GradedMatrix;
use crate::linalg::{self, Echelon};
use crate::polyring::{Monomial, MultiPoly};

use super::space::{DegreeSpace, ModTerm};

/// Minimal homogeneous syzygies of the columns of `gens` of degree at most
/// `up_to`, as the columns of a matrix whose row degrees are the column
/// degrees of `gens`.
///
/// Degree by degree, the kernel of the map in that degree is computed and
/// completed from the span of the variable multiples of lower syzygies.
pub fn syzygies<K: Field>(gens: &GradedMatrix<K>, up_to: i64) -> Result<GradedMatrix<K>> {
    let field = gens.field();
    let src_shifts = gens.col_degrees().to_vec();
    let tgt_shifts = gens.row_degrees();
    let mut columns: Vec<Vec<MultiPoly<K>>> = Vec::new();
    let mut col_degrees = Vec::new();
    for j in 0..gens.cols() {
        super::gb::ModVec::from_column(gens, j)?;
    }
    let Some(&lo) = src_shifts.iter().min() else {
        return GradedMatrix::new(field, src_shifts, Vec::new(), Vec::new());
    };
    // full kernel of the previous degree, as module elements
    let mut prev: Vec<Vec<(ModTerm, K::Elem)>> = Vec::new();
    for d in lo..=up_to {
        let src = DegreeSpace::new(&src_shifts, d);
        let tgt = DegreeSpace::new(tgt_shifts, d);
        // matrix of the map in degree d: rows index the target basis
        let mut a = vec![vec![field.zero(); src.dim()]; tgt.dim()];
        for (s, t) in src.basis.iter().enumerate() {
            for i in 0..gens.rows() {
                for (m, c) in gens.entry(i, t.comp as usize).terms() {
                    let k = tgt.index_of(ModTerm { mono: m.mul(t.mono), comp: i as u32 });
                    a[k][s] = field.add(&a[k][s], c);
                }
            }
        }
        let kernel = linalg::kernel(field, &a, src.dim());
        let mut ech = Echelon::new(field);
        for v in &prev {
            for x in 0..4 {
                let mut dense = vec![field.zero(); src.dim()];
                for (t, c) in v {
                    let k = src.index_of(ModTerm { mono: t.mono.mul(Monomial::var(x)), comp: t.comp });
                    dense[k] = c.clone();
                }
                ech.insert(dense);
            }
        }
        for v in &kernel {
            if ech.insert(v.clone()) {
                columns.push(to_polys(field, &src, v, gens.cols()));
                col_degrees.push(d);
            }
        }
        prev = kernel
            .into_iter()
            .map(|v| {
                src.basis
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !field.is_zero(c))
                    .map(|(t, c)| (*t, c))
                    .collect()
            })
            .collect();
    }
    let rows = gens.cols();
    let entries = (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    GradedMatrix::new(field, src_shifts, col_degrees, entries)
}

fn to_polys<K: Field>(field: &K, space: &DegreeSpace, v: &[K::Elem], rank: usize) -> Vec<MultiPoly<K>> {
    let mut parts: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); rank];
    for (t, c) in space.basis.iter().zip(v) {
        if !field.is_zero(c) {
            parts[t.comp as usize].push((t.mono, c.clone()));
        }
    }
    parts.into_iter().map(|p| MultiPoly::from_terms(field, p)).collect()
}
