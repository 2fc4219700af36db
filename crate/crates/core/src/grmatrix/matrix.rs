use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{parse_poly, MultiPoly, NVARS};

use super::charfn::CharFunction;

/// A degree-0 map `L2 -> L1` of graded free modules. Column `j` is a
/// generator of degree `col_degrees[j]`, row `i` one of degree
/// `row_degrees[i]`, and entry `(i, j)` is zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]` in X, Y, Z, T (`a` has degree 0).
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<K: Field> {
    field: K,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    entries: Vec<Vec<MultiPoly<K>>>,
}

impl<K: Field> GradedMatrix<K> {
    pub fn new(
        field: &K,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        entries: Vec<Vec<MultiPoly<K>>>,
    ) -> Result<Self> {
        if entries.len() != row_degrees.len() {
            return Err(Error::Shape(format!(
                "{} rows of entries for {} row degrees",
                entries.len(),
                row_degrees.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != col_degrees.len() {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    col_degrees.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        field.spec().to_string(),
                        e.field().spec().to_string(),
                    ));
                }
                let expected = col_degrees[j] - row_degrees[i];
                if !e.is_zero() && (expected < 0 || !e.is_homogeneous_of(expected)) {
                    return Err(Error::Inhomogeneous { row: i, col: j, expected });
                }
            }
        }
        Ok(GradedMatrix {
            field: field.clone(),
            row_degrees,
            col_degrees,
            entries,
        })
    }

    /// Builds a matrix from polynomial strings.
    pub fn parse(
        field: &K,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        entries: &[&[&str]],
    ) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, row_degrees, col_degrees, entries)
    }

    pub fn zero(field: &K, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Self {
        let entries = vec![vec![MultiPoly::zero(field); col_degrees.len()]; row_degrees.len()];
        GradedMatrix {
            field: field.clone(),
            row_degrees,
            col_degrees,
            entries,
        }
    }

    /// A matrix with independent random forms of the required degree in
    /// every entry (zero where that degree is negative), free of `a`.
    pub fn random_homogeneous<R: rand::Rng + ?Sized>(
        field: &K,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        rng: &mut R,
    ) -> Self {
        let entries = row_degrees
            .iter()
            .map(|&r| col_degrees.iter().map(|&c| MultiPoly::random_form(field, c - r, rng)).collect())
            .collect();
        GradedMatrix {
            field: field.clone(),
            row_degrees,
            col_degrees,
            entries,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn row_char(&self) -> CharFunction {
        CharFunction::from_degrees(&self.row_degrees)
    }

    pub fn col_char(&self) -> CharFunction {
        CharFunction::from_degrees(&self.col_degrees)
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly<K> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<MultiPoly<K>>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly<K>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// True when some entry involves the uniformizer.
    pub fn has_parameter(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .any(|e| e.contains_var(crate::polyring::PARAM))
    }

    /// Keeps the columns of degree `<= n`, in their original order.
    pub fn truncate_columns(&self, n: i64) -> Self {
        let keep: Vec<usize> = (0..self.cols()).filter(|&j| self.col_degrees[j] <= n).collect();
        self.select_columns(&keep)
    }

    pub fn select_columns(&self, keep: &[usize]) -> Self {
        GradedMatrix {
            field: self.field.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: keep.iter().map(|&j| self.col_degrees[j]).collect(),
            entries: self
                .entries
                .iter()
                .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        GradedMatrix {
            field: self.field.clone(),
            row_degrees: rows.iter().map(|&i| self.row_degrees[i]).collect(),
            col_degrees: cols.iter().map(|&j| self.col_degrees[j]).collect(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Value at the closed point: `a := 0`.
    pub fn specialize_closed_point(&self) -> Self {
        self.map_entries(|e| e.specialize_parameter(&self.field.zero()))
    }

    fn map_entries(&self, f: impl Fn(&MultiPoly<K>) -> MultiPoly<K>) -> Self {
        GradedMatrix {
            field: self.field.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Composition `self * other`; the rows of `other` must match the
    /// columns of `self` in degree.
    pub fn compose(&self, other: &GradedMatrix<K>) -> Result<Self> {
        if self.col_degrees != other.row_degrees {
            return Err(Error::Shape(format!(
                "cannot compose: column degrees {:?} vs row degrees {:?}",
                self.col_degrees, other.row_degrees
            )));
        }
        let mut entries = vec![vec![MultiPoly::zero(&self.field); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = MultiPoly::zero(&self.field);
                for k in 0..self.cols() {
                    let (x, y) = (&self.entries[i][k], &other.entries[k][j]);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
                *out = acc;
            }
        }
        Ok(GradedMatrix {
            field: self.field.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
            entries,
        })
    }

    /// Block matrix `[[a, b], [c, d]]`, checking that every block fits.
    pub fn from_blocks(
        a: &GradedMatrix<K>,
        b: &GradedMatrix<K>,
        c: &GradedMatrix<K>,
        d: &GradedMatrix<K>,
    ) -> Result<Self> {
        let ok = a.row_degrees == b.row_degrees
            && c.row_degrees == d.row_degrees
            && a.col_degrees == c.col_degrees
            && b.col_degrees == d.col_degrees;
        if !ok {
            return Err(Error::Shape("blocks do not fit together".into()));
        }
        let mut entries = Vec::with_capacity(a.rows() + c.rows());
        for (l, r) in [(a, b), (c, d)] {
            for i in 0..l.rows() {
                let mut row = l.entries[i].clone();
                row.extend(r.entries[i].iter().cloned());
                entries.push(row);
            }
        }
        let row_degrees = [a.row_degrees.clone(), c.row_degrees.clone()].concat();
        let col_degrees = [a.col_degrees.clone(), b.col_degrees.clone()].concat();
        GradedMatrix::new(&a.field, row_degrees, col_degrees, entries)
    }

    /// Numeric matrix at a point of the coordinate space.
    pub fn eval(&self, point: &[K::Elem; NVARS]) -> Vec<Vec<K::Elem>> {
        let maxdeg = self
            .entries
            .iter()
            .flatten()
            .filter_map(|e| e.total_degree())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<K::Elem>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(maxdeg + 1);
                p.push(self.field.one());
                for k in 1..=maxdeg {
                    p.push(self.field.mul(&p[k - 1], x));
                }
                p
            })
            .collect();
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval_with_powers(&powers)).collect())
            .collect()
    }

    /// Connected components of the bipartite graph of nonzero entries.
    /// Rows and columns that are entirely zero are left out.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (r, c) = (self.rows(), self.cols());
        let mut parent: Vec<usize> = (0..r + c).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut touched = vec![false; r + c];
        for i in 0..r {
            for j in 0..c {
                if !self.entries[i][j].is_zero() {
                    touched[i] = true;
                    touched[r + j] = true;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
            Default::default();
        for x in 0..r + c {
            if !touched[x] {
                continue;
            }
            let root = find(&mut parent, x);
            let g = groups.entry(root).or_default();
            if x < r {
                g.0.push(x);
            } else {
                g.1.push(x - r);
            }
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Maximal degree of any entry in variable `v`, per column.
    pub(crate) fn column_degree_bounds(&self, v: usize) -> Vec<u32> {
        (0..self.cols())
            .map(|j| {
                self.entries
                    .iter()
                    .filter_map(|r| r[j].degree_in(v))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub(crate) fn row_degree_bounds(&self, v: usize) -> Vec<u32> {
        self.entries
            .iter()
            .map(|r| r.iter().filter_map(|e| e.degree_in(v)).max().unwrap_or(0))
            .collect()
    }
}

impl<K: Field> std::fmt::Display for GradedMatrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "rows {:?}, cols {:?}", self.row_degrees, self.col_degrees)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
