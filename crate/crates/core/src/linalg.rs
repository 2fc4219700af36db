//! Dense linear algebra over a coefficient field.

use crate::field::Field;

/// Row-reduces `m` in place to reduced echelon form and returns the pivot
/// columns.
pub fn rref<K: Field>(field: &K, m: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let factor = row[c].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination; `m` is consumed as scratch space.
pub fn rank<K: Field>(field: &K, mut m: Vec<Vec<K::Elem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.mul(&row[c], &inv);
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{x : m x = 0}` of a `rows x cols` matrix.
pub fn kernel<K: Field>(field: &K, m: &[Vec<K::Elem>], cols: usize) -> Vec<Vec<K::Elem>> {
    let mut a: Vec<Vec<K::Elem>> = m.to_vec();
    let pivots = rref(field, &mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&a[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant by Gaussian elimination.
pub fn det<K: Field>(field: &K, mut m: Vec<Vec<K::Elem>>) -> K::Elem {
    let n = m.len();
    let mut d = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if p != c {
            m.swap(p, c);
            d = field.neg(&d);
        }
        d = field.mul(&d, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("nonzero pivot");
        let (top, bottom) = m.split_at_mut(c + 1);
        for row in bottom.iter_mut() {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.mul(&row[c], &inv);
            for (x, y) in row[c..].iter_mut().zip(&top[c][c..]) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
    }
    d
}

/// Row echelon form built one vector at a time.
pub struct Echelon<K: Field> {
    field: K,
    rows: Vec<(usize, Vec<K::Elem>)>,
}

impl<K: Field> Echelon<K> {
    pub fn new(field: &K) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, mut v: Vec<K::Elem>) -> bool {
        let f = &self.field;
        // each stored row vanishes on the pivots of the rows before it
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((p, v));
        true
    }
}
