use crate::field::Field;

/// Dense univariate polynomial, coefficient of `s^i` at index `i`,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<K: Field> {
    pub coeffs: Vec<K::Elem>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(field: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, field: &K, x: &K::Elem) -> K::Elem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn monic(&self, field: &K) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = field.inv(lc).expect("nonzero");
                UniPoly {
                    coeffs: self.coeffs.iter().map(|c| field.mul(c, &inv)).collect(),
                }
            }
        }
    }

    /// Remainder of division by `d` (nonzero).
    pub fn rem(&self, field: &K, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = field.inv(&d.coeffs[dd]).expect("nonzero");
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = field.mul(&r[top], &inv);
            if !field.is_zero(&q) {
                let shift = top - dd;
                for (i, c) in d.coeffs.iter().enumerate() {
                    let t = field.mul(&q, c);
                    r[shift + i] = field.sub(&r[shift + i], &t);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| field.is_zero(c)) {
                r.pop();
            }
        }
        UniPoly::new(field, r)
    }

    /// Monic gcd; the gcd of two zeros is zero.
    pub fn gcd(field: &K, a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(field: &K, xs: &[K::Elem], ys: &[K::Elem]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        // Newton divided differences
        let mut dd: Vec<K::Elem> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = field.sub(&dd[i], &dd[i - 1]);
                let den = field.sub(&xs[i], &xs[i - j]);
                dd[i] = field.div(&num, &den).expect("distinct nodes");
            }
        }
        // expand the Newton form
        let mut coeffs = vec![field.zero(); n.max(1)];
        for i in (0..n).rev() {
            // coeffs = coeffs * (s - xs[i]) + dd[i]
            let mut next = vec![field.zero(); n.max(1)];
            for k in 0..n {
                if field.is_zero(&coeffs[k]) {
                    continue;
                }
                if k + 1 < n {
                    next[k + 1] = field.add(&next[k + 1], &coeffs[k]);
                }
                let t = field.mul(&coeffs[k], &xs[i]);
                next[k] = field.sub(&next[k], &t);
            }
            next[0] = field.add(&next[0], &dd[i]);
            coeffs = next;
        }
        UniPoly::new(field, coeffs)
    }
}
