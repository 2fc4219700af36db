use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;

use super::monomial::{MonoBuildHasher, Monomial, NVARS, PARAM};

/// Sparse polynomial in X, Y, Z, T, a. Terms are kept in strictly
/// descending grevlex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<K: Field> {
    field: K,
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> MultiPoly<K> {
    pub fn zero(field: &K) -> Self {
        MultiPoly {
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(field: &K) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &K, c: K::Elem) -> Self {
        Self::term(field, c, Monomial::ONE)
    }

    pub fn term(field: &K, c: K::Elem, m: Monomial) -> Self {
        let terms = if field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        MultiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn var(field: &K, i: usize) -> Self {
        Self::term(field, field.one(), Monomial::var(i))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(field: &K, terms: impl IntoIterator<Item = (Monomial, K::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, K::Elem, MonoBuildHasher> = HashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, acc)
    }

    fn from_map(field: &K, acc: HashMap<Monomial, K::Elem, MonoBuildHasher>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly {
            field: field.clone(),
            terms,
        }
    }

    /// A form of degree `d` in X, Y, Z, T with independent random
    /// coefficients on every monomial; zero when `d < 0`.
    pub fn random_form<R: rand::Rng + ?Sized>(field: &K, d: i64, rng: &mut R) -> Self {
        if d < 0 {
            return Self::zero(field);
        }
        let terms = super::monomial::monomials_of_degree(4, d as u32)
            .into_iter()
            .map(|m| (m, field.random(rng)))
            .collect::<Vec<_>>();
        Self::from_terms(field, terms)
    }

    /// Trusts the caller that terms are sorted descending and nonzero.
    pub(crate) fn from_sorted(field: &K, terms: Vec<(Monomial, K::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !field.is_zero(c)));
        MultiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field.is_one(&self.terms[0].1)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..NVARS).filter(|&v| self.contains_var(v)).collect()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> K::Elem {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_value(&self) -> Option<K::Elem> {
        if self.is_zero() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Homogeneous in X, Y, Z, T with `a` counted as degree 0.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree_xyzt());
        match it.next() {
            None => Some(None),
            Some(d) => {
                if it.all(|e| e == d) {
                    Some(Some(d))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        match self.homogeneous_degree() {
            Some(None) => true,
            Some(Some(e)) => e as i64 == d,
            None => false,
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.spec().to_string(),
                other.field.spec().to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly::from_sorted(f, out)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MultiPoly::from_sorted(f, self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect())
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return MultiPoly::zero(f);
        }
        MultiPoly::from_sorted(f, self.terms.iter().map(|(m, d)| (*m, f.mul(c, d))).collect())
    }

    /// Multiplies by `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, c: &K::Elem, m: Monomial) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return MultiPoly::zero(f);
        }
        MultiPoly::from_sorted(
            f,
            self.terms.iter().map(|(n, d)| (n.mul(m), f.mul(c, d))).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(f);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(c, *m);
        }
        let mut acc: HashMap<Monomial, K::Elem, MonoBuildHasher> =
            HashMap::with_capacity_and_hasher(small.terms.len() * big.terms.len(), Default::default());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(*m2);
                let c = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_map(f, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_field(divisor)?;
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Multivariate division by a single polynomial. The remainder collects
    /// every term not divisible by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let (lm, lc) = match divisor.terms.first() {
            Some(t) => t.clone(),
            None => return Err(Error::InexactDivision),
        };
        let lc_inv = f.inv(&lc).expect("nonzero leading coefficient");
        let tail = MultiPoly::from_sorted(f, divisor.terms[1..].to_vec());
        let mut quotient = Vec::new();
        let mut rem = Vec::new();
        let mut cur = self.clone();
        while let Some((m, c)) = cur.terms.first().cloned() {
            match lm.quotient_of(m) {
                Some(qm) => {
                    let qc = f.mul(&c, &lc_inv);
                    cur.terms.remove(0);
                    cur = cur.sub(&tail.mul_term(&qc, qm));
                    quotient.push((qm, qc));
                }
                None => {
                    cur.terms.remove(0);
                    rem.push((m, c));
                }
            }
        }
        Ok((MultiPoly::from_sorted(f, quotient), MultiPoly::from_sorted(f, rem)))
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &K::Elem) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(var);
            (m.with_exp(var, 0), f.mul(c, &f.pow(value, e as u64)))
        });
        MultiPoly::from_terms(f, terms)
    }

    /// Evaluates at a point of affine 5-space (X, Y, Z, T, a).
    pub fn eval(&self, point: &[K::Elem; NVARS]) -> K::Elem {
        let f = &self.field;
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<K::Elem>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(maxdeg + 1);
                p.push(f.one());
                for k in 1..=maxdeg {
                    p.push(f.mul(&p[k - 1], x));
                }
                p
            })
            .collect();
        self.eval_with_powers(&powers)
    }

    /// Evaluates using precomputed power tables `powers[var][e]`.
    pub fn eval_with_powers(&self, powers: &[Vec<K::Elem>]) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, pw) in powers.iter().enumerate() {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t = f.mul(&t, &pw[e]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            (e > 0).then(|| (m.with_exp(var, e - 1), f.mul(c, &f.from_i64(e as i64))))
        });
        MultiPoly::from_terms(f, terms)
    }

    /// View as a polynomial in `var`: coefficient of `var^k` for each k
    /// (index k of the returned vector), each free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<K>> {
        let f = &self.field;
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly::from_sorted(f, t)
            })
            .collect()
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Top-degree homogeneous component (in all five variables).
    pub fn top_component(&self) -> Self {
        match self.total_degree() {
            None => self.clone(),
            Some(d) => MultiPoly::from_sorted(
                &self.field,
                self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
            ),
        }
    }

    /// Specializes the uniformizer: `a := value`.
    pub fn specialize_parameter(&self, value: &K::Elem) -> Self {
        self.substitute(PARAM, value)
    }

    pub fn map_field<L: Field>(&self, target: &L, conv: impl Fn(&K::Elem) -> L::Elem) -> MultiPoly<L> {
        MultiPoly::from_terms(target, self.terms.iter().map(|(m, c)| (*m, conv(c))))
    }
}

impl<K: Field> std::fmt::Debug for MultiPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl<K: Field> std::fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = self.field.fmt_elem(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
