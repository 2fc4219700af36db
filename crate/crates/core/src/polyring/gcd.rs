use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;

use super::monomial::{Monomial, NVARS};
use super::poly::MultiPoly;
use super::univariate::UniPoly;

/// An affine line `s -> base + s * dir` in the 5-dimensional coordinate space.
#[derive(Clone, Debug)]
pub struct Line<K: Field> {
    pub base: [K::Elem; NVARS],
    pub dir: [K::Elem; NVARS],
}

impl<K: Field> Line<K> {
    pub fn random<R: rand::Rng + ?Sized>(field: &K, rng: &mut R) -> Self {
        Line {
            base: std::array::from_fn(|_| field.random(rng)),
            dir: std::array::from_fn(|_| field.random_nonzero(rng)),
        }
    }

    pub fn point(&self, field: &K, s: &K::Elem) -> [K::Elem; NVARS] {
        std::array::from_fn(|i| field.add(&self.base[i], &field.mul(s, &self.dir[i])))
    }

    /// Interpolation nodes `s = 0, 1, ..., n-1`.
    pub fn nodes(field: &K, n: usize) -> Vec<K::Elem> {
        (0..n).map(|i| field.from_i64(i as i64)).collect()
    }

    /// Restriction of `p` to the line, as a univariate polynomial in `s`.
    pub fn restrict(&self, p: &MultiPoly<K>) -> UniPoly<K> {
        let field = p.field();
        let d = match p.total_degree() {
            None => return UniPoly::zero(),
            Some(d) => d as usize,
        };
        let xs = Self::nodes(field, d + 1);
        let ys: Vec<K::Elem> = xs.iter().map(|s| p.eval(&self.point(field, s))).collect();
        UniPoly::interpolate(field, &xs, &ys)
    }
}

const CERT_SEED: u64 = 0x005e_ed0f_11e5;

/// Tries to certify that a family is coprime by restricting it to a random
/// line. A `true` answer is a proof; `false` means "unknown".
///
/// If a nonconstant `g` divided every member, its restriction would divide
/// every restriction, and it keeps its full degree whenever some member does.
pub fn certify_coprime<K: Field>(polys: &[&MultiPoly<K>], attempts: usize) -> bool {
    let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
        return false;
    };
    let field = first.field();
    let mut rng = ChaCha8Rng::seed_from_u64(CERT_SEED);
    for _ in 0..attempts {
        let line = Line::random(field, &mut rng);
        let mut g = UniPoly::zero();
        let mut full_degree = false;
        for p in polys {
            if p.is_zero() {
                continue;
            }
            let r = line.restrict(p);
            if r.degree() == p.total_degree().map(|d| d as usize) {
                full_degree = true;
            }
            g = UniPoly::gcd(field, &g, &r);
            if g.degree() == Some(0) && full_degree {
                return true;
            }
        }
        if g.degree() == Some(0) && full_degree {
            return true;
        }
    }
    false
}

/// Greatest common divisor, normalized to leading coefficient 1.
/// `gcd(0, 0) = 0`.
pub fn gcd<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>) -> MultiPoly<K> {
    let field = a.field();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(field);
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a.terms()[0].0, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b.terms()[0].0, a);
    }
    if a == b {
        return a.monic();
    }
    if certify_coprime(&[a, b], 1) {
        return MultiPoly::one(field);
    }
    // main variable: shared, of least combined degree
    let shared: Vec<usize> = (0..NVARS)
        .filter(|&v| a.contains_var(v) && b.contains_var(v))
        .collect();
    if shared.is_empty() {
        // any common factor would be free of every variable
        return MultiPoly::one(field);
    }
    let v = *shared
        .iter()
        .min_by_key(|&&v| a.degree_in(v).unwrap() + b.degree_in(v).unwrap())
        .unwrap();
    let (ca, pa) = content_primitive(a, v);
    let (cb, pb) = content_primitive(b, v);
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).monic()
}

fn monomial_gcd<K: Field>(m: Monomial, p: &MultiPoly<K>) -> MultiPoly<K> {
    let g = p.terms().iter().fold(m, |acc, (n, _)| acc.gcd(*n));
    MultiPoly::term(p.field(), p.field().one(), g)
}

/// GCD of a family. Errors when every input is zero.
pub fn gcd_many<K: Field>(polys: &[MultiPoly<K>]) -> Result<MultiPoly<K>> {
    let nonzero: Vec<&MultiPoly<K>> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(Error::AllZero);
    };
    let field = first.field().clone();
    for p in &nonzero[1..] {
        if *p.field() != field {
            return Err(Error::FieldMismatch(field.spec().to_string(), p.field().spec().to_string()));
        }
    }
    Ok(gcd_refs(&nonzero))
}

pub(crate) fn gcd_refs<K: Field>(polys: &[&MultiPoly<K>]) -> MultiPoly<K> {
    let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
        return polys
            .first()
            .map(|p| MultiPoly::zero(p.field()))
            .expect("nonempty family");
    };
    let field = first.field().clone();
    if polys.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return MultiPoly::one(&field);
    }
    if polys.len() > 2 && certify_coprime(polys, 1) {
        return MultiPoly::one(&field);
    }
    // start from the smallest member
    let mut order: Vec<&&MultiPoly<K>> = polys.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| (p.total_degree(), p.num_terms()));
    let mut g = order[0].monic();
    for p in &order[1..] {
        if g.is_constant() {
            break;
        }
        if p.exact_div(&g).is_ok() {
            continue;
        }
        g = gcd(&g, p);
    }
    g
}

/// Content with respect to `v` (a polynomial free of `v`) and the primitive part.
pub fn content_primitive<K: Field>(p: &MultiPoly<K>, v: usize) -> (MultiPoly<K>, MultiPoly<K>) {
    let coeffs = p.coefficients_in(v);
    let refs: Vec<&MultiPoly<K>> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    let c = gcd_refs(&refs);
    if c.is_one() {
        return (c, p.clone());
    }
    let pp = p.exact_div(&c).expect("content divides");
    (c, pp)
}

/// Leading coefficient and degree of `p` viewed as a polynomial in `v`.
pub fn lead_in<K: Field>(p: &MultiPoly<K>, v: usize) -> (MultiPoly<K>, u32) {
    let d = p.degree_in(v).unwrap_or(0);
    let field = p.field();
    let terms: Vec<_> = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exp(v) == d)
        .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
        .collect();
    (MultiPoly::from_terms(field, terms), d)
}

/// Pseudo-remainder of `a` by `b` in the variable `v`: some
/// `lc_v(b)^e * a - q * b` with `deg_v` below `deg_v b`.
pub fn prem<K: Field>(a: &MultiPoly<K>, b: &MultiPoly<K>, v: usize) -> MultiPoly<K> {
    prem_with_exponent(a, b, v).0
}

/// Like [`prem`], also returning the exponent `e` of `lc_v(b)`.
pub fn prem_with_exponent<K: Field>(
    a: &MultiPoly<K>,
    b: &MultiPoly<K>,
    v: usize,
) -> (MultiPoly<K>, u32) {
    let field = a.field();
    let (lcb, db) = lead_in(b, v);
    let mut r = a.clone();
    let mut e = 0;
    while !r.is_zero() {
        let (lcr, dr) = lead_in(&r, v);
        if dr < db {
            break;
        }
        let shift = MultiPoly::term(field, field.one(), var_pow(v, dr - db));
        r = lcb.mul(&r).sub(&lcr.mul(&shift).mul(b));
        e += 1;
    }
    (r, e)
}

fn primitive_prs<K: Field>(a: MultiPoly<K>, b: MultiPoly<K>, v: usize) -> MultiPoly<K> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if !r.contains_var(v) {
            return MultiPoly::one(a.field());
        }
        a = b;
        b = content_primitive(&r, v).1;
    }
}

fn var_pow(v: usize, e: u32) -> Monomial {
    let mut ex = [0; NVARS];
    ex[v] = e;
    Monomial::new(ex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::polyring::parse_poly;

    fn p(s: &str) -> MultiPoly<PrimeField> {
        parse_poly(&PrimeField::default(), s).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(gcd(&p("X"), &p("Y")).is_one());
        assert_eq!(gcd_many(&[p("X*Y"), p("X*Z"), p("X*T")]).unwrap(), p("X"));
        let minors = [p("X"), p("-Y"), p("-a")];
        let at_zero: Vec<_> = minors.iter().map(|m| m.specialize_parameter(&0)).collect();
        assert!(gcd_many(&at_zero).unwrap().is_one());
        assert!(matches!(gcd_many(&[p("0"), p("0")]), Err(Error::AllZero)));
    }

    #[test]
    fn hidden_common_factor() {
        let g = p("X*Y + Z^2 - 3*T*a");
        let u = p("X^2 - Y*T + 5");
        let w = p("Y^3 + X*Z + T");
        let got = gcd(&g.mul(&u), &g.mul(&w));
        assert_eq!(got, g.monic());
        let got = gcd(&g.mul(&g).mul(&u), &g.mul(&w).mul(&u));
        assert_eq!(got, g.mul(&u).monic());
    }

    #[test]
    fn over_rationals() {
        let f = Rationals;
        let a = parse_poly(&f, "2*X^2 - 2*Y^2").unwrap();
        let b = parse_poly(&f, "3*X*Z + 3*Y*Z").unwrap();
        assert_eq!(gcd(&a, &b), parse_poly(&f, "X + Y").unwrap());
    }

    #[test]
    fn certificate_is_sound_on_shared_factor() {
        let a = p("X^2 - Y^2");
        let b = p("X*Z + Y*Z");
        assert!(!certify_coprime(&[&a, &b], 5));
        assert!(certify_coprime(&[&p("X^2 + Y"), &p("Z*T - 1")], 3));
    }

    #[test]
    fn pseudo_remainder_degree_drops() {
        let a = p("X^3*Y + X*Z + 1");
        let b = p("Y*X^2 + T");
        let r = prem(&a, &b, 0);
        assert!(r.degree_in(0).unwrap_or(0) < 2);
    }
}
