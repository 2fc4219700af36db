use crate::error::{Error, Result};
use crate::field::Field;

use super::gcd::{content_primitive, gcd};
use super::monomial::{Monomial, NVARS};
use super::poly::MultiPoly;

/// Splits `p` into pairwise coprime, squarefree, monic factors whose product
/// has the same zero set as `p`. The factors need not be irreducible.
pub fn squarefree_factors<K: Field>(p: &MultiPoly<K>) -> Result<Vec<MultiPoly<K>>> {
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    let mut raw = Vec::new();
    split(p, &mut raw);
    Ok(coprime_base(raw))
}

fn split<K: Field>(p: &MultiPoly<K>, out: &mut Vec<MultiPoly<K>>) {
    if p.is_constant() {
        return;
    }
    let field = p.field();
    // monomial content first
    let mono = p
        .terms()
        .iter()
        .skip(1)
        .fold(p.terms()[0].0, |acc, (m, _)| acc.gcd(*m));
    let mut rest = p.clone();
    if !mono.is_one() {
        for v in 0..NVARS {
            if mono.exp(v) > 0 {
                out.push(MultiPoly::var(field, v));
            }
        }
        let m = MultiPoly::term(field, field.one(), mono);
        rest = rest.exact_div(&m).expect("monomial content divides");
        if rest.is_constant() {
            return;
        }
    }
    let v = (0..NVARS)
        .filter(|&v| rest.contains_var(v))
        .min_by_key(|&v| rest.degree_in(v))
        .expect("nonconstant");
    let (c, pp) = content_primitive(&rest, v);
    split(&c, out);
    yun(&pp, v, out);
}

/// Squarefree decomposition of a primitive polynomial in `v` (Yun). Every
/// exponent stays below the characteristic, so derivatives do not vanish.
fn yun<K: Field>(p: &MultiPoly<K>, v: usize, out: &mut Vec<MultiPoly<K>>) {
    let d = p.derivative(v);
    let mut g = gcd(p, &d);
    let mut w = p.exact_div(&g).expect("gcd divides");
    while !w.is_constant() {
        let y = gcd(&w, &g);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push(z.monic());
        }
        g = g.exact_div(&y).expect("gcd divides");
        w = y;
    }
}

/// Refines a list of squarefree polynomials into a pairwise coprime family
/// with the same radical product.
pub fn coprime_base<K: Field>(mut todo: Vec<MultiPoly<K>>) -> Vec<MultiPoly<K>> {
    let mut base: Vec<MultiPoly<K>> = Vec::new();
    'outer: while let Some(f) = todo.pop() {
        if f.is_constant() {
            continue;
        }
        let f = f.monic();
        for i in 0..base.len() {
            let g = gcd(&base[i], &f);
            if g.is_constant() {
                continue;
            }
            let b = base.swap_remove(i);
            todo.push(b.exact_div(&g).expect("gcd divides"));
            todo.push(f.exact_div(&g).expect("gcd divides"));
            todo.push(g);
            continue 'outer;
        }
        base.push(f);
    }
    base.sort_by(|a, b| {
        let ka = a.leading_term().map(|t| t.0).unwrap_or(Monomial::ONE);
        let kb = b.leading_term().map(|t| t.0).unwrap_or(Monomial::ONE);
        kb.cmp(&ka)
    });
    base
}
