use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;

use super::monomial::{Monomial, NVARS, VAR_NAMES};
use super::poly::MultiPoly;

/// Parses a polynomial written as a sum of terms like `-3*X^2*Y`, `a*T` or
/// `7`. Whitespace is ignored and `*` between factors is optional.
pub fn parse_poly<K: Field>(field: &K, input: &str) -> Result<MultiPoly<K>> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < chars.len() {
        let mut sign = 1i64;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -1;
                pos += 1;
            }
            _ if !first => {
                return Err(Error::Parse(format!("expected `+` or `-` at offset {pos}")));
            }
            _ => {}
        }
        first = false;
        let (coeff, mono) = parse_term(&chars, &mut pos)?;
        let c = field.from_bigint(&(coeff * sign));
        terms.push((mono, c));
    }
    Ok(MultiPoly::from_terms(field, terms))
}

fn parse_term(chars: &[char], pos: &mut usize) -> Result<(BigInt, Monomial)> {
    let mut coeff = BigInt::from(1);
    let mut exps = [0u32; NVARS];
    let mut factors = 0;
    loop {
        if *pos >= chars.len() || matches!(chars[*pos], '+' | '-') {
            break;
        }
        if factors > 0 && chars[*pos] == '*' {
            *pos += 1;
            if *pos >= chars.len() {
                return Err(Error::Parse("dangling `*`".into()));
            }
        }
        let c = chars[*pos];
        if c.is_ascii_digit() {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = chars[start..*pos].iter().collect();
            coeff *= s.parse::<BigInt>().expect("digits");
        } else if let Some(v) = VAR_NAMES.iter().position(|n| n.starts_with(c)) {
            *pos += 1;
            let mut e = 1u32;
            if *pos < chars.len() && chars[*pos] == '^' {
                *pos += 1;
                let start = *pos;
                while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                if start == *pos {
                    return Err(Error::Parse(format!("missing exponent after `{c}^`")));
                }
                let s: String = chars[start..*pos].iter().collect();
                e = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{s}`")))?;
            }
            exps[v] = exps[v]
                .checked_add(e)
                .filter(|&x| x <= super::monomial::MAX_DEGREE)
                .ok_or_else(|| Error::Parse("exponent too large".into()))?;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at offset {}", *pos)));
        }
        factors += 1;
    }
    if factors == 0 {
        return Err(Error::Parse(format!("empty term at offset {}", *pos)));
    }
    if exps.iter().sum::<u32>() > super::monomial::MAX_DEGREE {
        return Err(Error::Parse("degree too large".into()));
    }
    Ok((coeff, Monomial::new(exps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn parses_terms() {
        let f = Rationals;
        let p = parse_poly(&f, " -3 X^2 Y + a*T - 7").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.total_degree(), Some(3));
        let q = parse_poly(&f, "X*X").unwrap();
        assert_eq!(q, parse_poly(&f, "X^2").unwrap());
        assert!(parse_poly(&f, "X - X").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let f = PrimeField::default();
        for bad in ["", "X +", "W", "X^", "2**X", "X^2Y^", "X Y +"] {
            assert!(parse_poly(&f, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn leading_sign() {
        let f = PrimeField::default();
        let p = parse_poly(&f, "-X").unwrap();
        assert_eq!(p.leading_coeff(), f.from_i64(-1));
        assert_eq!(parse_poly(&f, "+X").unwrap(), parse_poly(&f, "X").unwrap());
    }
}
