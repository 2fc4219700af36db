use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::gb::SubmodulePresentation;

/// A polynomial in `n` of degree at most 3 with rational coefficients,
/// `coeffs[k]` being the coefficient of `n^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    #[serde(with = "rational_strings")]
    pub coeffs: [BigRational; 4],
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial {
            coeffs: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Interpolates the unique cubic through `(n0 + k, values[k])`, k < 4.
    pub fn fit(n0: i64, values: &[BigRational; 4]) -> Self {
        let xs: Vec<BigRational> = (0..4)
            .map(|k| BigRational::from_integer(BigInt::from(n0 + k)))
            .collect();
        let mut coeffs: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            // Lagrange basis polynomial for node i, expanded
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * &xs[j];
                }
                basis = next;
                denom *= &xs[i] - &xs[j];
            }
            let scale = &values[i] / denom;
            for (k, b) in basis.iter().enumerate() {
                coeffs[k] += b * &scale;
            }
        }
        HilbertPolynomial { coeffs }
    }

    /// `C(n + shift + 3, 3)`: the Hilbert polynomial of `R(shift)`.
    pub fn free(shift: i64) -> Self {
        let six = BigRational::from_integer(BigInt::from(6));
        let values: [BigRational; 4] = std::array::from_fn(|k| {
            let m = BigRational::from_integer(BigInt::from(k as i64 + shift));
            (&m + BigRational::one()) * (&m + BigRational::from_integer(2.into()))
                * (&m + BigRational::from_integer(3.into()))
                / &six
        });
        Self::fit(0, &values)
    }

    pub fn add(&self, other: &Self) -> Self {
        HilbertPolynomial {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &other.coeffs[k]),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HilbertPolynomial {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &other.coeffs[k]),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigRational::from_integer(BigInt::from(c));
        HilbertPolynomial {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * &c),
        }
    }

    /// The polynomial `n -> P(n + t)`.
    pub fn shifted(&self, t: i64) -> Self {
        let values: [BigRational; 4] = std::array::from_fn(|k| self.eval(k as i64 + t));
        Self::fit(0, &values)
    }
}

impl std::fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for k in (0..4).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "n".into(),
                _ => format!("n^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({mag})*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Degrees used to validate a fit beyond the four interpolation points.
pub const VALIDATION_DEGREES: i64 = 3;

/// Finds the Hilbert polynomial of a Hilbert function known on degrees up
/// to `top`: the first window of four consecutive degrees whose cubic also
/// matches the next [`VALIDATION_DEGREES`] values, and every value after
/// them through `top`.
pub fn fit_hilbert_polynomial(
    start: i64,
    top: i64,
    hf: impl Fn(i64) -> Result<BigRational>,
) -> Result<HilbertPolynomial> {
    let values: Vec<BigRational> = (start..=top).map(&hf).collect::<Result<_>>()?;
    let at = |n: i64| &values[(n - start) as usize];
    let mut n0 = start;
    while n0 + 3 + VALIDATION_DEGREES <= top {
        let window: [BigRational; 4] = std::array::from_fn(|k| at(n0 + k as i64).clone());
        let p = HilbertPolynomial::fit(n0, &window);
        if (n0 + 4..=top).all(|n| p.eval(n) == *at(n)) {
            return Ok(p);
        }
        n0 += 1;
    }
    Err(Error::NotStabilized { cap: top })
}

impl<K: Field> SubmodulePresentation<K> {
    /// Hilbert polynomial of the submodule, fitted on degrees up to the
    /// degree cap (or further when the basis is complete).
    pub fn hilbert_polynomial(&self, top: Option<i64>) -> Result<HilbertPolynomial> {
        let start = self.shifts().iter().copied().min().unwrap_or(0);
        let top = top.unwrap_or_else(|| match self.valid_through() {
            Some(c) => c,
            None => {
                let last = self.basis().iter().map(|b| b.degree).max().unwrap_or(start);
                self.cap().max(last + 4 + VALIDATION_DEGREES)
            }
        });
        fit_hilbert_polynomial(start, top, |n| {
            Ok(BigRational::from_integer(BigInt::from(self.hilbert_function(n)?)))
        })
    }
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &[BigRational; 4], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(c.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigRational; 4], D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 4 {
            return Err(D::Error::custom("expected four coefficients"));
        }
        let parsed: Vec<BigRational> = v
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(std::array::from_fn(|k| parsed[k].clone()))
    }
}
