//! Curve families: the degree of `N`, the minimal shift, general morphisms
//! `u : P -> N` and the degree and genus of the curves they define.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::{CharFunction, GradedMatrix};
use crate::modgb::{fit_hilbert_polynomial, groebner_basis, HilbertPolynomial, SubmodulePresentation};
use crate::qprofile::{
    check_p_admissible, compute_q_profile, line_certificate, minor_gcd, MinorGcd, ProfileOptions, QProfile,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xB111_A150;

/// Number of morphisms drawn before giving up on a general one.
pub const RETRY_CAP: usize = 10;

/// Extra degrees above the top generator degree tried in turn when fitting
/// Hilbert polynomials.
const CAP_STEPS: [i64; 3] = [8, 14, 20];

/// Degree cap and minor budget shared by the verification steps.
#[derive(Clone, Debug)]
pub struct FamilyOptions {
    pub profile: ProfileOptions,
    pub seed: u64,
    pub retry_cap: usize,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            profile: ProfileOptions::default(),
            seed: DEFAULT_SEED,
            retry_cap: RETRY_CAP,
        }
    }
}

/// How the minors of `W` were shown to be coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoprimeMethod {
    Line,
    Minors,
}

/// Evidence that `u = s v` is injective at the closed point with a
/// cokernel free in codimension 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rank: usize,
    pub minor_size: usize,
    pub coprime_by: CoprimeMethod,
}

/// Invariants of the family attached to a verified morphism.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyInvariants {
    pub p: CharFunction,
    pub deg_n: i64,
    pub h: i64,
    pub d: u64,
    #[serde(with = "bigint_string")]
    pub g: BigInt,
    /// Hilbert polynomials of `N`, of `P` and of the cokernel `Q`.
    pub p_n: HilbertPolynomial,
    pub p_p: HilbertPolynomial,
    pub p_q: HilbertPolynomial,
}

/// Summary of the minimal family of the biliaison class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalFamilyReport {
    pub q: CharFunction,
    pub deg_n: i64,
    pub h0: i64,
    pub d0: u64,
    #[serde(with = "bigint_string")]
    pub g0: BigInt,
    /// Hilbert polynomial of the ideal sheaf of the curves.
    pub hilbert_polynomial: HilbertPolynomial,
    pub seed: u64,
    pub retries: usize,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

/// Hilbert function of the column module of an `a`-free matrix, from
/// Gröbner bases of its blocks.
struct ColumnModule<K: Field> {
    parts: Vec<SubmodulePresentation<K>>,
}

impl<K: Field> ColumnModule<K> {
    fn new(m: &GradedMatrix<K>, cap: i64) -> Result<Self> {
        let parts = m
            .blocks()
            .into_iter()
            .map(|(rows, cols)| groebner_basis(&m.select(&rows, &cols), Some(cap)))
            .collect::<Result<_>>()?;
        Ok(ColumnModule { parts })
    }

    fn hilbert_function(&self, n: i64) -> Result<u64> {
        self.parts.iter().map(|p| p.hilbert_function(n)).sum()
    }
}

fn top_degree<K: Field>(m: &GradedMatrix<K>) -> i64 {
    m.col_degrees().iter().chain(m.row_degrees()).copied().max().unwrap_or(0)
}

fn bottom_degree<K: Field>(m: &GradedMatrix<K>) -> i64 {
    m.row_degrees().iter().copied().min().unwrap_or(0)
}

/// Fits the Hilbert polynomial of `Im m / Im w` (of `Im m` when `w` is
/// absent), raising the degree cap until the fit validates.
fn quotient_hilbert_polynomial<K: Field>(m: &GradedMatrix<K>, w: Option<&GradedMatrix<K>>) -> Result<HilbertPolynomial> {
    let base = top_degree(m).max(w.map_or(i64::MIN, top_degree));
    let start = bottom_degree(m);
    let mut last = Error::NotStabilized { cap: base };
    for step in CAP_STEPS {
        let cap = base + step;
        let big = ColumnModule::new(m, cap)?;
        let small = w.map(|w| ColumnModule::new(w, cap)).transpose()?;
        let fit = fit_hilbert_polynomial(start, cap, |n| {
            let sub = match &small {
                Some(s) => s.hilbert_function(n)?,
                None => 0,
            };
            let top = big.hilbert_function(n)?;
            Ok(BigRational::from_integer(BigInt::from(top) - BigInt::from(sub)))
        });
        match fit {
            Ok(p) => return Ok(p),
            Err(e @ Error::NotStabilized { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Hilbert polynomial of the image of `s` at the closed point.
pub fn image_hilbert_polynomial<K: Field>(s: &GradedMatrix<K>) -> Result<HilbertPolynomial> {
    quotient_hilbert_polynomial(&s.specialize_closed_point(), None)
}

/// `deg N` from the Hilbert polynomial `P_N` of rank `r`: twice the `n^2`
/// coefficient of `P_N(n) - r C(n+3, 3)`.
pub fn degree_from_hilbert_polynomial(p_n: &HilbertPolynomial, r: usize) -> Result<i64> {
    let c = &p_n.coeffs[2] - BigRational::from_integer(BigInt::from(r as u64));
    let d = c * BigRational::from_integer(BigInt::from(2));
    if !d.is_integer() {
        return Err(Error::NonIntegralDegree(d.to_string()));
    }
    d.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NonIntegralDegree(d.to_string()))
}

/// `deg N` for the sheaf presented by `s`.
pub fn sheaf_degree<K: Field>(s: &GradedMatrix<K>) -> Result<i64> {
    let r = s.specialize_closed_point().rank_fraction_field();
    degree_from_hilbert_polynomial(&image_hilbert_polynomial(s)?, r)
}

/// `h0 = sum n q(n) + deg N`.
pub fn minimal_shift(profile: &QProfile, deg_n: i64) -> Result<i64> {
    if profile.dissociated {
        return Err(Error::Dissociated);
    }
    profile.require_stable()?;
    Ok(profile.q().weighted_sum() + deg_n)
}

/// Hilbert polynomial of the free module with generator degrees `p`.
pub fn free_hilbert_polynomial(p: &CharFunction) -> HilbertPolynomial {
    p.iter().fold(HilbertPolynomial::zero(), |acc, (n, mult)| {
        acc.add(&HilbertPolynomial::free(-n).scale(mult as i64))
    })
}

/// A random lift `v : P -> L2`: row degrees those of the columns of `s`,
/// column degrees the multiset `p`. Checks admissibility of `p` first.
pub fn sample_general_morphism<K: Field>(s: &GradedMatrix<K>, p: &CharFunction, seed: u64) -> Result<GradedMatrix<K>> {
    let profile = compute_q_profile(s, &ProfileOptions::default())?;
    let verdict = check_p_admissible(p, &profile)?;
    if !verdict.admissible {
        return Err(Error::Inadmissible(verdict.reason));
    }
    Ok(random_lift(s, p, seed))
}

fn random_lift<K: Field>(s: &GradedMatrix<K>, p: &CharFunction, seed: u64) -> GradedMatrix<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GradedMatrix::random_homogeneous(s.field(), s.col_degrees().to_vec(), p.degrees(), &mut rng)
}

/// Checks that `W = s v` at the closed point has rank `r - 1` and that its
/// `(r-1)`-minors have no common factor.
pub fn verify_general_morphism<K: Field>(s: &GradedMatrix<K>, v: &GradedMatrix<K>) -> Result<Certificate> {
    verify_with_budget(s, v, ProfileOptions::default().minor_budget, DEFAULT_SEED)
}

fn verify_with_budget<K: Field>(s: &GradedMatrix<K>, v: &GradedMatrix<K>, budget: u64, seed: u64) -> Result<Certificate> {
    let s0 = s.specialize_closed_point();
    let r = s0.rank_fraction_field();
    let k = v.cols();
    if r == 0 || k != r - 1 {
        return Err(Error::MassMismatch {
            got: k as u64,
            expected: r.saturating_sub(1) as u64,
        });
    }
    let w = s0.compose(v)?;
    let rank = w.rank_fraction_field();
    if rank < k {
        return Err(Error::MorphismCheck(format!(
            "rank {rank} at the closed point, expected {k}: not injective"
        )));
    }
    if k == 0 {
        return Ok(Certificate {
            rank,
            minor_size: k,
            coprime_by: CoprimeMethod::Line,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if line_certificate(&w, k, &mut rng) {
        return Ok(Certificate {
            rank,
            minor_size: k,
            coprime_by: CoprimeMethod::Line,
        });
    }
    match minor_gcd(&w, k, budget, seed)? {
        MinorGcd::Coprime => Ok(Certificate {
            rank,
            minor_size: k,
            coprime_by: CoprimeMethod::Minors,
        }),
        MinorGcd::Common { gcd, .. } => Err(Error::MorphismCheck(format!(
            "maximal minors share the factor {gcd}: the cokernel has torsion"
        ))),
    }
}

/// `(h, d, g)` of the curves defined by a verified lift `v` of type `p`,
/// from the Hilbert polynomial of `Q = Im s / Im s v` at the closed point,
/// which agrees with that of `J_C(h)`.
pub fn family_degree_genus<K: Field>(s: &GradedMatrix<K>, v: &GradedMatrix<K>, p: &CharFunction) -> Result<FamilyInvariants> {
    let s0 = s.specialize_closed_point();
    let r = s0.rank_fraction_field();
    let w = s0.compose(v)?;
    let p_n = quotient_hilbert_polynomial(&s0, None)?;
    let deg_n = degree_from_hilbert_polynomial(&p_n, r)?;
    let p_q = quotient_hilbert_polynomial(&s0, Some(&w))?;
    let h = p.weighted_sum() + deg_n;
    let (d, g) = degree_and_genus(&p_q, h)?;
    Ok(FamilyInvariants {
        p: p.clone(),
        deg_n,
        h,
        d,
        g,
        p_n,
        p_p: free_hilbert_polynomial(p),
        p_q,
    })
}

/// Reads `d`, `g` from `P(m - h) = C(m+3, 3) - d m - 1 + g`.
pub fn degree_and_genus(p_q: &HilbertPolynomial, h: i64) -> Result<(u64, BigInt)> {
    let ideal = p_q.shifted(-h);
    let diff = HilbertPolynomial::free(0).sub(&ideal);
    if !diff.coeffs[3].is_zero() || !diff.coeffs[2].is_zero() {
        return Err(Error::ShapeMismatch(format!("P(n - {h}) = {ideal}")));
    }
    let (d, c) = (&diff.coeffs[1], &diff.coeffs[0]);
    if !d.is_integer() || !c.is_integer() || d <= &BigRational::zero() {
        return Err(Error::ShapeMismatch(format!("P(n - {h}) = {ideal}")));
    }
    let d = d
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::ShapeMismatch(format!("degree {d} out of range")))?;
    let g = BigInt::one() - c.to_integer();
    Ok((d, g))
}

/// The minimal family: profile, `h0`, and a general morphism of type `q`.
pub fn minimal_family<K: Field>(s: &GradedMatrix<K>, seed: u64) -> Result<MinimalFamilyReport> {
    minimal_family_with(
        s,
        &FamilyOptions {
            seed,
            ..Default::default()
        },
    )
}

pub fn minimal_family_with<K: Field>(s: &GradedMatrix<K>, opts: &FamilyOptions) -> Result<MinimalFamilyReport> {
    let profile = compute_q_profile(s, &opts.profile)?;
    let (q, h0, deg_n, p_n) = minimal_data(s, &profile)?;
    let s0 = s.specialize_closed_point();
    let mut warnings = profile.warnings.clone();
    for attempt in 0..opts.retry_cap {
        let seed = opts.seed.wrapping_add(attempt as u64);
        let v = random_lift(s, &q, seed);
        let certificate = match verify_with_budget(s, &v, opts.profile.minor_budget, seed) {
            Ok(c) => c,
            Err(Error::MorphismCheck(msg)) => {
                warnings.push(format!("draw {attempt} rejected: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let w = s0.compose(&v)?;
        let p_q = quotient_hilbert_polynomial(&s0, Some(&w))?;
        let (d0, g0) = match degree_and_genus(&p_q, h0) {
            Ok(x) => x,
            Err(Error::ShapeMismatch(msg)) => {
                warnings.push(format!("draw {attempt} rejected: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if p_q.add(&free_hilbert_polynomial(&q)) != p_n {
            warnings.push(format!("draw {attempt} rejected: image of u is not free"));
            continue;
        }
        return Ok(MinimalFamilyReport {
            q,
            deg_n,
            h0,
            d0,
            g0,
            hilbert_polynomial: p_q.shifted(-h0),
            seed: opts.seed,
            retries: attempt,
            certificate,
            warnings,
        });
    }
    Err(Error::RetryCap(opts.retry_cap))
}

fn minimal_data<K: Field>(s: &GradedMatrix<K>, profile: &QProfile) -> Result<(CharFunction, i64, i64, HilbertPolynomial)> {
    if profile.dissociated {
        return Err(Error::Dissociated);
    }
    profile.require_stable()?;
    let p_n = image_hilbert_polynomial(s)?;
    let deg_n = degree_from_hilbert_polynomial(&p_n, profile.stable_rank)?;
    let h0 = minimal_shift(profile, deg_n)?;
    Ok((profile.q(), h0, deg_n, p_n))
}

/// A trivial elementary biliaison: `s` extended by the free summand
/// `R(-(m-1))`, presented by a unit entry. With `p = q + [m]` the shift of
/// the family rises by one.
pub fn elementary_biliaison<K: Field>(s: &GradedMatrix<K>, m: i64) -> Result<GradedMatrix<K>> {
    let field = s.field();
    let unit = GradedMatrix::parse(field, vec![m - 1], vec![m - 1], &[&["1"]])?;
    let upper = GradedMatrix::zero(field, s.row_degrees().to_vec(), vec![m - 1]);
    let lower = GradedMatrix::zero(field, vec![m - 1], s.col_degrees().to_vec());
    GradedMatrix::from_blocks(s, &upper, &lower, &unit)
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
