use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::{CharFunction, GradedMatrix, MinorSelection};
use crate::modgb::{groebner_basis, is_empty_projective_locus};
use crate::polyring::{coprime_base, gcd, squarefree_factors, MultiPoly};

use super::coprime::{minor_gcd, MinorGcd, DEFAULT_MINOR_BUDGET};

/// Seed for minor sampling inside the invariant computations.
pub const PROFILE_SEED: u64 = 0x0b5e_55ed;

/// One degree of a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub n: i64,
    pub alpha: usize,
    pub beta: usize,
    pub q_sharp: usize,
}

/// The threshold degree `b0`: exact, or only bounded below because every
/// degree of the window qualified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum B0 {
    Exact(i64),
    AtLeast(i64),
}

impl B0 {
    /// The known lower bound, which is the value itself when exact.
    pub fn bound(&self) -> i64 {
        match *self {
            B0::Exact(n) | B0::AtLeast(n) => n,
        }
    }
}

impl std::fmt::Display for B0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            B0::Exact(n) => write!(f, "{n}"),
            B0::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// How the local freeness of the cokernel was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalFreeness {
    Certified,
    /// Too many maximal minors to enumerate; taken on trust.
    OverBudget,
    /// The minors have a common zero but the caller asked to proceed.
    Assumed,
}

/// The invariants `alpha_n`, `beta_n`, `q#(n)` on a window of degrees,
/// with `b0` and the stable rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QProfile {
    pub window: Option<(i64, i64)>,
    pub rows: Vec<DegreeRow>,
    pub b0: Option<B0>,
    pub stable_rank: usize,
    pub dissociated: bool,
    /// True when `q#` has reached its final value inside the window.
    pub stabilized: bool,
    pub local_freeness: LocalFreeness,
    pub warnings: Vec<String>,
}

/// Knobs for [`compute_q_profile`].
#[derive(Clone, Debug)]
pub struct ProfileOptions {
    pub window: Option<(i64, i64)>,
    pub minor_budget: u64,
    pub seed: u64,
    pub assume_locally_free: bool,
    pub assume_surjective: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            window: None,
            minor_budget: DEFAULT_MINOR_BUDGET,
            seed: PROFILE_SEED,
            assume_locally_free: false,
            assume_surjective: false,
        }
    }
}

impl QProfile {
    fn row(&self, n: i64) -> Option<&DegreeRow> {
        let (lo, hi) = self.window?;
        if n < lo {
            None
        } else {
            self.rows.get((n.min(hi) - lo) as usize)
        }
    }

    /// `q#(n)`, extended by 0 below the window and by its last value above.
    pub fn q_sharp(&self, n: i64) -> usize {
        self.row(n).map_or(0, |r| r.q_sharp)
    }

    pub fn alpha(&self, n: i64) -> usize {
        self.row(n).map_or(0, |r| r.alpha)
    }

    pub fn beta(&self, n: i64) -> usize {
        self.row(n).map_or(0, |r| r.beta)
    }

    /// The q-function, the finite difference of `q#`.
    pub fn q(&self) -> CharFunction {
        let Some((lo, _)) = self.window else {
            return CharFunction::new();
        };
        let values: Vec<u64> = self.rows.iter().map(|r| r.q_sharp as u64).collect();
        CharFunction::from_cumulative(lo, &values)
    }

    pub fn require_stable(&self) -> Result<()> {
        match self.window {
            Some((_, hi)) if !self.stabilized => Err(Error::WindowExhausted { n_max: hi }),
            _ => Ok(()),
        }
    }
}

/// `alpha_n`: the rank of the truncation `s_n` at the closed point.
pub fn alpha<K: Field>(s: &GradedMatrix<K>, n: i64) -> usize {
    s.truncate_columns(n).specialize_closed_point().rank_fraction_field()
}

/// `beta_n`: the largest `b` such that the `b`-minors of `s_n` at the
/// closed point have no common factor.
pub fn beta<K: Field>(s: &GradedMatrix<K>, n: i64, budget: u64) -> Result<usize> {
    beta_at_closed_point(&s.truncate_columns(n).specialize_closed_point(), budget, PROFILE_SEED)
}

/// `beta` of an `a`-free matrix: its rank at a general point of the worst
/// hypersurface.
///
/// The matrix splits into blocks, and the rank at a point is the sum of the
/// block ranks there. A block drops rank along a hypersurface exactly when
/// the hypersurface divides all maximal-rank minors of that block, so only
/// the factors of those gcds need to be examined.
pub fn beta_at_closed_point<K: Field>(m: &GradedMatrix<K>, budget: u64, seed: u64) -> Result<usize> {
    struct Block<K: Field> {
        rows: Vec<usize>,
        cols: Vec<usize>,
        rank: usize,
        common: Option<MultiPoly<K>>,
    }
    let mut blocks = Vec::new();
    for (rows, cols) in m.blocks() {
        let sub = m.select(&rows, &cols);
        let rank = sub.rank_fraction_field();
        let common = match minor_gcd(&sub, rank, budget, seed)? {
            MinorGcd::Coprime => None,
            MinorGcd::Common { gcd, .. } => Some(gcd),
        };
        blocks.push(Block { rows, cols, rank, common });
    }
    let alpha: usize = blocks.iter().map(|b| b.rank).sum();
    let mut factors = Vec::new();
    for b in &blocks {
        if let Some(g) = &b.common {
            factors.extend(squarefree_factors(g)?);
        }
    }
    let mut best = alpha;
    for f in coprime_base(factors) {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut rank = 0;
        for b in &blocks {
            match &b.common {
                Some(g) if !gcd(g, &f).is_constant() => {
                    rows.extend(&b.rows);
                    cols.extend(&b.cols);
                }
                _ => rank += b.rank,
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        rank += m.select(&rows, &cols).rank_modulo_hypersurface(&f)?;
        best = best.min(rank);
    }
    Ok(best)
}

/// True when the submodule of `L1` generated by the columns of the
/// `a`-free matrix `m` is free of rank `alpha`.
pub fn column_module_is_free<K: Field>(m: &GradedMatrix<K>, alpha: usize) -> Result<bool> {
    let nonzero: Vec<usize> = (0..m.cols()).filter(|&j| (0..m.rows()).any(|i| !m.entry(i, j).is_zero())).collect();
    if nonzero.len() == alpha {
        // alpha independent generators
        return Ok(true);
    }
    let gens = m.select_columns(&nonzero);
    let top = gens.col_degrees().iter().copied().max().unwrap_or(0);
    // minimal generators are decided by degree `top`
    let gb = groebner_basis(&gens, Some(top))?;
    Ok(gb.minimal_generator_count().rank() == alpha as u64)
}

/// Checks that the maximal-rank minors of the `a`-free matrix have no
/// common zero, block by block. Returns `None` when some block has more
/// than `budget` such minors.
pub fn certify_locally_free<K: Field>(m: &GradedMatrix<K>, budget: u64) -> Result<Option<bool>> {
    let mut over_budget = false;
    for (rows, cols) in m.blocks() {
        let sub = m.select(&rows, &cols);
        let rank = sub.rank_fraction_field();
        if sub.minor_count(rank) > budget {
            over_budget = true;
            continue;
        }
        let minors = sub.minors(rank, MinorSelection::All)?;
        if !is_empty_projective_locus(m.field(), &minors)? {
            return Ok(Some(false));
        }
    }
    Ok(if over_budget { None } else { Some(true) })
}

/// The full profile on the degree window, which by default runs from one
/// below the lowest column degree to the highest column degree, where
/// every invariant has reached its final value.
pub fn compute_q_profile<K: Field>(s: &GradedMatrix<K>, opts: &ProfileOptions) -> Result<QProfile> {
    let mut warnings = Vec::new();
    warnings.push(if opts.assume_surjective {
        "surjectivity of L2 onto the sections of N is assumed".to_string()
    } else {
        "surjectivity of L2 onto the sections of N is not certified".to_string()
    });
    let st = s.specialize_closed_point();
    let cols = s.col_char();
    let (Some(inf), Some(sup)) = (cols.inf(), cols.sup()) else {
        return Ok(QProfile {
            window: None,
            rows: Vec::new(),
            b0: None,
            stable_rank: 0,
            dissociated: false,
            stabilized: true,
            local_freeness: LocalFreeness::Certified,
            warnings,
        });
    };
    let r = st.rank_fraction_field();
    let local_freeness = match certify_locally_free(&st, opts.minor_budget)? {
        Some(true) => LocalFreeness::Certified,
        None => {
            warnings.push(format!(
                "local freeness of the cokernel taken on trust: more than {} maximal minors",
                opts.minor_budget
            ));
            LocalFreeness::OverBudget
        }
        Some(false) if opts.assume_locally_free => {
            warnings.push("maximal minors have a common zero; local freeness assumed by request".into());
            LocalFreeness::Assumed
        }
        Some(false) => {
            return Err(Error::Hypothesis(
                "the maximal minors at the closed point have a common zero, so the cokernel is not locally free"
                    .into(),
            ))
        }
    };
    let (lo, hi) = opts.window.unwrap_or((inf - 1, sup));
    if lo > hi {
        return Err(Error::Shape(format!("empty degree window {lo}:{hi}")));
    }
    if lo >= inf {
        warnings.push(format!("window starts at {lo}, above the lowest column degree {inf}"));
    }
    let mut ab = Vec::new();
    for n in lo..=hi {
        let m = st.truncate_columns(n);
        let a = m.rank_fraction_field();
        let b = beta_at_closed_point(&m, opts.minor_budget, opts.seed)?;
        ab.push((n, a, b));
    }
    // the degrees up to b0 form an initial segment
    let mut b0 = B0::AtLeast(hi);
    for &(n, a, b) in &ab {
        let ok = a == b && column_module_is_free(&st.truncate_columns(n), a)?;
        if !ok {
            b0 = B0::Exact(n - 1);
            break;
        }
    }
    let rows: Vec<DegreeRow> = ab
        .iter()
        .map(|&(n, alpha, beta)| {
            let q_sharp = if n <= b0.bound() { alpha } else { alpha.saturating_sub(1).min(beta) };
            DegreeRow { n, alpha, beta, q_sharp }
        })
        .collect();
    let last = rows.last().expect("nonempty window");
    let dissociated = matches!(b0, B0::AtLeast(_)) && hi >= sup;
    let stabilized = last.alpha == r && (dissociated || last.q_sharp + 1 == r);
    if dissociated {
        warnings.push("N is dissociated: there is no curve family to build".into());
    }
    Ok(QProfile {
        window: Some((lo, hi)),
        rows,
        b0: Some(b0),
        stable_rank: r,
        dissociated,
        stabilized,
        local_freeness,
        warnings,
    })
}

/// `b0` on the default window capped at `n_max`.
pub fn compute_b0<K: Field>(s: &GradedMatrix<K>, n_max: i64) -> Result<Option<B0>> {
    let Some(inf) = s.col_char().inf() else {
        return Ok(None);
    };
    let opts = ProfileOptions {
        window: Some((inf - 1, n_max.max(inf - 1))),
        assume_locally_free: true,
        ..Default::default()
    };
    Ok(compute_q_profile(s, &opts)?.b0)
}
