use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grmatrix::CharFunction;

use super::profile::{QProfile, B0};

/// Verdict on a candidate characteristic function `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// 1 for the bound `p# <= q#`, 2 for the obligatory part.
    pub violated: Option<u8>,
    pub witness: Option<i64>,
    pub reason: String,
}

impl Admissibility {
    fn ok() -> Self {
        Admissibility {
            admissible: true,
            violated: None,
            witness: None,
            reason: "admissible".into(),
        }
    }

    fn fail(violated: u8, witness: i64, reason: String) -> Self {
        Admissibility {
            admissible: false,
            violated: Some(violated),
            witness: Some(witness),
            reason,
        }
    }
}

/// Whether `p` can be the degree profile of `P` in a resolution
/// `0 -> P -> N -> J_C(h) -> 0`:
///
/// 1. `p#(n) <= q#(n)` for every `n`;
/// 2. if `p#(n) = q#(n)` for some `n <= b0`, then `p#(m) = alpha_m` for all
///    `m <= n`, i.e. `P` contains the obligatory part of `N` up to `n`.
pub fn check_p_admissible(p: &CharFunction, profile: &QProfile) -> Result<Admissibility> {
    let r = profile.stable_rank as u64;
    if r == 0 || p.rank() != r - 1 {
        return Err(Error::MassMismatch {
            got: p.rank(),
            expected: r.saturating_sub(1),
        });
    }
    if profile.dissociated {
        return Err(Error::Dissociated);
    }
    profile.require_stable()?;
    let (wlo, whi) = profile.window.expect("nonzero rank implies a window");
    let lo = p.inf().map_or(wlo, |d| d.min(wlo));
    let hi = p.sup().map_or(whi, |d| d.max(whi));
    for n in lo..=hi {
        let (ps, qs) = (p.cumulative(n), profile.q_sharp(n) as u64);
        if ps > qs {
            return Ok(Admissibility::fail(1, n, format!("p#({n}) = {ps} > q#({n}) = {qs}")));
        }
    }
    let top = match profile.b0 {
        Some(B0::Exact(b)) | Some(B0::AtLeast(b)) => b,
        None => return Ok(Admissibility::ok()),
    };
    for n in lo..=top {
        if p.cumulative(n) != profile.q_sharp(n) as u64 {
            continue;
        }
        for m in lo..=n {
            let (ps, a) = (p.cumulative(m), profile.alpha(m) as u64);
            if ps != a {
                return Ok(Admissibility::fail(
                    2,
                    m,
                    format!("p#({n}) = q#({n}) with {n} <= b0, but p#({m}) = {ps} differs from alpha_{m} = {a}"),
                ));
            }
        }
    }
    Ok(Admissibility::ok())
}

/// The shift `h = sum n p(n) + deg N` of the family attached to `p`.
pub fn implied_shift(p: &CharFunction, deg_n: i64) -> i64 {
    p.weighted_sum() + deg_n
}
