use serde::Serialize;

use crate::error::{Error, Result};
use crate::hausdorff::{estimate, HausdorffEstimate, DEFAULT_DIVERGENCE_THRESHOLD};
use crate::numerics::{SampleConfig, Tolerance, Vector};
use crate::sets::ConvexSet;

const MAX_DOUBLINGS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DivergenceReason {
    DomainMismatch,
    EstimateExceeds { threshold: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RadiusSearchResult {
    Found {
        radius: f64,
        certified_estimate: f64,
        evaluations: usize,
    },
    Diverged {
        reason: DivergenceReason,
    },
}

/// Searches for `r` with `d_H(C_r, C) ≤ ε` (as estimated): doubling from
/// `dist(0, C) + 1`, then bisection down to a relative width of `eps_classify`.
pub fn radius_for_epsilon(s: &ConvexSet, eps: f64, tol: &Tolerance, cfg: &SampleConfig) -> Result<RadiusSearchResult> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    if matches!(s, ConvexSet::Truncation(_)) {
        return Err(Error::NestedTruncation);
    }
    if !s.domain_descriptor().is_closed {
        return Ok(RadiusSearchResult::Diverged {
            reason: DivergenceReason::DomainMismatch,
        });
    }
    let mut evaluations = 0usize;
    let mut test = |r: f64| -> Result<Option<f64>> {
        evaluations += 1;
        let t = s.truncated(r, tol)?;
        Ok(
            match estimate(&t, s, tol, cfg, DEFAULT_DIVERGENCE_THRESHOLD, Some(eps))? {
                HausdorffEstimate::Finite { lower_bound, .. } if lower_bound <= eps => Some(lower_bound),
                _ => None,
            },
        )
    };
    let base_distance = s.distance_to_set(&Vector::zeros(s.dim()), tol)?;
    let r0 = base_distance + 1.0;
    let mut lo = base_distance;
    let mut r = r0;
    let mut found = None;
    for _ in 0..=MAX_DOUBLINGS {
        if let Some(v) = test(r)? {
            found = Some((r, v));
            break;
        }
        lo = r;
        r *= 2.0;
    }
    let Some((mut hi, mut value)) = found else {
        return Ok(RadiusSearchResult::Diverged {
            reason: DivergenceReason::EstimateExceeds { threshold: eps },
        });
    };
    while hi - lo > tol.eps_classify * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= base_distance {
            lo = mid;
            continue;
        }
        match test(mid)? {
            Some(v) => {
                hi = mid;
                value = v;
            }
            None => lo = mid,
        }
    }
    Ok(RadiusSearchResult::Found {
        radius: hi,
        certified_estimate: value,
        evaluations,
    })
}
