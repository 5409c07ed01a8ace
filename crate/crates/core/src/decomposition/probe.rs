use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Tolerance, Vector};
use crate::sets::ConvexSet;

const TAIL: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ProbeVerdict {
    Continuous { limit_of_values: f64, value_at_limit: f64 },
    Jump { limit_of_values: f64, value_at_limit: f64 },
    OutsideDomain { direction: Vector },
}

/// Compares `σ(limit_dir)` with the limit of `σ` along `sequence`.
pub fn continuity_probe(
    s: &ConvexSet,
    limit_dir: &Vector,
    sequence: &[Vector],
    tol: &Tolerance,
) -> Result<ProbeVerdict> {
    if sequence.is_empty() {
        return Err(Error::InvalidArgument(
            "continuity probe needs a nonempty sequence".into(),
        ));
    }
    let domain = s.domain_descriptor();
    let mut values = Vec::with_capacity(sequence.len());
    for d in sequence.iter().chain(std::iter::once(limit_dir)) {
        if !domain.contains(d, tol)? {
            return Ok(ProbeVerdict::OutsideDomain { direction: d.clone() });
        }
        match s.support(d, tol)?.finite() {
            Some(v) => values.push(v),
            None => return Ok(ProbeVerdict::OutsideDomain { direction: d.clone() }),
        }
    }
    let value_at_limit = values.pop().expect("limit value was pushed");
    let gaps: Vec<f64> = sequence.iter().map(|d| d.distance(limit_dir)).collect();
    let limit_of_values = extrapolate(&gaps, &values);
    Ok(if (limit_of_values - value_at_limit).abs() > tol.eps_classify {
        ProbeVerdict::Jump {
            limit_of_values,
            value_at_limit,
        }
    } else {
        ProbeVerdict::Continuous {
            limit_of_values,
            value_at_limit,
        }
    })
}

/// Limit of `values` as `gaps → 0`, fitting `v = L + c·gap^p` through the last
/// three samples; falls back to the tail average when no power law fits.
pub(crate) fn extrapolate(gaps: &[f64], values: &[f64]) -> f64 {
    let n = values.len();
    let tail_start = n.saturating_sub(TAIL);
    let tail_avg = values[tail_start..].iter().sum::<f64>() / (n - tail_start) as f64;
    if n < 3 {
        return tail_avg;
    }
    let (g1, g2, g3) = (gaps[n - 3], gaps[n - 2], gaps[n - 1]);
    let (v1, v2, v3) = (values[n - 3], values[n - 2], values[n - 1]);
    if g3 == 0.0 {
        return v3;
    }
    let spread = (v1 - v3).abs().max((v2 - v3).abs());
    if spread <= 1e-15 * (1.0 + v3.abs()) {
        return v3;
    }
    if !(g1 > g2 && g2 > g3) {
        return tail_avg;
    }
    let residual = |p: f64| (v1 - v2) * (g2.powf(p) - g3.powf(p)) - (v2 - v3) * (g1.powf(p) - g2.powf(p));
    let grid: Vec<f64> = (1..=80).map(|k| 0.05 * k as f64).collect();
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ra, rb) = (residual(a), residual(b));
        if ra == 0.0 || (ra < 0.0) != (rb < 0.0) {
            let (mut lo, mut hi, mut rlo) = (a, b, ra);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let rm = residual(mid);
                if (rm < 0.0) == (rlo < 0.0) && rm != 0.0 {
                    lo = mid;
                    rlo = rm;
                } else {
                    hi = mid;
                }
            }
            let p = 0.5 * (lo + hi);
            let c = (v2 - v3) / (g2.powf(p) - g3.powf(p));
            return v3 - c * g3.powf(p);
        }
    }
    tail_avg
}
