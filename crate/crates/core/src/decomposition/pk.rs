use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Tolerance, Vector};
use crate::sets::ConvexSet;

/// Distances from one point to a sequence of truncations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PkPointReport {
    pub point: Vector,
    pub distances: Vec<f64>,
    /// Non-increasing up to `eps_geometry`.
    pub monotone: bool,
    /// Final distance at most `eps_classify`.
    pub limit_zero: bool,
    pub final_distance: f64,
    pub distance_to_set: f64,
    pub member: bool,
    /// `limit_zero` agrees with membership.
    pub consistent: bool,
}

/// Tracks `dist(x, C_r)` along increasing radii for each point.
pub fn pk_pointwise_check(
    s: &ConvexSet,
    points: &[Vector],
    radii: &[f64],
    tol: &Tolerance,
) -> Result<Vec<PkPointReport>> {
    if radii.is_empty() || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "radii must be nonempty and strictly increasing".into(),
        ));
    }
    let truncations = radii.iter().map(|&r| s.truncated(r, tol)).collect::<Result<Vec<_>>>()?;
    if let ConvexSet::Truncation(t) = &truncations[0] {
        t.require_nonempty()?;
    }
    points
        .iter()
        .map(|x| {
            let distances = truncations
                .iter()
                .map(|t| t.distance_to_set(x, tol))
                .collect::<Result<Vec<_>>>()?;
            let monotone = distances.windows(2).all(|w| w[1] <= w[0] + tol.eps_geometry);
            let final_distance = *distances.last().expect("radii are nonempty");
            let limit_zero = final_distance <= tol.eps_classify;
            let member = s.membership(x, tol)?;
            Ok(PkPointReport {
                point: x.clone(),
                distances,
                monotone,
                limit_zero,
                final_distance,
                distance_to_set: s.distance_to_set(x, tol)?,
                member,
                consistent: limit_zero == member,
            })
        })
        .collect()
}
