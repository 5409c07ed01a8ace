use crate::error::Result;
use crate::lp::support_h_polyhedron;
use crate::numerics::{dot, Tolerance, Vector};

use super::cone::{generated_polar_contains, lifted_polar_contains, parabola_support};
use super::{ConvexSet, SupportValue, VPolyhedron};

fn from_option(v: Option<f64>) -> SupportValue {
    v.map_or(SupportValue::PlusInfinity, SupportValue::Finite)
}

pub(crate) fn hyperbola_support(d1: f64, d2: f64) -> Option<f64> {
    if d1 <= 0.0 && d2 <= 0.0 {
        Some(-2.0 * (d1 * d2).sqrt())
    } else {
        None
    }
}

pub(crate) fn cone_lift_support(d: &[f64], tol: &Tolerance) -> Option<f64> {
    let p = parabola_support(1.0, d[0], d[1])?;
    if lifted_polar_contains(d, tol) {
        Some(p)
    } else {
        None
    }
}

fn v_support(v: &VPolyhedron, d: &[f64], tol: &Tolerance) -> SupportValue {
    if !generated_polar_contains(v.rays(), d, tol) {
        return SupportValue::PlusInfinity;
    }
    let best = v.vertices().iter().map(|p| dot(p, d)).fold(f64::NEG_INFINITY, f64::max);
    SupportValue::Finite(best)
}

impl ConvexSet {
    /// `σ(d) = sup { dᵀx : x ∈ self }`.
    pub fn support(&self, d: &Vector, tol: &Tolerance) -> Result<SupportValue> {
        self.check_dim(d)?;
        Ok(match self {
            ConvexSet::HPolyhedron(h) => support_h_polyhedron(h.matrix(), h.rhs(), d, tol)?,
            ConvexSet::VPolyhedron(v) => v_support(v, d, tol),
            ConvexSet::HyperbolaEpigraph => from_option(hyperbola_support(d[0], d[1])),
            ConvexSet::ParabolaEpigraph { scale } => from_option(parabola_support(*scale, d[0], d[1])),
            ConvexSet::ConeLift3D => from_option(cone_lift_support(d, tol)),
            ConvexSet::Truncation(t) => t.support(d, tol)?,
        })
    }
}
