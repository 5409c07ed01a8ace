//! Representations of closed convex sets and the queries every representation answers.

mod boundary;
mod cone;
pub(crate) mod curves;
pub(crate) mod distance;
mod domain;
mod json;
mod support;

use serde::{Serialize, Serializer};

use crate::decomposition::Truncation;
use crate::error::{Error, Result};
use crate::lp::{solve, LinearProgram, LpOutcome};
use crate::numerics::{Tolerance, Vector};

pub use cone::ConeDescriptor;
pub use domain::{DomainComparison, DomainDescriptor, DomainKind};
pub use json::SetDescription;

/// Value of a support function: finite, or `+∞` outside its domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportValue {
    Finite(f64),
    PlusInfinity,
}

impl SupportValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, SupportValue::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            SupportValue::Finite(v) => Some(v),
            SupportValue::PlusInfinity => None,
        }
    }

    /// `f64::INFINITY` for `PlusInfinity`.
    pub fn to_f64(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl Serialize for SupportValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SupportValue::Finite(v) => serializer.serialize_f64(*v),
            SupportValue::PlusInfinity => serializer.serialize_str("+inf"),
        }
    }
}

/// `{x : Ax ≤ b}`, known to be nonempty.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolyhedron {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    feasible_point: Vector,
}

impl HPolyhedron {
    /// Validates shapes and checks feasibility with a phase-one solve.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        let n = a
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::InvalidArgument("H-polyhedron needs at least one row".into()))?;
        let lp = LinearProgram::new(vec![0.0; n], a.clone(), b.clone())?;
        match solve(&lp, &Tolerance::default())? {
            LpOutcome::Optimal { point, .. }
            | LpOutcome::Unbounded {
                feasible_point: point, ..
            } => Ok(HPolyhedron {
                a,
                b,
                feasible_point: point,
            }),
            LpOutcome::Infeasible => Err(Error::EmptySet),
        }
    }

    pub fn dim(&self) -> usize {
        self.feasible_point.dim()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn feasible_point(&self) -> &Vector {
        &self.feasible_point
    }
}

/// `conv(vertices) + cone(rays)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolyhedron {
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
}

impl VPolyhedron {
    pub fn new(vertices: Vec<Vector>, rays: Vec<Vector>) -> Result<Self> {
        let n = vertices
            .first()
            .map(|v| v.dim())
            .ok_or_else(|| Error::InvalidArgument("V-polyhedron needs at least one vertex".into()))?;
        for v in vertices.iter().chain(rays.iter()) {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
        }
        Ok(VPolyhedron { vertices, rays })
    }

    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        Self::new(vertices, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.iter().all(|r| r.is_zero())
    }
}

/// A nonempty closed convex set.
///
/// The analytic entries are fixed sets:
/// * `HyperbolaEpigraph`: `{x ∈ ℝ² : x₁x₂ ≥ 1, x₁ ≥ 0}`
/// * `ParabolaEpigraph { scale }`: `scale · {x ∈ ℝ² : x₂ ≥ x₁²}`, i.e. `x₂ ≥ x₁²/scale`
/// * `ConeLift3D`: `(P × {0}) + cl cone(P × {1})` for the unit parabola epigraph `P`,
///   which works out to `{x ∈ ℝ³ : x₃ ≥ 0, x₂ ≥ 0, x₁² ≤ x₂(1 + x₃)}`
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexSet {
    HPolyhedron(HPolyhedron),
    VPolyhedron(VPolyhedron),
    HyperbolaEpigraph,
    ParabolaEpigraph { scale: f64 },
    ConeLift3D,
    Truncation(Box<Truncation>),
}

impl ConvexSet {
    pub fn h_polyhedron(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        Ok(ConvexSet::HPolyhedron(HPolyhedron::new(a, b)?))
    }

    pub fn v_polyhedron(vertices: Vec<Vector>, rays: Vec<Vector>) -> Result<Self> {
        Ok(ConvexSet::VPolyhedron(VPolyhedron::new(vertices, rays)?))
    }

    pub fn parabola(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "parabola scale must be positive, got {scale}"
            )));
        }
        Ok(ConvexSet::ParabolaEpigraph { scale })
    }

    /// Axis-aligned box `[lo, hi]` as an H-polyhedron.
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let n = lo.len();
        let mut a = Vec::with_capacity(2 * n);
        let mut b = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            a.push(row.clone());
            b.push(hi[i]);
            row[i] = -1.0;
            a.push(row);
            b.push(-lo[i]);
        }
        Self::h_polyhedron(a, b)
    }

    /// `(self ∩ radius·B) + rec(self)`.
    pub fn truncated(&self, radius: f64, tol: &Tolerance) -> Result<Self> {
        Ok(ConvexSet::Truncation(Box::new(crate::decomposition::truncate(
            self, radius, tol,
        )?)))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::HPolyhedron(h) => h.dim(),
            ConvexSet::VPolyhedron(v) => v.dim(),
            ConvexSet::HyperbolaEpigraph | ConvexSet::ParabolaEpigraph { .. } => 2,
            ConvexSet::ConeLift3D => 3,
            ConvexSet::Truncation(t) => t.base().dim(),
        }
    }

    /// Short variant name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ConvexSet::HPolyhedron(_) => "h-polyhedron",
            ConvexSet::VPolyhedron(_) => "v-polyhedron",
            ConvexSet::HyperbolaEpigraph => "hyperbola-epigraph",
            ConvexSet::ParabolaEpigraph { .. } => "parabola-epigraph",
            ConvexSet::ConeLift3D => "cone-lift-3d",
            ConvexSet::Truncation(_) => "truncation",
        }
    }

    pub(crate) fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Recession cone `{d : x + μd ∈ C for all x ∈ C, μ ≥ 0}`.
    pub fn recession_cone(&self) -> ConeDescriptor {
        match self {
            ConvexSet::HPolyhedron(h) => ConeDescriptor::HCone { a: h.a.clone() },
            ConvexSet::VPolyhedron(v) => ConeDescriptor::GeneratedCone {
                dim: v.dim(),
                rays: v.rays.clone(),
            },
            ConvexSet::HyperbolaEpigraph => ConeDescriptor::Orthant2D,
            ConvexSet::ParabolaEpigraph { .. } => ConeDescriptor::VerticalRay2D,
            ConvexSet::ConeLift3D => ConeDescriptor::LiftedCone3D,
            ConvexSet::Truncation(t) => t.base().recession_cone(),
        }
    }

    /// Symbolic description of `dom σ`.
    pub fn domain_descriptor(&self) -> DomainDescriptor {
        match self {
            ConvexSet::ParabolaEpigraph { .. } => DomainDescriptor::new(DomainKind::OpenLowerHalfPlaneWithOrigin),
            _ => DomainDescriptor::new(DomainKind::PolarOf(self.recession_cone())),
        }
    }
}
