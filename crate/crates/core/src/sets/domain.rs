use crate::error::{Error, Result};
use crate::numerics::{Tolerance, Vector};

use super::cone::ConeDescriptor;

#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind {
    /// The domain equals the polar of the recession cone (closed).
    PolarOf(ConeDescriptor),
    /// `{d ∈ ℝ² : d₂ < 0} ∪ {0}`, the domain of every parabola epigraph.
    OpenLowerHalfPlaneWithOrigin,
}

/// `dom σ_C` for one set. Its closure is always the polar of `rec C`.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainDescriptor {
    pub kind: DomainKind,
    pub is_closed: bool,
    pub closure_is_polar_recession: bool,
}

/// Outcome of comparing two domains without sampling.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainComparison {
    Equal,
    /// A unit direction in exactly one of the two domains.
    Mismatch(Vector),
}

impl DomainDescriptor {
    pub(crate) fn new(kind: DomainKind) -> Self {
        let is_closed = matches!(kind, DomainKind::PolarOf(_));
        DomainDescriptor {
            kind,
            is_closed,
            closure_is_polar_recession: true,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            DomainKind::PolarOf(c) => c.dim(),
            DomainKind::OpenLowerHalfPlaneWithOrigin => 2,
        }
    }

    /// Membership predicate for `dom σ`.
    pub fn contains(&self, d: &Vector, tol: &Tolerance) -> Result<bool> {
        match &self.kind {
            DomainKind::PolarOf(c) => c.polar_membership(d, tol),
            DomainKind::OpenLowerHalfPlaneWithOrigin => {
                if d.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        found: d.dim(),
                    });
                }
                Ok(d[1] < 0.0 || d.is_zero())
            }
        }
    }

    /// Nearest point of the (closed) domain, when available in closed form.
    pub fn project(&self, d: &Vector) -> Option<Vector> {
        match &self.kind {
            DomainKind::PolarOf(c) => c.project_onto_polar(d),
            DomainKind::OpenLowerHalfPlaneWithOrigin => None,
        }
    }

    /// Decides equality of two domains symbolically when both are catalog-backed.
    pub fn symbolic_comparison(&self, other: &DomainDescriptor) -> Option<DomainComparison> {
        use DomainKind::*;
        match (&self.kind, &other.kind) {
            (OpenLowerHalfPlaneWithOrigin, OpenLowerHalfPlaneWithOrigin) => Some(DomainComparison::Equal),
            (OpenLowerHalfPlaneWithOrigin, PolarOf(ConeDescriptor::VerticalRay2D))
            | (PolarOf(ConeDescriptor::VerticalRay2D), OpenLowerHalfPlaneWithOrigin) => {
                // (1, 0) lies in the closed lower half-plane but not in the open one.
                Some(DomainComparison::Mismatch(Vector::unit(2, 0)))
            }
            (PolarOf(a), PolarOf(b)) if a.is_catalog() && b.is_catalog() && a == b => Some(DomainComparison::Equal),
            _ => None,
        }
    }

    /// The domain minus the origin is open and σ blows up towards its boundary,
    /// so σ is continuous on the sphere as an extended-real function.
    pub fn is_open_with_blowup(&self) -> bool {
        matches!(self.kind, DomainKind::OpenLowerHalfPlaneWithOrigin)
    }
}
