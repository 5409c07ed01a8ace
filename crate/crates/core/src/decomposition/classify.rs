use serde::Serialize;

use crate::error::Result;
use crate::numerics::{sample_unit_sphere, SampleConfig, Tolerance, Vector};
use crate::sets::ConvexSet;

use super::probe::{continuity_probe, ProbeVerdict};

const PROBE_LENGTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// What the approximate-M verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxBasis {
    /// Follows from M-decomposability.
    ImpliedByMotzkin,
    /// Hyperbolic with a polyhedral recession cone.
    PolyhedralShortcut,
    /// Continuity probes along canonical sequences.
    Probed,
    /// The support domain is not closed.
    NotHyperbolic,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    PolyhedralRecessionCone,
    ImpliedByMotzkinDecomposition,
    /// `C ⊆ {translate} + rec C`.
    CompactTranslate {
        translate: Vector,
    },
    /// A direction in the closure of the domain but not in the domain.
    NonClosedDomain {
        direction: Vector,
    },
    Discontinuity {
        limit: Vector,
        sequence: Vec<Vector>,
        values: Vec<f64>,
        limit_of_values: f64,
        value_at_limit: f64,
    },
    ContinuityProbed {
        limit: Vector,
        limit_of_values: f64,
        value_at_limit: f64,
    },
    EmptyTruncation {
        radius: f64,
        distance: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub m_decomposable: Verdict,
    pub approx_m_decomposable: Verdict,
    pub hyperbolic: Verdict,
    pub continuous_set: Verdict,
    pub approx_basis: ApproxBasis,
    pub witnesses: Vec<Witness>,
}

fn yes_no(b: bool) -> Verdict {
    if b {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

/// Canonical probe sequences `(limit, sequence)` for catalog sets.
fn canonical_probes(s: &ConvexSet) -> Vec<(Vector, Vec<Vector>)> {
    let seq = |f: &dyn Fn(f64) -> Vec<f64>| -> Vec<Vector> {
        (1..=PROBE_LENGTH).map(|n| Vector::from_raw(f(n as f64))).collect()
    };
    match s {
        ConvexSet::ConeLift3D => vec![(
            Vector::from_raw(vec![0.0, 0.0, -1.0]),
            seq(&|n| vec![1.0 / n, -1.0 / (4.0 * n * n), -1.0]),
        )],
        ConvexSet::HyperbolaEpigraph => vec![
            (Vector::from_raw(vec![-1.0, 0.0]), seq(&|n| vec![-1.0, -1.0 / n])),
            (Vector::from_raw(vec![0.0, -1.0]), seq(&|n| vec![-1.0 / n, -1.0])),
        ],
        _ => Vec::new(),
    }
}

/// Places `s` in the hierarchy M-decomposable ⇒ approximately M-decomposable ⇒ hyperbolic.
pub fn classify(s: &ConvexSet, tol: &Tolerance, cfg: &SampleConfig) -> Result<ClassificationReport> {
    tol.validate()?;
    cfg.validate()?;
    if let ConvexSet::Truncation(t) = s {
        if !t.compact_part_nonempty() {
            return Ok(ClassificationReport {
                m_decomposable: Verdict::Unknown,
                approx_m_decomposable: Verdict::Unknown,
                hyperbolic: Verdict::Unknown,
                continuous_set: Verdict::Unknown,
                approx_basis: ApproxBasis::Undetermined,
                witnesses: vec![Witness::EmptyTruncation {
                    radius: t.radius(),
                    distance: t.base_distance(),
                }],
            });
        }
    }
    let domain = s.domain_descriptor();
    let cone = s.recession_cone();
    let mut witnesses = Vec::new();

    let hyperbolic = yes_no(domain.is_closed);
    if !domain.is_closed && s.dim() == 2 {
        witnesses.push(Witness::NonClosedDomain {
            direction: Vector::unit(2, 0),
        });
    }
    match s {
        ConvexSet::HyperbolaEpigraph => witnesses.push(Witness::CompactTranslate {
            translate: Vector::zeros(2),
        }),
        ConvexSet::ConeLift3D => witnesses.push(Witness::CompactTranslate {
            translate: Vector::from_raw(vec![0.0, 0.0, -1.0]),
        }),
        _ => {}
    }

    let m_decomposable = match s {
        ConvexSet::HPolyhedron(_) | ConvexSet::VPolyhedron(_) | ConvexSet::Truncation(_) => Verdict::Yes,
        _ => Verdict::No,
    };

    let (approx, basis) = if hyperbolic == Verdict::No {
        (Verdict::No, ApproxBasis::NotHyperbolic)
    } else if m_decomposable == Verdict::Yes {
        witnesses.push(Witness::ImpliedByMotzkinDecomposition);
        if cone.is_polyhedral() {
            witnesses.push(Witness::PolyhedralRecessionCone);
            (Verdict::Yes, ApproxBasis::PolyhedralShortcut)
        } else {
            (Verdict::Yes, ApproxBasis::ImpliedByMotzkin)
        }
    } else if cone.is_polyhedral() {
        witnesses.push(Witness::PolyhedralRecessionCone);
        (Verdict::Yes, ApproxBasis::PolyhedralShortcut)
    } else {
        (Verdict::Unknown, ApproxBasis::Undetermined)
    };

    // Probes run whenever a catalog sequence exists; a jump overrides an
    // undetermined verdict, and passing probes upgrade it.
    let mut approx = approx;
    let mut basis = basis;
    let probes = canonical_probes(s);
    let mut jump = false;
    for (limit, sequence) in &probes {
        match continuity_probe(s, limit, sequence, tol)? {
            ProbeVerdict::Jump {
                limit_of_values,
                value_at_limit,
            } => {
                jump = true;
                let values = sequence
                    .iter()
                    .map(|d| s.support(d, tol).map(|v| v.to_f64()))
                    .collect::<Result<Vec<_>>>()?;
                witnesses.push(Witness::Discontinuity {
                    limit: limit.clone(),
                    sequence: sequence.clone(),
                    values,
                    limit_of_values,
                    value_at_limit,
                });
            }
            ProbeVerdict::Continuous {
                limit_of_values,
                value_at_limit,
            } => {
                witnesses.push(Witness::ContinuityProbed {
                    limit: limit.clone(),
                    limit_of_values,
                    value_at_limit,
                });
            }
            ProbeVerdict::OutsideDomain { .. } => {}
        }
    }
    if approx == Verdict::Unknown && !probes.is_empty() {
        if jump {
            approx = Verdict::No;
        } else {
            approx = Verdict::Yes;
        }
        basis = ApproxBasis::Probed;
    }

    let continuous_set = if domain.is_open_with_blowup() {
        Verdict::Yes
    } else {
        let dirs = sample_unit_sphere(s.dim(), cfg)?;
        let mut inside = 0usize;
        for d in &dirs {
            if domain.contains(d, tol)? {
                inside += 1;
            }
        }
        yes_no(inside == 0 || inside == dirs.len())
    };

    let mut report = ClassificationReport {
        m_decomposable,
        approx_m_decomposable: approx,
        hyperbolic,
        continuous_set,
        approx_basis: basis,
        witnesses,
    };
    enforce_hierarchy(&mut report);
    Ok(report)
}

fn enforce_hierarchy(r: &mut ClassificationReport) {
    if r.m_decomposable == Verdict::Yes {
        r.approx_m_decomposable = Verdict::Yes;
    }
    if r.approx_m_decomposable == Verdict::Yes {
        r.hyperbolic = Verdict::Yes;
    }
    if r.hyperbolic == Verdict::No {
        r.approx_m_decomposable = Verdict::No;
        r.m_decomposable = Verdict::No;
    }
}
