//! Hausdorff distance between closed convex sets through their support functions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{refine_directions, sample_unit_sphere, SampleConfig, Tolerance, Vector};
use crate::sets::{ConvexSet, DomainComparison, DomainDescriptor, SupportValue, VPolyhedron};

/// Divergence threshold used by [`hausdorff_support_estimate`].
pub const DEFAULT_DIVERGENCE_THRESHOLD: f64 = 1e3;

const BISECTION_STEPS: usize = 50;
const BOUNDARY_PAIRS: usize = 256;
const REFINE_CENTERS: usize = 8;

/// How domain equality was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainCheck {
    Symbolic,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HausdorffEstimate {
    /// Largest support gap found; the true distance is at least this.
    Finite {
        lower_bound: f64,
        argmax_direction: Vector,
        samples_used: usize,
        converged: bool,
        domain_check: DomainCheck,
    },
    /// A unit direction in exactly one of the two support domains.
    InfiniteDomainMismatch {
        witness_direction: Vector,
        domain_check: DomainCheck,
    },
    /// Domains agree on every sample, but the gap grew past the threshold.
    DivergentEvidence {
        threshold_exceeded: f64,
        observed: f64,
        direction: Vector,
        samples_used: usize,
    },
}

impl HausdorffEstimate {
    pub fn finite_value(&self) -> Option<f64> {
        match self {
            HausdorffEstimate::Finite { lower_bound, .. } => Some(*lower_bound),
            _ => None,
        }
    }
}

/// Estimates `d_H(s1, s2)` with the default divergence threshold.
pub fn hausdorff_support_estimate(
    s1: &ConvexSet,
    s2: &ConvexSet,
    tol: &Tolerance,
    cfg: &SampleConfig,
) -> Result<HausdorffEstimate> {
    hausdorff_support_estimate_with_threshold(s1, s2, tol, cfg, DEFAULT_DIVERGENCE_THRESHOLD)
}

pub fn hausdorff_support_estimate_with_threshold(
    s1: &ConvexSet,
    s2: &ConvexSet,
    tol: &Tolerance,
    cfg: &SampleConfig,
    threshold: f64,
) -> Result<HausdorffEstimate> {
    estimate(s1, s2, tol, cfg, threshold, None)
}

fn check_operands(s1: &ConvexSet, s2: &ConvexSet) -> Result<()> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch {
            expected: s1.dim(),
            found: s2.dim(),
        });
    }
    for s in [s1, s2] {
        if let ConvexSet::Truncation(t) = s {
            t.require_nonempty()?;
        }
    }
    Ok(())
}

/// Compares the two domains, symbolically when possible.
fn compare_domains(
    d1: &DomainDescriptor,
    d2: &DomainDescriptor,
    dirs: &[Vector],
    tol: &Tolerance,
) -> Result<(Option<Vector>, DomainCheck)> {
    match d1.symbolic_comparison(d2) {
        Some(DomainComparison::Equal) => Ok((None, DomainCheck::Symbolic)),
        Some(DomainComparison::Mismatch(w)) => Ok((Some(w), DomainCheck::Symbolic)),
        None => {
            for d in dirs {
                if d1.contains(d, tol)? != d2.contains(d, tol)? {
                    return Ok((Some(d.clone()), DomainCheck::Sampled));
                }
            }
            Ok((None, DomainCheck::Sampled))
        }
    }
}

struct Search<'a> {
    s1: &'a ConvexSet,
    s2: &'a ConvexSet,
    domain: DomainDescriptor,
    tol: &'a Tolerance,
    evaluated: Vec<(f64, Vector)>,
    best: f64,
    best_dir: Option<Vector>,
}

impl Search<'_> {
    fn gap(&mut self, d: &Vector) -> Result<Option<f64>> {
        if !self.domain.contains(d, self.tol)? {
            return Ok(None);
        }
        let (a, b) = (self.s1.support(d, self.tol)?, self.s2.support(d, self.tol)?);
        let g = match (a, b) {
            (SupportValue::Finite(x), SupportValue::Finite(y)) => (x - y).abs(),
            _ => return Ok(None),
        };
        self.evaluated.push((g, d.clone()));
        if g > self.best || self.best_dir.is_none() {
            self.best = g;
            self.best_dir = Some(d.clone());
        }
        Ok(Some(g))
    }

    /// Walks from an inside direction towards an outside one, keeping the
    /// last inside point, which approaches the relative boundary of the domain.
    fn bisect(&mut self, inside: &Vector, outside: &Vector) -> Result<()> {
        let mut lo = inside.clone();
        let mut hi = outside.clone();
        for _ in 0..BISECTION_STEPS {
            let Some(mid) = (&lo + &hi).normalized() else { break };
            if self.domain.contains(&mid, self.tol)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.gap(&lo)?;
        Ok(())
    }

    fn project_and_eval(&mut self, d: &Vector) -> Result<()> {
        if let Some(p) = self.domain.project(d).and_then(|p| p.normalized()) {
            self.gap(&p)?;
        }
        Ok(())
    }
}

fn sphere_spacing(dim: usize, count: usize) -> f64 {
    let area = match dim {
        1 => 2.0,
        2 => std::f64::consts::TAU,
        _ => 4.0 * std::f64::consts::PI,
    };
    (area / count as f64).powf(1.0 / (dim.max(2) - 1) as f64).min(1.0)
}

/// The estimator; `stop_above` returns early once the gap provably exceeds it.
pub(crate) fn estimate(
    s1: &ConvexSet,
    s2: &ConvexSet,
    tol: &Tolerance,
    cfg: &SampleConfig,
    threshold: f64,
    stop_above: Option<f64>,
) -> Result<HausdorffEstimate> {
    tol.validate()?;
    cfg.validate()?;
    check_operands(s1, s2)?;
    let dim = s1.dim();
    let dirs = sample_unit_sphere(dim, cfg)?;
    let dom1 = s1.domain_descriptor();
    let dom2 = s2.domain_descriptor();
    let (mismatch, domain_check) = compare_domains(&dom1, &dom2, &dirs, tol)?;
    if let Some(w) = mismatch {
        return Ok(HausdorffEstimate::InfiniteDomainMismatch {
            witness_direction: w,
            domain_check,
        });
    }

    let mut search = Search {
        s1,
        s2,
        domain: dom1,
        tol,
        evaluated: Vec::new(),
        best: 0.0,
        best_dir: None,
    };
    let exceeded = |s: &Search| s.best > threshold || stop_above.is_some_and(|c| s.best > c);
    let divergent = |s: &Search| HausdorffEstimate::DivergentEvidence {
        threshold_exceeded: threshold,
        observed: s.best,
        direction: s.best_dir.clone().unwrap_or_else(|| Vector::zeros(dim)),
        samples_used: s.evaluated.len(),
    };
    let finish = |s: &Search, converged: bool| {
        if s.best > threshold {
            return divergent(s);
        }
        HausdorffEstimate::Finite {
            lower_bound: s.best,
            argmax_direction: s.best_dir.clone().unwrap_or_else(|| Vector::zeros(dim)),
            samples_used: s.evaluated.len(),
            converged,
            domain_check,
        }
    };

    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for d in &dirs {
        if search.gap(d)?.is_some() {
            inside.push(d.clone());
        } else {
            outside.push(d.clone());
        }
        if exceeded(&search) {
            return Ok(finish(&search, false));
        }
    }
    for d in &outside {
        search.project_and_eval(d)?;
    }
    if !inside.is_empty() && !outside.is_empty() {
        let step = outside.len().div_ceil(BOUNDARY_PAIRS).max(1);
        for u in outside.iter().step_by(step) {
            let v = inside
                .iter()
                .max_by(|a, b| a.dot(u).total_cmp(&b.dot(u)))
                .expect("inside is nonempty")
                .clone();
            search.bisect(&v, u)?;
            if exceeded(&search) {
                return Ok(finish(&search, false));
            }
        }
    }
    if search.best_dir.is_none() {
        // the domain meets the sphere nowhere: it is {0} and both supports vanish there
        return Ok(HausdorffEstimate::Finite {
            lower_bound: 0.0,
            argmax_direction: Vector::zeros(dim),
            samples_used: 0,
            converged: true,
            domain_check,
        });
    }

    let mut history = vec![search.best];
    let mut radius = 2.0 * sphere_spacing(dim, cfg.count);
    let local = SampleConfig {
        count: (cfg.count / 50).max(16),
        ..*cfg
    };
    for round in 0..cfg.refinement_rounds {
        let mut ranked = search.evaluated.clone();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut centers: Vec<Vector> = Vec::new();
        for (_, d) in ranked {
            if centers.len() == REFINE_CENTERS {
                break;
            }
            if centers.iter().all(|c| c.distance(&d) > 1e-12) {
                centers.push(d);
            }
        }
        let round_cfg = SampleConfig {
            seed: cfg.seed.wrapping_add(round as u64 + 1),
            ..local
        };
        for c in &centers {
            for d in refine_directions(c, radius, &round_cfg)? {
                if search.gap(&d)?.is_none() {
                    search.project_and_eval(&d)?;
                    search.bisect(c, &d)?;
                }
                if exceeded(&search) {
                    return Ok(finish(&search, false));
                }
            }
        }
        history.push(search.best);
        radius *= 0.5;
    }
    let converged = history.len() < 3 || {
        let n = history.len();
        (history[n - 1] - history[n - 3]).abs() < tol.eps_classify
    };
    Ok(finish(&search, converged))
}

/// Result of checking `s1 ⊆ s2 + εB` on boundary samples of `s1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionReport {
    pub holds: bool,
    pub worst_point: Vector,
    /// `max dist(x, s2) − ε` over the samples.
    pub worst_excess: f64,
    pub samples_used: usize,
}

pub fn inclusion_check(
    s1: &ConvexSet,
    s2: &ConvexSet,
    eps: f64,
    tol: &Tolerance,
    cfg: &SampleConfig,
) -> Result<InclusionReport> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "inclusion radius must be positive, got {eps}"
        )));
    }
    check_operands(s1, s2)?;
    let points = s1.boundary_samples(tol, cfg)?;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_point = points[0].clone();
    for x in &points {
        let excess = s2.distance_to_set(x, tol)? - eps;
        if excess > worst_excess {
            worst_excess = excess;
            worst_point = x.clone();
        }
    }
    Ok(InclusionReport {
        holds: worst_excess <= tol.eps_geometry,
        worst_point,
        worst_excess,
        samples_used: points.len(),
    })
}

/// Hausdorff distance between two polytopes from vertex-to-set distances.
pub fn brute_force_hausdorff_polytopes(p1: &VPolyhedron, p2: &VPolyhedron, tol: &Tolerance) -> Result<f64> {
    if !p1.rays().is_empty() || !p2.rays().is_empty() {
        return Err(Error::InvalidArgument(
            "brute-force Hausdorff needs polytopes without rays".into(),
        ));
    }
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.dim(),
            found: p2.dim(),
        });
    }
    let one_sided = |a: &VPolyhedron, b: &VPolyhedron| -> Result<f64> {
        let target = ConvexSet::VPolyhedron(b.clone());
        a.vertices()
            .iter()
            .map(|v| target.distance_to_set(v, tol))
            .try_fold(0.0_f64, |m, d| Ok(m.max(d?)))
    };
    Ok(one_sided(p1, p2)?.max(one_sided(p2, p1)?))
}
