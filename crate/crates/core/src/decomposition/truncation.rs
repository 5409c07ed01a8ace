use crate::error::{Error, Result};
use crate::lp::{solve, LinearProgram, LpOutcome};
use crate::minnorm::nearest_point;
use crate::numerics::{dot, maximize_over_box, Tolerance, Vector};
use crate::sets::curves::{golden_min, parabola_disk_argmax, Piece};
use crate::sets::distance::{hyperbola_inside, parabola_inside, planar_distance, wolfe_gap};
use crate::sets::{ConeDescriptor, ConvexSet, SupportValue};

/// Closed-form data for the planar catalog truncations.
#[derive(Clone, Debug, PartialEq)]
enum Shape {
    /// `C¹ ∩ {x ≥ lo·(1, 1)}`; the arc runs over `s ∈ [lo, hi]` with `lo·hi = 1`.
    Hyperbola {
        lo: f64,
        hi: f64,
    },
    /// `{x₂ ≥ x₁²/alpha, |x₁| ≤ half_width}`.
    Parabola {
        alpha: f64,
        half_width: f64,
    },
    General,
}

/// `C_r = (C ∩ rB) + rec C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation {
    base: ConvexSet,
    radius: f64,
    base_distance: f64,
    shape: Shape,
}

/// Builds the truncation of radius `r`. Emptiness is recorded, not rejected.
pub fn truncate(s: &ConvexSet, r: f64, tol: &Tolerance) -> Result<Truncation> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "truncation radius must be positive, got {r}"
        )));
    }
    if matches!(s, ConvexSet::Truncation(_)) {
        return Err(Error::NestedTruncation);
    }
    let base_distance = s.distance_to_set(&Vector::zeros(s.dim()), tol)?;
    let shape = match s {
        ConvexSet::HyperbolaEpigraph => {
            let r2 = r * r;
            let lo = (2.0 / (r2 + (r2 * r2 - 4.0).max(0.0).sqrt())).sqrt().min(1.0);
            Shape::Hyperbola { lo, hi: 1.0 / lo }
        }
        ConvexSet::ParabolaEpigraph { scale } => {
            let q = (1.0 + 4.0 * r * r / (scale * scale)).sqrt();
            Shape::Parabola {
                alpha: *scale,
                half_width: (2.0 * r * r / (1.0 + q)).sqrt(),
            }
        }
        _ => Shape::General,
    };
    Ok(Truncation {
        base: s.clone(),
        radius: r,
        base_distance,
        shape,
    })
}

impl Truncation {
    pub fn base(&self) -> &ConvexSet {
        &self.base
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Distance from the origin to the base set.
    pub fn base_distance(&self) -> f64 {
        self.base_distance
    }

    pub fn compact_part_nonempty(&self) -> bool {
        self.base_distance <= self.radius * (1.0 + 1e-12) + 1e-12
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.compact_part_nonempty() {
            Ok(())
        } else {
            Err(Error::EmptyTruncation {
                radius: self.radius,
                distance: self.base_distance,
            })
        }
    }

    /// Boundary pieces for the planar catalog truncations.
    pub(crate) fn pieces(&self) -> Option<Vec<Piece>> {
        match self.shape {
            Shape::Hyperbola { lo, hi } => Some(vec![
                Piece::Ray {
                    origin: [lo, 1.0 / lo],
                    dir: [0.0, 1.0],
                },
                Piece::Hyperbola { lo, hi },
                Piece::Ray {
                    origin: [hi, 1.0 / hi],
                    dir: [1.0, 0.0],
                },
            ]),
            Shape::Parabola { alpha, half_width: s } => Some(vec![
                Piece::Ray {
                    origin: [-s, s * s / alpha],
                    dir: [0.0, 1.0],
                },
                Piece::Parabola { alpha, lo: -s, hi: s },
                Piece::Ray {
                    origin: [s, s * s / alpha],
                    dir: [0.0, 1.0],
                },
            ]),
            Shape::General => None,
        }
    }

    /// Exact inside test where a closed form exists; `false` otherwise.
    pub(crate) fn contains_exact(&self, x: &[f64]) -> Result<bool> {
        self.require_nonempty()?;
        Ok(match self.shape {
            Shape::Hyperbola { lo, hi } => hyperbola_inside(x) && x[0] >= lo && x[1] >= 1.0 / hi,
            Shape::Parabola { alpha, half_width } => parabola_inside(alpha, x) && x[0].abs() <= half_width,
            Shape::General => false,
        })
    }

    /// `σ_{C_r}(d)`: `+∞` off the polar of the recession cone, `σ_{C ∩ rB}(d)` on it.
    pub fn support(&self, d: &Vector, tol: &Tolerance) -> Result<SupportValue> {
        self.require_nonempty()?;
        self.base.check_dim(d)?;
        if !self.base.recession_cone().polar_membership(d, tol)? {
            return Ok(SupportValue::PlusInfinity);
        }
        if let Shape::Hyperbola { lo, hi } = self.shape {
            let (d1, d2) = (d[0], d[1]);
            let s = if d1 < 0.0 && d2 < 0.0 {
                (d2 / d1).sqrt().clamp(lo, hi)
            } else if d1 < 0.0 {
                lo
            } else {
                hi
            };
            return Ok(SupportValue::Finite(d1 * s + d2 / s));
        }
        Ok(SupportValue::Finite(self.compact_argmax(d, tol)?.1))
    }

    /// A maximizer of `dᵀx` over the compact part `C ∩ rB`, for any `d`.
    pub(crate) fn compact_argmax(&self, d: &[f64], tol: &Tolerance) -> Result<(Vector, f64)> {
        self.require_nonempty()?;
        let r = self.radius;
        let finish = |p: Vec<f64>| {
            let v = dot(&p, d);
            (Vector::from_raw(p), v)
        };
        match (&self.shape, &self.base) {
            (Shape::Hyperbola { lo, hi }, _) => Ok(finish(hyperbola_disk_argmax(*lo, *hi, r, [d[0], d[1]]).to_vec())),
            (Shape::Parabola { alpha, .. }, _) => Ok(finish(parabola_disk_argmax(*alpha, r, [d[0], d[1]]).to_vec())),
            (_, ConvexSet::HPolyhedron(h)) => {
                let n = h.dim();
                let map: Vec<Vec<f64>> = (0..n).map(|i| Vector::unit(n, i).into_inner()).collect();
                kelley(h.matrix().to_vec(), h.rhs().to_vec(), &map, d, r, tol)
            }
            (_, ConvexSet::VPolyhedron(v)) => {
                let rays: Vec<Vector> = v.rays().iter().filter_map(|x| x.normalized()).collect();
                let (k, p) = (v.vertices().len(), rays.len());
                let n = v.dim();
                let map: Vec<Vec<f64>> = (0..n)
                    .map(|i| v.vertices().iter().chain(rays.iter()).map(|g| g[i]).collect())
                    .collect();
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                for j in 0..k + p {
                    let mut row = vec![0.0; k + p];
                    row[j] = -1.0;
                    rows.push(row);
                    rhs.push(0.0);
                }
                let sum: Vec<f64> = (0..k + p).map(|j| if j < k { 1.0 } else { 0.0 }).collect();
                rows.push(sum.clone());
                rhs.push(1.0);
                rows.push(sum.iter().map(|v| -v).collect());
                rhs.push(-1.0);
                kelley(rows, rhs, &map, d, r, tol)
            }
            (_, ConvexSet::ConeLift3D) => Ok(finish(cone_lift_ball_argmax(r, d))),
            _ => Err(Error::Unsupported(format!("truncation of {}", self.base.kind()))),
        }
    }

    /// Euclidean distance from `x` to `C_r`.
    pub fn distance(&self, x: &Vector, tol: &Tolerance) -> Result<f64> {
        self.require_nonempty()?;
        self.base.check_dim(x)?;
        if let Some(pieces) = self.pieces() {
            return Ok(planar_distance(self.contains_exact(x)?, &pieces, x));
        }
        let cone = self.base.recession_cone();
        let gens: Vec<Vector> = match &cone {
            ConeDescriptor::GeneratedCone { rays, .. } => rays.iter().filter_map(|r| r.normalized()).collect(),
            _ => Vec::new(),
        };
        let run = |m: f64| -> Result<f64> {
            let oracle = |dir: &[f64]| -> Result<Vector> {
                let (k, _) = self.compact_argmax(dir, tol)?;
                let c = cone_box_argmax(&cone, &gens, dir, tol)?;
                Ok(k.axpy(m, &c))
            };
            nearest_point(x, oracle, wolfe_gap(tol), 4000)
        };
        let mut m = 2.0 * x.norm() + 2.0 * self.radius + 1.0;
        let mut current = run(m)?;
        for _ in 0..20 {
            let next = run(2.0 * m)?;
            if next >= current - 1e-12 * (1.0 + current) {
                return Ok(next.min(current));
            }
            current = next;
            m *= 2.0;
        }
        Ok(current)
    }
}

/// Maximizer of `dᵀx` over `C¹ ∩ rB`, whose boundary is the hyperbola arc
/// `s ∈ [lo, hi]` together with a circular arc.
fn hyperbola_disk_argmax(lo: f64, hi: f64, r: f64, d: [f64; 2]) -> [f64; 2] {
    let mut cands = vec![[lo, 1.0 / lo], [hi, 1.0 / hi]];
    if d[0] != 0.0 && d[1] / d[0] > 0.0 {
        let s = (d[1] / d[0]).sqrt();
        if s > lo && s < hi {
            cands.push([s, 1.0 / s]);
        }
    }
    let n = d[0].hypot(d[1]);
    if n > 0.0 {
        let c = [r * d[0] / n, r * d[1] / n];
        if hyperbola_inside(&c) {
            cands.push(c);
        }
    }
    cands
        .into_iter()
        .max_by(|p, q| (d[0] * p[0] + d[1] * p[1]).total_cmp(&(d[0] * q[0] + d[1] * q[1])))
        .expect("candidates are nonempty")
}

/// Maximizer over `C ∩ rB` for the cone lift, one slice `x₃ = t` at a time:
/// the slice is `(1 + t)·P ∩ √(r² − t²)·B`.
fn cone_lift_ball_argmax(r: f64, d: &[f64]) -> Vec<f64> {
    let slice = |t: f64| {
        let rho = (r * r - t * t).max(0.0).sqrt();
        parabola_disk_argmax(1.0 + t, rho, [d[0], d[1]])
    };
    let value = |t: f64| {
        let p = slice(t);
        d[0] * p[0] + d[1] * p[1] + d[2] * t
    };
    let (t, _) = golden_min(|t| -value(t), 0.0, r);
    let p = slice(t);
    vec![p[0], p[1], t]
}

/// Maximizer of `dᵀc` over a compact piece of the recession cone that contains
/// the cone's part of the unit ball up to a bounded factor.
fn cone_box_argmax(cone: &ConeDescriptor, gens: &[Vector], d: &[f64], tol: &Tolerance) -> Result<Vector> {
    let n = cone.dim();
    Ok(match cone {
        ConeDescriptor::HCone { a } => {
            let mut rows = a.clone();
            let mut rhs = vec![0.0; a.len()];
            for i in 0..n {
                let mut row = vec![0.0; n];
                row[i] = 1.0;
                rows.push(row.clone());
                rhs.push(1.0);
                row[i] = -1.0;
                rows.push(row);
                rhs.push(1.0);
            }
            match solve(&LinearProgram::new(d.to_vec(), rows, rhs)?, tol)? {
                LpOutcome::Optimal { point, .. } => point,
                _ => Vector::zeros(n),
            }
        }
        ConeDescriptor::GeneratedCone { .. } => gens
            .iter()
            .filter(|g| dot(g, d) > 0.0)
            .max_by(|p, q| dot(p, d).total_cmp(&dot(q, d)))
            .cloned()
            .unwrap_or_else(|| Vector::zeros(n)),
        ConeDescriptor::Orthant2D => {
            Vector::from_raw(vec![f64::from(u8::from(d[0] > 0.0)), f64::from(u8::from(d[1] > 0.0))])
        }
        ConeDescriptor::VerticalRay2D => Vector::from_raw(vec![0.0, f64::from(u8::from(d[1] > 0.0))]),
        ConeDescriptor::LiftedCone3D => {
            let sign = if d[0] >= 0.0 { 1.0 } else { -1.0 };
            let f = |c: &[f64]| sign * d[0] * (c[0] * c[1]).sqrt() + d[1] * c[0] + d[2] * c[1];
            let (c, _) = maximize_over_box(f, &Vector::zeros(2), &Vector::from_raw(vec![1.0, 1.0]), tol)?;
            Vector::from_raw(vec![sign * (c[0] * c[1]).sqrt(), c[0], c[1]])
        }
    })
}

/// Kelley cutting planes for `max dᵀ(Mz)` over `{z : rows·z ≤ rhs, ‖Mz‖ ≤ r}`.
///
/// The ball starts as its bounding box; each round adds the tangent half-space
/// at the normalized optimum until the optimum lies in the ball.
fn kelley(
    mut rows: Vec<Vec<f64>>,
    mut rhs: Vec<f64>,
    map: &[Vec<f64>],
    d: &[f64],
    r: f64,
    tol: &Tolerance,
) -> Result<(Vector, f64)> {
    let m = map[0].len();
    let objective: Vec<f64> = (0..m)
        .map(|j| map.iter().zip(d).map(|(row, di)| row[j] * di).sum())
        .collect();
    for row in map {
        rows.push(row.clone());
        rhs.push(r);
        rows.push(row.iter().map(|v| -v).collect());
        rhs.push(r);
    }
    for round in 0..=tol.max_refinement_rounds {
        let lp = LinearProgram::new(objective.clone(), rows.clone(), rhs.clone())?;
        let z = match solve(&lp, tol)? {
            LpOutcome::Optimal { point, .. } => point,
            LpOutcome::Infeasible => return Err(Error::EmptySet),
            LpOutcome::Unbounded { .. } => {
                return Err(Error::Unsupported("bounded cutting-plane LP reported unbounded".into()))
            }
        };
        let x: Vec<f64> = map.iter().map(|row| dot(row, &z)).collect();
        let norm = dot(&x, &x).sqrt();
        if norm <= r * (1.0 + tol.eps_geometry) || round == tol.max_refinement_rounds {
            let value = dot(&x, d);
            return Ok((Vector::from_raw(x), value));
        }
        let cut: Vec<f64> = (0..m)
            .map(|j| map.iter().zip(&x).map(|(row, xi)| row[j] * xi / norm).sum())
            .collect();
        rows.push(cut);
        rhs.push(r);
    }
    unreachable!("the final round always returns")
}
