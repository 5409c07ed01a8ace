use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lp::cone_polar_membership_h;
use crate::numerics::{dot, Tolerance, Vector};

/// A nonempty closed convex cone.
#[derive(Clone, Debug, PartialEq)]
pub enum ConeDescriptor {
    /// `{x : Ax ≤ 0}`
    HCone { a: Vec<Vec<f64>> },
    /// `cone(rays)`; `{0}` when there are no rays.
    GeneratedCone { dim: usize, rays: Vec<Vector> },
    /// `{x ∈ ℝ² : x₁ = 0, x₂ ≥ 0}`
    VerticalRay2D,
    /// `{x ∈ ℝ² : x ≥ 0}`
    Orthant2D,
    /// `cl cone(P × {1})` for the unit parabola epigraph `P`:
    /// `{x ∈ ℝ³ : x₃ ≥ 0, x₂ ≥ 0, x₁² ≤ x₂x₃}`
    LiftedCone3D,
}

/// Support of the unit parabola epigraph `{x₂ ≥ x₁²}` scaled by `scale`.
pub(crate) fn parabola_support(scale: f64, d1: f64, d2: f64) -> Option<f64> {
    if d2 < 0.0 {
        Some(-scale * d1 * d1 / (4.0 * d2))
    } else if d1 == 0.0 && d2 == 0.0 {
        Some(0.0)
    } else {
        None
    }
}

/// `rᵀy ≤ ε` for every generator `r`.
pub(crate) fn generated_polar_contains(rays: &[Vector], y: &[f64], tol: &Tolerance) -> bool {
    let scale = y.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    rays.iter().all(|r| {
        let rs = r.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        dot(r, y) <= tol.eps_feasibility * scale * rs
    })
}

/// `σ_P((y₁, y₂)) + y₃ ≤ ε`, the polar of the lifted cone.
pub(crate) fn lifted_polar_contains(y: &[f64], tol: &Tolerance) -> bool {
    match parabola_support(1.0, y[0], y[1]) {
        Some(p) => p + y[2] <= tol.eps_feasibility * (1.0 + y[2].abs()),
        None => false,
    }
}

impl ConeDescriptor {
    pub fn dim(&self) -> usize {
        match self {
            ConeDescriptor::HCone { a } => a.first().map_or(0, |r| r.len()),
            ConeDescriptor::GeneratedCone { dim, .. } => *dim,
            ConeDescriptor::VerticalRay2D | ConeDescriptor::Orthant2D => 2,
            ConeDescriptor::LiftedCone3D => 3,
        }
    }

    /// Finitely generated (equivalently, given by finitely many inequalities).
    pub fn is_polyhedral(&self) -> bool {
        !matches!(self, ConeDescriptor::LiftedCone3D)
    }

    /// Catalog cones carry a closed form and compare symbolically.
    pub fn is_catalog(&self) -> bool {
        matches!(
            self,
            ConeDescriptor::VerticalRay2D | ConeDescriptor::Orthant2D | ConeDescriptor::LiftedCone3D
        )
    }

    fn check_dim(&self, y: &Vector) -> Result<()> {
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: y.dim(),
            });
        }
        Ok(())
    }

    /// Membership of `y` in the polar cone `{y : yᵀx ≤ 0 for all x in the cone}`.
    pub fn polar_membership(&self, y: &Vector, tol: &Tolerance) -> Result<bool> {
        self.check_dim(y)?;
        Ok(match self {
            ConeDescriptor::HCone { a } => cone_polar_membership_h(a, y, tol)?,
            ConeDescriptor::GeneratedCone { rays, .. } => generated_polar_contains(rays, y, tol),
            ConeDescriptor::Orthant2D => y[0] <= 0.0 && y[1] <= 0.0,
            ConeDescriptor::VerticalRay2D => y[1] <= 0.0,
            ConeDescriptor::LiftedCone3D => lifted_polar_contains(y, tol),
        })
    }

    /// Membership of `x` in the cone itself, up to `eps_geometry`.
    pub fn contains(&self, x: &Vector, tol: &Tolerance) -> Result<bool> {
        self.check_dim(x)?;
        let eps = tol.eps_geometry * (1.0 + x.norm());
        Ok(match self {
            ConeDescriptor::HCone { a } => a.iter().all(|row| {
                let rn = row.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
                dot(row, x) / rn <= eps
            }),
            ConeDescriptor::GeneratedCone { rays, .. } => {
                if rays.is_empty() {
                    x.norm() <= eps
                } else {
                    let p = project_onto_generated(rays, x);
                    p.distance(x) <= eps
                }
            }
            ConeDescriptor::Orthant2D => x[0] >= -eps && x[1] >= -eps,
            ConeDescriptor::VerticalRay2D => x[0].abs() <= eps && x[1] >= -eps,
            ConeDescriptor::LiftedCone3D => {
                x[1] >= -eps && x[2] >= -eps && x[0] * x[0] <= x[1].max(0.0) * x[2].max(0.0) + eps * (1.0 + x.norm())
            }
        })
    }

    /// Euclidean projection onto the polar cone, when it has a cheap closed form.
    ///
    /// Uses the Moreau decomposition `y = P_K(y) + P_{K°}(y)` for generated cones
    /// and the generator description `K° = cone(rows of A)` for inequality cones.
    pub fn project_onto_polar(&self, y: &Vector) -> Option<Vector> {
        match self {
            ConeDescriptor::HCone { a } => {
                let gens: Vec<Vector> = a.iter().map(|r| Vector::from_raw(r.clone())).collect();
                Some(project_onto_generated(&gens, y))
            }
            ConeDescriptor::GeneratedCone { rays, .. } => {
                if rays.is_empty() {
                    return Some(y.clone());
                }
                let p = project_onto_generated(rays, y);
                Some(y - &p)
            }
            ConeDescriptor::Orthant2D => Some(Vector::from_raw(vec![y[0].min(0.0), y[1].min(0.0)])),
            ConeDescriptor::VerticalRay2D => Some(Vector::from_raw(vec![y[0], y[1].min(0.0)])),
            ConeDescriptor::LiftedCone3D => None,
        }
    }

    /// A few unit directions of the cone, used to offset boundary samples.
    pub(crate) fn sample_directions(&self) -> Vec<Vector> {
        let unit = |v: Vec<f64>| Vector::from_raw(v).normalized();
        match self {
            ConeDescriptor::GeneratedCone { rays, .. } => rays.iter().filter_map(|r| r.normalized()).collect(),
            ConeDescriptor::HCone { .. } => Vec::new(),
            ConeDescriptor::Orthant2D => vec![Vector::unit(2, 0), Vector::unit(2, 1)],
            ConeDescriptor::VerticalRay2D => vec![Vector::unit(2, 1)],
            ConeDescriptor::LiftedCone3D => [-2.0, -1.0, 0.0, 1.0, 2.0]
                .iter()
                .filter_map(|&s: &f64| unit(vec![s, s * s, 1.0]))
                .chain(std::iter::once(Vector::unit(3, 1)))
                .collect(),
        }
    }
}

/// Projection onto `cone(gens)` via nonnegative least squares.
pub(crate) fn project_onto_generated(gens: &[Vector], y: &Vector) -> Vector {
    if gens.is_empty() {
        return Vector::zeros(y.dim());
    }
    let n = y.dim();
    let k = gens.len();
    let a = DMatrix::from_fn(n, k, |i, j| gens[j][i]);
    let b = DVector::from_column_slice(y);
    let coef = nnls(&a, &b);
    let p = &a * coef;
    Vector::from_raw(p.iter().copied().collect())
}

/// Lawson–Hanson active-set NNLS: `min ‖Ax − b‖` subject to `x ≥ 0`.
pub(crate) fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let k = a.ncols();
    let mut x = DVector::zeros(k);
    let mut passive = vec![false; k];
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0) * b.amax().max(1.0);
    let tol = 1e-12 * scale;
    for _ in 0..(3 * k + 10) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..k)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..k).filter(|&i| passive[i]).collect();
            let sub = a.select_columns(&idx);
            let s_sub = match sub.clone().svd(true, true).solve(b, 1e-13) {
                Ok(s) => s,
                Err(_) => return x,
            };
            let mut s = DVector::zeros(k);
            for (pos, &i) in idx.iter().enumerate() {
                s[i] = s_sub[pos];
            }
            if idx.iter().all(|&i| s[i] > 0.0) {
                x = s;
                break;
            }
            let mut alpha = f64::INFINITY;
            for &i in &idx {
                if s[i] <= 0.0 {
                    let denom = x[i] - s[i];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            x = &x + (&s - &x) * alpha;
            for &i in &idx {
                if x[i] <= 1e-14 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn lifted_polar_examples() {
        let tol = Tolerance::default();
        let c = ConeDescriptor::LiftedCone3D;
        assert!(c.polar_membership(&v(&[1.0, -0.25, -1.0]), &tol).unwrap());
        assert!(!c.polar_membership(&v(&[1.0, -0.25, 0.0]), &tol).unwrap());
    }

    #[test]
    fn origin_in_every_polar() {
        let tol = Tolerance::default();
        assert!(ConeDescriptor::Orthant2D
            .polar_membership(&v(&[0.0, 0.0]), &tol)
            .unwrap());
        assert!(ConeDescriptor::VerticalRay2D
            .polar_membership(&v(&[0.0, 0.0]), &tol)
            .unwrap());
        assert!(ConeDescriptor::LiftedCone3D
            .polar_membership(&v(&[0.0, 0.0, 0.0]), &tol)
            .unwrap());
    }

    #[test]
    fn polar_dimension_checked() {
        let tol = Tolerance::default();
        assert!(ConeDescriptor::Orthant2D
            .polar_membership(&v(&[0.0, 0.0, 1.0]), &tol)
            .is_err());
    }

    #[test]
    fn nnls_projection() {
        let gens = vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])];
        let p = project_onto_generated(&gens, &v(&[2.0, -3.0]));
        assert!((p[0] - 2.0).abs() < 1e-12 && p[1].abs() < 1e-12);
        let p = project_onto_generated(&gens, &v(&[-1.0, -1.0]));
        assert!(p.norm() < 1e-12);
        let p = project_onto_generated(&[v(&[1.0, 1.0])], &v(&[1.0, 0.0]));
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn polar_projection_is_moreau() {
        let tol = Tolerance::default();
        let cone = ConeDescriptor::GeneratedCone {
            dim: 2,
            rays: vec![v(&[1.0, 0.0]), v(&[1.0, 1.0])],
        };
        for y in [v(&[1.0, 2.0]), v(&[-1.0, 0.5]), v(&[0.3, -0.7])] {
            let p = cone.project_onto_polar(&y).unwrap();
            assert!(cone.polar_membership(&p, &tol).unwrap());
            let k = &y - &p;
            assert!(cone.contains(&k, &tol).unwrap());
            assert!(k.dot(&p).abs() < 1e-10);
        }
        let h = ConeDescriptor::HCone {
            a: vec![vec![-1.0, 0.0], vec![0.0, -1.0]],
        };
        let p = h.project_onto_polar(&v(&[0.5, -2.0])).unwrap();
        assert!((p[0]).abs() < 1e-12 && (p[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn lifted_cone_membership() {
        let tol = Tolerance::default();
        let c = ConeDescriptor::LiftedCone3D;
        assert!(c.contains(&v(&[2.0, 4.0, 1.0]), &tol).unwrap());
        assert!(c.contains(&v(&[0.0, 3.0, 0.0]), &tol).unwrap());
        assert!(!c.contains(&v(&[1.0, 3.0, 0.0]), &tol).unwrap());
        assert!(!c.contains(&v(&[0.0, 0.0, -1.0]), &tol).unwrap());
    }
}
