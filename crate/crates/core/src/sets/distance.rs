use crate::error::{Error, Result};
use crate::lp::argmax_h_polyhedron;
use crate::minnorm::nearest_point;
use crate::numerics::{dot, Tolerance, Vector};

use super::curves::{dist2, golden_min, nearest_on_pieces, Piece};
use super::{ConvexSet, HPolyhedron, VPolyhedron};

const RAY_BOUND_DOUBLINGS: u32 = 20;

pub(crate) fn hyperbola_inside(x: &[f64]) -> bool {
    x[0] >= 0.0 && x[0] * x[1] >= 1.0
}

pub(crate) fn parabola_inside(alpha: f64, x: &[f64]) -> bool {
    alpha * x[1] >= x[0] * x[0]
}

pub(crate) fn cone_lift_inside(x: &[f64]) -> bool {
    x[2] >= 0.0 && x[1] >= 0.0 && x[0] * x[0] <= x[1] * (1.0 + x[2])
}

/// Distance to a planar set given its exact inside test and boundary pieces.
pub(crate) fn planar_distance(inside: bool, pieces: &[Piece], x: &[f64]) -> f64 {
    if inside {
        return 0.0;
    }
    let p = [x[0], x[1]];
    dist2(nearest_on_pieces(pieces, p), p).sqrt()
}

fn full_parabola(alpha: f64) -> [Piece; 1] {
    [Piece::Parabola {
        alpha,
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    }]
}

pub(crate) fn parabola_distance(alpha: f64, x: &[f64]) -> f64 {
    planar_distance(parabola_inside(alpha, x), &full_parabola(alpha), x)
}

fn cone_lift_distance(x: &[f64]) -> f64 {
    if cone_lift_inside(x) {
        return 0.0;
    }
    let phi = |t: f64| {
        let d = parabola_distance(1.0 + t, &x[..2]);
        (x[2] - t).powi(2) + d * d
    };
    let hi = x[2].max(0.0) + (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() + 1.0;
    golden_min(phi, 0.0, hi).1.max(0.0).sqrt()
}

pub(crate) fn wolfe_gap(tol: &Tolerance) -> f64 {
    tol.eps_geometry * 1e-3
}

fn h_distance(h: &HPolyhedron, x: &Vector, tol: &Tolerance) -> Result<f64> {
    if h_inside(h, x, 0.0) {
        return Ok(0.0);
    }
    let m = h.feasible_point().distance(x) + 1.0;
    let n = x.dim();
    let mut a = h.matrix().to_vec();
    let mut b = h.rhs().to_vec();
    for i in 0..n {
        let mut row = vec![0.0; n];
        row[i] = 1.0;
        a.push(row.clone());
        b.push(x[i] + m);
        row[i] = -1.0;
        a.push(row);
        b.push(m - x[i]);
    }
    let oracle = |d: &[f64]| -> Result<Vector> {
        argmax_h_polyhedron(&a, &b, d, tol)?
            .map(|(p, _)| p)
            .ok_or_else(|| Error::Unsupported("bounded LP reported unbounded".into()))
    };
    nearest_point(x, oracle, wolfe_gap(tol), 2000)
}

fn h_inside(h: &HPolyhedron, x: &[f64], slack: f64) -> bool {
    h.matrix().iter().zip(h.rhs()).all(|(row, bi)| {
        let rn = dot(row, row).sqrt();
        dot(row, x) - bi <= slack * rn
    })
}

/// Distance to `conv(vertices) + cone(rays)`, bounding the ray coefficients by
/// `M` and doubling `M` until the distance stops decreasing. Distance is convex
/// and non-increasing in `M`, so a stall means the bound is inactive.
fn v_distance(v: &VPolyhedron, x: &Vector, tol: &Tolerance) -> Result<f64> {
    let rays: Vec<Vector> = v.rays().iter().filter_map(|r| r.normalized()).collect();
    let verts = v.vertices();
    let run = |m: f64| -> Result<f64> {
        let oracle = |d: &[f64]| -> Result<Vector> {
            let best = verts
                .iter()
                .max_by(|p, q| dot(p, d).total_cmp(&dot(q, d)))
                .expect("nonempty vertex list");
            let ray = rays
                .iter()
                .filter(|r| dot(r, d) > 0.0)
                .max_by(|p, q| dot(p, d).total_cmp(&dot(q, d)));
            Ok(match ray {
                Some(r) => best.axpy(m, r),
                None => best.clone(),
            })
        };
        nearest_point(x, oracle, wolfe_gap(tol), 4000)
    };
    if rays.is_empty() {
        return run(0.0);
    }
    let reach = 1.0 + x.norm() + verts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let mut m = 1.0;
    let mut current = run(m)?;
    let cap = reach * f64::from(1u32 << RAY_BOUND_DOUBLINGS);
    while m <= cap {
        let next = run(2.0 * m)?;
        if next >= current - 1e-12 * (1.0 + current) {
            return Ok(next.min(current));
        }
        current = next;
        m *= 2.0;
    }
    Err(Error::Unsupported(format!(
        "ray coefficient bound exceeded {cap:e} without stabilizing"
    )))
}

impl ConvexSet {
    /// Euclidean distance from `x` to the set.
    pub fn distance_to_set(&self, x: &Vector, tol: &Tolerance) -> Result<f64> {
        self.check_dim(x)?;
        match self {
            ConvexSet::HPolyhedron(h) => h_distance(h, x, tol),
            ConvexSet::VPolyhedron(v) => v_distance(v, x, tol),
            ConvexSet::HyperbolaEpigraph => Ok(planar_distance(
                hyperbola_inside(x),
                &[Piece::Hyperbola {
                    lo: 0.0,
                    hi: f64::INFINITY,
                }],
                x,
            )),
            ConvexSet::ParabolaEpigraph { scale } => Ok(parabola_distance(*scale, x)),
            ConvexSet::ConeLift3D => Ok(cone_lift_distance(x)),
            ConvexSet::Truncation(t) => t.distance(x, tol),
        }
    }

    /// Whether `x` lies within `eps_geometry` of the set.
    pub fn membership(&self, x: &Vector, tol: &Tolerance) -> Result<bool> {
        self.check_dim(x)?;
        let exact = match self {
            ConvexSet::HPolyhedron(h) => return Ok(h_inside(h, x, tol.eps_geometry)),
            ConvexSet::VPolyhedron(_) => false,
            ConvexSet::HyperbolaEpigraph => hyperbola_inside(x),
            ConvexSet::ParabolaEpigraph { scale } => parabola_inside(*scale, x),
            ConvexSet::ConeLift3D => cone_lift_inside(x),
            ConvexSet::Truncation(t) => t.contains_exact(x)?,
        };
        Ok(exact || self.distance_to_set(x, tol)? <= tol.eps_geometry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn membership_examples() {
        let tol = Tolerance::default();
        assert!(ConvexSet::HyperbolaEpigraph.membership(&v(&[1.0, 1.0]), &tol).unwrap());
        assert!(!ConvexSet::HyperbolaEpigraph.membership(&v(&[1.0, 0.5]), &tol).unwrap());
        assert!(ConvexSet::ConeLift3D.membership(&v(&[2.0, 4.0, 0.0]), &tol).unwrap());
        assert!(ConvexSet::HyperbolaEpigraph.membership(&v(&[1.0, 0.5]), &tol).is_ok());
        assert!(ConvexSet::HyperbolaEpigraph.membership(&v(&[1.0]), &tol).is_err());
    }

    #[test]
    fn parabola_point_below() {
        let tol = Tolerance::default();
        let d = ConvexSet::parabola(1.0)
            .unwrap()
            .distance_to_set(&v(&[0.0, -1.0]), &tol)
            .unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-12);
        let dense = (0..=40000)
            .map(|k| -2.0 + 4.0 * k as f64 / 40000.0)
            .map(|s| (s * s + (s * s + 1.0).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert_abs_diff_eq!(d, dense, epsilon = 1e-8);
    }

    #[test]
    fn square_distances() {
        let tol = Tolerance::default();
        let h = ConvexSet::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(h.distance_to_set(&v(&[2.0, 0.5]), &tol).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(
            h.distance_to_set(&v(&[2.0, 2.0]), &tol).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-9
        );
        let sq = ConvexSet::v_polyhedron(
            vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[1.0, 1.0]), v(&[0.0, 1.0])],
            vec![],
        )
        .unwrap();
        assert_abs_diff_eq!(sq.distance_to_set(&v(&[2.0, 0.5]), &tol).unwrap(), 1.0, epsilon = 1e-9);
        assert_eq!(sq.distance_to_set(&v(&[0.5, 0.5]), &tol).unwrap(), 0.0);
    }

    #[test]
    fn v_polyhedron_with_rays() {
        let tol = Tolerance::default();
        let s = ConvexSet::v_polyhedron(vec![v(&[0.0, 0.0])], vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        assert!(s.distance_to_set(&v(&[50.0, 30.0]), &tol).unwrap() < 1e-6);
        assert_abs_diff_eq!(s.distance_to_set(&v(&[40.0, -3.0]), &tol).unwrap(), 3.0, epsilon = 1e-6);
    }

    #[test]
    fn hyperbola_origin_distance() {
        let tol = Tolerance::default();
        let d = ConvexSet::HyperbolaEpigraph
            .distance_to_set(&v(&[0.0, 0.0]), &tol)
            .unwrap();
        assert_abs_diff_eq!(d, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn cone_lift_distance_below() {
        let tol = Tolerance::default();
        let d = ConvexSet::ConeLift3D
            .distance_to_set(&v(&[0.0, 0.0, -2.0]), &tol)
            .unwrap();
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-9);
        // (0, -1, 5): the nearest point is on the face x₂ = 0, so the distance is 1
        let d = ConvexSet::ConeLift3D
            .distance_to_set(&v(&[0.0, -1.0, 5.0]), &tol)
            .unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-9);
    }
}
