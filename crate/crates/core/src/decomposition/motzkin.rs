use crate::error::Result;
use crate::sets::{ConeDescriptor, ConvexSet, VPolyhedron};

/// `C = M + K` with `M` a polytope and `K` the recession cone.
#[derive(Clone, Debug, PartialEq)]
pub struct MotzkinDecomposition {
    pub compact_component: VPolyhedron,
    pub cone: ConeDescriptor,
}

/// A V-description is already a Motzkin decomposition: `M = conv(vertices)`.
pub fn motzkin_decompose(p: &VPolyhedron) -> MotzkinDecomposition {
    MotzkinDecomposition {
        compact_component: VPolyhedron::polytope(p.vertices().to_vec())
            .expect("vertices of a valid V-polyhedron form a polytope"),
        cone: ConeDescriptor::GeneratedCone {
            dim: p.dim(),
            rays: p.rays().to_vec(),
        },
    }
}

impl MotzkinDecomposition {
    /// `M + K` as a set.
    pub fn reconstruct(&self) -> Result<ConvexSet> {
        let rays = match &self.cone {
            ConeDescriptor::GeneratedCone { rays, .. } => rays.clone(),
            _ => Vec::new(),
        };
        ConvexSet::v_polyhedron(self.compact_component.vertices().to_vec(), rays)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Tolerance, Vector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn orthant_from_origin() {
        let p = VPolyhedron::new(vec![v(&[0.0, 0.0])], vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        let m = motzkin_decompose(&p);
        assert_eq!(m.compact_component.vertices(), &[v(&[0.0, 0.0])]);
        let tol = Tolerance::default();
        for y in [[-1.0, -1.0], [0.0, -1.0], [-2.0, 0.0]] {
            assert!(m.cone.polar_membership(&v(&y), &tol).unwrap());
        }
        assert!(!m.cone.polar_membership(&v(&[1.0, -1.0]), &tol).unwrap());
    }

    #[test]
    fn polytope_has_trivial_cone() {
        let p = VPolyhedron::polytope(vec![v(&[0.0, 0.0]), v(&[1.0, 1.0])]).unwrap();
        let m = motzkin_decompose(&p);
        assert_eq!(m.compact_component, p);
        assert_eq!(m.cone, ConeDescriptor::GeneratedCone { dim: 2, rays: vec![] });
    }

    #[test]
    fn sampled_reconstruction() {
        let tol = Tolerance::default();
        let p = VPolyhedron::new(vec![v(&[0.0, 1.0]), v(&[1.0, 0.0])], vec![v(&[1.0, 1.0])]).unwrap();
        let rebuilt = motzkin_decompose(&p).reconstruct().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let lam: f64 = rng.random();
            let mu: f64 = rng.random_range(0.0..10.0);
            let x = v(&[lam + mu, 1.0 - lam + mu]);
            assert!(rebuilt.membership(&x, &tol).unwrap());
        }
        // outside points: below the line x₁ + x₂ = 1, or off the strip |x₁ − x₂| ≤ 1
        for _ in 0..20 {
            let a: f64 = rng.random_range(-5.0..5.0);
            let below = v(&[a, -a + 1.0 - rng.random_range(0.01..2.0)]);
            assert!(!rebuilt.membership(&below, &tol).unwrap());
            let c: f64 = rng.random_range(0.0..5.0);
            let off = v(&[c + 1.0 + rng.random_range(0.01..2.0), c]);
            assert!(!rebuilt.membership(&off, &tol).unwrap());
        }
    }
}
