mod common;

use proptest::prelude::*;

use convex_trunc::decomposition::Witness;
use convex_trunc::sets::VPolyhedron;
use convex_trunc::{
    brute_force_hausdorff_polytopes, classify, hausdorff_support_estimate, motzkin_decompose, radius_for_epsilon,
    ConvexSet, RadiusSearchResult, SampleConfig, SupportValue, Tolerance, Vector, Verdict,
};

fn v(x: &[f64]) -> Vector {
    Vector::from_slice(x).unwrap()
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn cfg(count: usize) -> SampleConfig {
    SampleConfig {
        count,
        refinement_rounds: 3,
        ..SampleConfig::default()
    }
}

fn catalog() -> Vec<ConvexSet> {
    let t = tol();
    vec![
        ConvexSet::HyperbolaEpigraph,
        ConvexSet::parabola(1.0).unwrap(),
        ConvexSet::parabola(3.0).unwrap(),
        ConvexSet::ConeLift3D,
        ConvexSet::HyperbolaEpigraph.truncated(2.5, &t).unwrap(),
        ConvexSet::parabola(1.0).unwrap().truncated(3.0, &t).unwrap(),
        ConvexSet::ConeLift3D.truncated(4.0, &t).unwrap(),
        ConvexSet::axis_box(&[-1.0, 0.5], &[2.0, 3.0]).unwrap(),
        ConvexSet::v_polyhedron(
            vec![v(&[0.0, 0.0]), v(&[1.0, 2.0])],
            vec![v(&[1.0, 0.0]), v(&[1.0, 1.0])],
        )
        .unwrap(),
        ConvexSet::axis_box(&[-2.0, -2.0], &[2.0, 2.0])
            .unwrap()
            .truncated(1.5, &t)
            .unwrap(),
    ]
}

fn direction(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim)
}

fn finite(s: &ConvexSet, d: &[f64]) -> Option<f64> {
    s.support(&v(d), &tol()).unwrap().finite()
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn support_is_positively_homogeneous(idx in 0usize..10, d in direction(3), lambda in 0.05f64..20.0) {
        let sets = catalog();
        let s = &sets[idx];
        let d = &d[..s.dim()];
        let scaled: Vec<f64> = d.iter().map(|x| x * lambda).collect();
        match (finite(s, d), finite(s, &scaled)) {
            (Some(a), Some(b)) => prop_assert!((b - lambda * a).abs() <= 1e-6 * (1.0 + (lambda * a).abs()), "{a} {b}"),
            (None, None) => {}
            other => prop_assert!(false, "finiteness changed under scaling: {other:?}"),
        }
    }

    #[test]
    fn support_is_subadditive(idx in 0usize..10, d in direction(3), e in direction(3)) {
        let sets = catalog();
        let s = &sets[idx];
        let (d, e) = (&d[..s.dim()], &e[..s.dim()]);
        if let (Some(a), Some(b)) = (finite(s, d), finite(s, e)) {
            let sum: Vec<f64> = d.iter().zip(e).map(|(x, y)| x + y).collect();
            let c = finite(s, &sum);
            prop_assert!(c.is_some(), "domain not closed under addition");
            prop_assert!(c.unwrap() <= a + b + 1e-6 * (1.0 + a.abs() + b.abs()));
        }
    }

    #[test]
    fn finiteness_matches_domain(idx in 0usize..10, d in direction(3)) {
        let sets = catalog();
        let s = &sets[idx];
        let d = v(&d[..s.dim()]);
        let exact = Tolerance { eps_feasibility: 0.0, ..tol() };
        let in_domain = s.domain_descriptor().contains(&d, &tol()).unwrap()
            && s.domain_descriptor().contains(&d, &exact).unwrap();
        let out_domain = !s.domain_descriptor().contains(&d, &tol()).unwrap()
            && !s.domain_descriptor().contains(&d, &exact).unwrap();
        let value = s.support(&d, &tol()).unwrap();
        if in_domain {
            prop_assert!(value.is_finite());
        }
        if out_domain {
            prop_assert_eq!(value, SupportValue::PlusInfinity);
        }
    }

    #[test]
    fn weak_duality_on_parabola(alpha in 0.2f64..5.0, s in -10.0f64..10.0, lift in 0.0f64..5.0, d in direction(2)) {
        let c = ConvexSet::parabola(alpha).unwrap();
        let x = [s, s * s / alpha + lift];
        prop_assert!(c.membership(&v(&x), &tol()).unwrap());
        if let Some(val) = finite(&c, &d) {
            prop_assert!(val + 1e-9 * (1.0 + val.abs()) >= d[0] * x[0] + d[1] * x[1]);
        }
    }

    #[test]
    fn parabola_distance_matches_scan(alpha in 0.3f64..4.0, x0 in -5.0f64..5.0, x1 in -5.0f64..5.0) {
        let c = ConvexSet::parabola(alpha).unwrap();
        let got = c.distance_to_set(&v(&[x0, x1]), &tol()).unwrap();
        let want = common::parabola_distance(alpha, &[x0, x1]);
        prop_assert!((got - want).abs() <= 1e-7, "{got} {want}");
    }

    #[test]
    fn truncations_grow_with_radius(r in 1.5f64..6.0, dr in 0.1f64..4.0, d in direction(2)) {
        let t = tol();
        let base = ConvexSet::HyperbolaEpigraph;
        let small = base.truncated(r, &t).unwrap();
        let big = base.truncated(r + dr, &t).unwrap();
        let sigma = |s: &ConvexSet| s.support(&v(&d), &t).unwrap();
        match (sigma(&small), sigma(&big), sigma(&base)) {
            (SupportValue::Finite(a), SupportValue::Finite(b), SupportValue::Finite(c)) => {
                prop_assert!(a <= b + 1e-12 && b <= c + 1e-12, "{a} {b} {c}");
            }
            (a, b, c) => prop_assert!(!a.is_finite() && !b.is_finite() && !c.is_finite()),
        }
    }

    #[test]
    fn polytope_distance_matches_simplex_oracle(pts in points(2), x in direction(2)) {
        let x: Vec<f64> = x.iter().map(|c| 4.0 * c).collect();
        let set = ConvexSet::v_polyhedron(pts.iter().map(|p| v(p)).collect(), vec![]).unwrap();
        let got = set.distance_to_set(&v(&x), &tol()).unwrap();
        let want = common::polytope_distance(&x, &pts);
        prop_assert!((got - want).abs() <= 1e-6, "{got} {want}");
    }

    #[test]
    fn brute_force_matches_oracle(p in points(3), q in points(3)) {
        let a = VPolyhedron::polytope(p.iter().map(|x| v(x)).collect()).unwrap();
        let b = VPolyhedron::polytope(q.iter().map(|x| v(x)).collect()).unwrap();
        let got = brute_force_hausdorff_polytopes(&a, &b, &tol()).unwrap();
        let want = common::polytope_hausdorff(&p, &q);
        prop_assert!((got - want).abs() <= 1e-6, "{got} {want}");
    }

    #[test]
    fn motzkin_reconstruction_has_same_support(pts in points(2), ray in direction(2), d in direction(2)) {
        let rays = if ray[0] > 0.0 && ray[1] > 0.0 { vec![v(&ray)] } else { vec![] };
        let p = VPolyhedron::new(pts.iter().map(|x| v(x)).collect(), rays).unwrap();
        let back = motzkin_decompose(&p).reconstruct().unwrap();
        let orig = ConvexSet::VPolyhedron(p);
        prop_assert_eq!(finite(&orig, &d).is_some(), finite(&back, &d).is_some());
        if let (Some(a), Some(b)) = (finite(&orig, &d), finite(&back, &d)) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classifier_respects_hierarchy(pts in points(2), ray in direction(2), r in 1.0f64..5.0, which in 0usize..4) {
        let t = tol();
        let s = match which {
            0 => ConvexSet::v_polyhedron(pts.iter().map(|x| v(x)).collect(), vec![v(&[ray[0].abs() + 0.1, ray[1].abs()])]).unwrap(),
            1 => ConvexSet::HyperbolaEpigraph.truncated(r + 1.0, &t).unwrap(),
            2 => ConvexSet::parabola(r).unwrap(),
            _ => ConvexSet::HyperbolaEpigraph,
        };
        let rep = classify(&s, &t, &cfg(200)).unwrap();
        if rep.m_decomposable == Verdict::Yes {
            prop_assert_eq!(rep.approx_m_decomposable, Verdict::Yes);
        }
        if rep.approx_m_decomposable == Verdict::Yes {
            prop_assert_eq!(rep.hyperbolic, Verdict::Yes);
        }
        if rep.hyperbolic == Verdict::No {
            prop_assert_eq!(rep.approx_m_decomposable, Verdict::No);
        }
    }

    #[test]
    fn hyperbolic_sets_have_a_compact_translate(which in 0usize..2) {
        let s = [ConvexSet::HyperbolaEpigraph, ConvexSet::ConeLift3D][which].clone();
        let rep = classify(&s, &tol(), &cfg(200)).unwrap();
        let m = rep.witnesses.iter().find_map(|w| match w {
            Witness::CompactTranslate { translate } => Some(translate.clone()),
            _ => None,
        });
        prop_assert!(m.is_some());
        // s ⊆ m + rec s means σ_s(d) ≤ dᵀm on the polar of the recession cone
        let m = m.unwrap();
        for k in 0..50 {
            let a = k as f64 * 0.1;
            let d = if s.dim() == 2 {
                v(&[-a.cos().abs(), -a.sin().abs()])
            } else {
                v(&[a.sin() * 0.1, -0.01 * a.cos().abs() - 0.001, -1.0])
            };
            if let Some(val) = s.support(&d, &tol()).unwrap().finite() {
                prop_assert!(val <= d.dot(&m) + 1e-9, "{val} > {}", d.dot(&m));
            }
        }
    }

    #[test]
    fn radius_decreases_with_looser_eps(eps in 0.05f64..0.5, factor in 1.5f64..4.0) {
        let c = ConvexSet::HyperbolaEpigraph;
        let found = |e: f64| match radius_for_epsilon(&c, e, &tol(), &cfg(400)).unwrap() {
            RadiusSearchResult::Found { radius, certified_estimate, .. } => {
                assert!(certified_estimate <= e);
                radius
            }
            other => panic!("{other:?}"),
        };
        let (tight, loose) = (found(eps), found(eps * factor));
        prop_assert!(loose <= tight * (1.0 + 2.0 * tol().eps_classify));
        prop_assert!(tight <= (eps * eps + 1.0 / (eps * eps)).sqrt() * (1.0 + 2.0 * tol().eps_classify));
    }

    #[test]
    fn estimate_is_symmetric_on_polytopes(p in points(2), q in points(2)) {
        let a = ConvexSet::v_polyhedron(p.iter().map(|x| v(x)).collect(), vec![]).unwrap();
        let b = ConvexSet::v_polyhedron(q.iter().map(|x| v(x)).collect(), vec![]).unwrap();
        let ab = hausdorff_support_estimate(&a, &b, &tol(), &cfg(500)).unwrap().finite_value().unwrap();
        let ba = hausdorff_support_estimate(&b, &a, &tol(), &cfg(500)).unwrap().finite_value().unwrap();
        let oracle = common::polytope_hausdorff(&p, &q);
        prop_assert!(ab <= oracle + 1e-9 && ba <= oracle + 1e-9);
        prop_assert!((ab - oracle).abs() <= 1e-3_f64.max(0.01 * oracle));
        prop_assert!((ba - oracle).abs() <= 1e-3_f64.max(0.01 * oracle));
    }
}
