use std::sync::Arc;

use minkowski_surfaces::meridian::minimal_meridian;
use minkowski_surfaces::rotational::{MeridianCurve, RotationalSurface, SampledMeridian, SurfaceKind};
use minkowski_surfaces::sampling::random_samples;
use minkowski_surfaces::surface::{
    first_form, frame_invariants, invariants, second_form, DerivativeMode, Embedding, Jet, ParamDomain, PointClass,
    SurfacePatch,
};
use minkowski_surfaces::{SpacetimeVector, DEFAULT_TOL};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn example1() -> RotationalSurface {
    RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7)).unwrap())
        .unwrap()
}

/// `z = (u, v, a sin(u v), b u^2)`, spacelike near the origin.
struct Wavy {
    a: f64,
    b: f64,
}

impl Embedding for Wavy {
    fn position(&self, u: f64, v: f64) -> SpacetimeVector {
        SpacetimeVector::new(u, v, self.a * (u * v).sin(), self.b * u * u)
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<Jet> {
        let (s, c) = (u * v).sin_cos();
        let a = self.a;
        Some(Jet {
            z: self.position(u, v),
            z_u: SpacetimeVector::new(1.0, 0.0, a * v * c, 2.0 * self.b * u),
            z_v: SpacetimeVector::new(0.0, 1.0, a * u * c, 0.0),
            z_uu: SpacetimeVector::new(0.0, 0.0, -a * v * v * s, 2.0 * self.b),
            z_uv: SpacetimeVector::new(0.0, 0.0, a * (c - u * v * s), 0.0),
            z_vv: SpacetimeVector::new(0.0, 0.0, -a * u * u * s, 0.0),
        })
    }
}

#[test]
fn plane_is_totally_geodesic() {
    struct Plane;
    impl Embedding for Plane {
        fn position(&self, u: f64, v: f64) -> SpacetimeVector {
            SpacetimeVector::new(u, v, 0.0, 0.0)
        }
    }
    let patch = SurfacePatch::new(Arc::new(Plane), ParamDomain::unbounded(), DerivativeMode::finite_difference());
    let r = invariants(&patch, 0.3, -1.2, DEFAULT_TOL).unwrap();
    assert!((r.first.e - 1.0).abs() < 1e-9 && r.first.f.abs() < 1e-9 && (r.first.g - 1.0).abs() < 1e-9);
    assert!(r.second.max_abs() < 1e-9);
    assert!(r.is_flat_point && r.is_minimal_point);
    assert_eq!(r.epsilon, None);
    assert!(r.frame.is_none());
}

#[test]
fn rotational_first_forms_match_meridian_data() {
    for s in random_samples(3, 60) {
        let first = first_form(&s.surface.as_patch(), s.u, s.v).unwrap();
        let j = s.surface.meridian().eval(s.u);
        let (a2, b2) = (s.surface.alpha().powi(2), s.surface.beta().powi(2));
        let (e, g) = match s.surface.kind() {
            SurfaceKind::FirstType => (j.fp * j.fp + j.gp * j.gp, a2 * j.f * j.f - b2 * j.g * j.g),
            SurfaceKind::SecondType => (j.fp * j.fp - j.gp * j.gp, a2 * j.f * j.f + b2 * j.g * j.g),
        };
        assert!(rel(first.e, e) < 1e-12 && rel(first.g, g) < 1e-11 && first.f.abs() < 1e-11);
    }
}

#[test]
fn circle_profile_second_form_matches_closed_curvatures() {
    let s = example1();
    let (u, v) = (0.3, 0.4);
    let first = first_form(&s.as_patch(), u, v).unwrap();
    let second = second_form(&s.as_patch(), u, v).unwrap();
    let c = s.closed_curvatures(u).unwrap();
    // With F = M = 0: G L and E N are the roots of x^2 - 2 kappa E G x + k (E G)^2.
    let eg = first.e * first.g;
    let disc = ((c.kappa * eg).powi(2) - c.k * eg * eg).sqrt();
    let mut closed = [c.kappa * eg - disc, c.kappa * eg + disc];
    let mut kernel = [first.g * second.l, first.e * second.n];
    closed.sort_by(f64::total_cmp);
    kernel.sort_by(f64::total_cmp);
    assert!(second.m.abs() < 1e-12);
    for (a, b) in closed.iter().zip(&kernel) {
        assert!(rel(*a, *b) < 1e-8, "{closed:?} {kernel:?}");
    }
}

#[test]
fn circle_profile_has_flat_normal_connection() {
    let r = invariants(&example1().as_patch(), 0.3, 0.4, DEFAULT_TOL).unwrap();
    assert!(r.kappa.abs() < 1e-12);
    let f = r.frame.unwrap();
    assert!((f.nu1 - f.nu2).abs() < 1e-7);
}

#[test]
fn lines_through_origin_are_flat() {
    for kind in [SurfaceKind::FirstType, SurfaceKind::SecondType] {
        let s = RotationalSurface::new(kind, 1.5, 0.8, MeridianCurve::line(0.7, 0.0, (0.5, 2.0)).unwrap()).unwrap();
        let patch = s.as_patch();
        for u in [0.5, 1.0, 1.7] {
            for v in [0.0, 0.9, 1.8] {
                let r = invariants(&patch, u, v, DEFAULT_TOL).unwrap();
                assert!(r.k.abs() < 1e-12 && r.kappa.abs() < 1e-12 && r.gauss.abs() < 1e-12);
            }
        }
    }
}

#[test]
fn minimal_surfaces_have_vanishing_mean_curvature() {
    for kind in [SurfaceKind::FirstType, SurfaceKind::SecondType] {
        let m = minimal_meridian(kind, 1.0, 1.0, 0.25, 0.0, 1.0, (0.6, 2.0)).unwrap();
        let s = RotationalSurface::new(kind, 1.0, 1.0, m).unwrap();
        let patch = s.as_patch();
        for (i, u) in s.meridian().grid(5).into_iter().enumerate() {
            let r = invariants(&patch, u, 0.3 * i as f64, DEFAULT_TOL).unwrap();
            assert!((r.kappa * r.kappa - r.k).abs() < 1e-8);
            assert!(r.is_minimal_point);
            assert!(r.frame.is_none());
        }
    }
}

#[test]
fn frame_of_first_type_has_vanishing_structural_invariants() {
    for s in random_samples(5, 80).into_iter().filter(|s| s.surface.kind() == SurfaceKind::FirstType) {
        let Ok(f) = frame_invariants(&s.surface.as_patch(), s.u, s.v, DEFAULT_TOL) else {
            continue;
        };
        assert!(f.gamma1.abs() < 1e-7 && f.lambda.abs() < 1e-7 && f.beta1.abs() < 1e-7, "{f:?}");
    }
}

#[test]
fn second_type_frame_matches_closed_forms() {
    // f = 2u, g = u; samples of a straight line are interpolated exactly
    let nodes: Vec<f64> = (0..11).map(|i| 0.5 + 0.15 * i as f64).collect();
    let f: Vec<f64> = nodes.iter().map(|u| 2.0 * u).collect();
    let two = vec![2.0; nodes.len()];
    let one = vec![1.0; nodes.len()];
    let m = SampledMeridian::general(&nodes, &f, &two, &nodes, &one).unwrap();
    let s = RotationalSurface::new(SurfaceKind::SecondType, 1.0, 1.0, MeridianCurve::sampled(m).unwrap()).unwrap();
    let kernel = frame_invariants(&s.as_patch(), 1.0, 0.5, DEFAULT_TOL).unwrap();
    let closed = s.closed_frame_invariants(1.0).unwrap();
    let o = s.kind().mean_direction_orientation();
    assert!(rel(kernel.nu1, o * closed.nu1) < 1e-6);
    assert!(rel(kernel.nu2, o * closed.nu2) < 1e-6);
    assert!(rel(kernel.gamma2, closed.gamma2) < 1e-6);
    assert!(kernel.gamma1.abs() < 1e-6 && kernel.lambda.abs() < 1e-6 && kernel.beta1.abs() < 1e-6);
    // l is fixed only up to sign
    let l_sign = (kernel.mu / closed.mu).signum();
    assert!(rel(kernel.mu, l_sign * closed.mu) < 1e-6);
    assert!(rel(kernel.beta2, l_sign * closed.beta2) < 1e-6);
}

#[test]
fn hyperbolic_region_has_negative_k() {
    let s = example1();
    let patch = s.as_patch();
    for u in s.meridian().grid(10) {
        for i in 0..10 {
            let r = invariants(&patch, u, 0.2 * i as f64, DEFAULT_TOL).unwrap();
            assert!(r.k < 0.0);
            assert_eq!(r.point_class, PointClass::Hyperbolic);
        }
    }
}

#[test]
fn non_principal_parameters_have_no_frame() {
    let patch = SurfacePatch::analytic(Arc::new(Wavy { a: 0.5, b: 0.2 }), ParamDomain::unbounded());
    let r = invariants(&patch, 0.3, 0.2, DEFAULT_TOL).unwrap();
    assert!(r.frame.is_none());
    assert!(frame_invariants(&patch, 0.3, 0.2, DEFAULT_TOL).is_err());
}

#[test]
fn difference_forms_converge_quadratically_on_a_generic_patch() {
    let patch = SurfacePatch::analytic(Arc::new(Wavy { a: 0.5, b: 0.2 }), ParamDomain::unbounded());
    let err = |h: f64| {
        let fd = patch.with_mode(DerivativeMode::uniform_difference(h));
        let (a1, a2) = (first_form(&patch, 0.4, -0.3).unwrap(), second_form(&patch, 0.4, -0.3).unwrap());
        let (b1, b2) = (first_form(&fd, 0.4, -0.3).unwrap(), second_form(&fd, 0.4, -0.3).unwrap());
        [a1.e - b1.e, a1.f - b1.f, a1.g - b1.g, a2.l - b2.l, a2.m - b2.m, a2.n - b2.n]
            .iter()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    };
    let order = (err(1e-2) / err(5e-3)).log2();
    assert!(order >= 1.9, "order {order}");
}

#[test]
fn non_spacelike_patch_is_rejected() {
    struct Timelike;
    impl Embedding for Timelike {
        fn position(&self, u: f64, v: f64) -> SpacetimeVector {
            SpacetimeVector::new(u, 0.0, 0.0, v)
        }
    }
    let patch = SurfacePatch::new(Arc::new(Timelike), ParamDomain::unbounded(), DerivativeMode::finite_difference());
    assert!(invariants(&patch, 0.0, 0.0, DEFAULT_TOL).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_relations_hold_for_kernel_invariants(seed in 0u64..10_000) {
        let s = &random_samples(seed, 1)[0];
        let r = invariants(&s.surface.as_patch(), s.u, s.v, DEFAULT_TOL).unwrap();
        if let (Some(f), Some(eps)) = (r.frame, r.epsilon) {
            prop_assert!(rel(r.k, -4.0 * f.nu1 * f.nu2 * f.mu * f.mu) < 1e-6);
            prop_assert!(rel(r.kappa.abs(), ((f.nu1 - f.nu2) * f.mu).abs()) < 1e-6);
            prop_assert!(rel(r.gauss, eps * (f.nu1 * f.nu2 - f.lambda * f.lambda + f.mu * f.mu)) < 1e-6);
            prop_assert!(rel(r.norm_h, (f.nu1 + f.nu2).abs() / 2.0) < 1e-6);
            if f.mu.abs() > 1e-3 {
                let alt = (r.kappa * r.kappa - r.k).max(0.0).sqrt() / (2.0 * f.mu.abs());
                prop_assert!(rel(r.norm_h, alt) < 1e-6);
            }
        }
    }

    #[test]
    fn point_class_follows_sign_of_k(seed in 0u64..10_000) {
        let s = &random_samples(seed, 1)[0];
        let r = invariants(&s.surface.as_patch(), s.u, s.v, DEFAULT_TOL).unwrap();
        let expected = if r.k > DEFAULT_TOL {
            PointClass::Elliptic
        } else if r.k < -DEFAULT_TOL {
            PointClass::Hyperbolic
        } else {
            PointClass::Parabolic
        };
        prop_assert_eq!(r.point_class, expected);
    }

    #[test]
    fn invariants_do_not_depend_on_v(seed in 0u64..10_000, dv in 0.0f64..0.5) {
        let s = &random_samples(seed, 1)[0];
        let patch = s.surface.as_patch();
        let a = invariants(&patch, s.u, s.v, DEFAULT_TOL).unwrap();
        let b = invariants(&patch, s.u, s.v + dv, DEFAULT_TOL).unwrap();
        prop_assert!(rel(a.k, b.k) < 1e-9 && rel(a.kappa, b.kappa) < 1e-9 && rel(a.gauss, b.gauss) < 1e-9);
    }
}
