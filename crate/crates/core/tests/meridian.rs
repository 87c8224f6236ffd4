use minkowski_surfaces::meridian::{
    conservation_check, minimal_meridian, normalized_speed_residual, parabolic_meridian, solve_ode, MinimalProfile,
    OdeProblem, OdeTarget, ParabolicCase, Termination,
};
use minkowski_surfaces::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};
use minkowski_surfaces::surface::{frame_invariants, invariants};
use minkowski_surfaces::{Error, DEFAULT_TOL};
use proptest::prelude::*;

/// Arclength of the minimal graph `g(f)` at each point of `fs`, by composite
/// Simpson with `sub` panels per gap.
fn arclength(p: &MinimalProfile, fs: &[f64], sub: usize) -> Vec<f64> {
    let speed = |t: f64| {
        let gp = p.eval(t).gp;
        match p.kind {
            SurfaceKind::FirstType => (1.0 + gp * gp).sqrt(),
            SurfaceKind::SecondType => (1.0 - gp * gp).sqrt(),
        }
    };
    let mut out = vec![0.0];
    for w in fs.windows(2) {
        let h = (w[1] - w[0]) / (2 * sub) as f64;
        let mut acc = speed(w[0]) + speed(w[1]);
        for j in 1..2 * sub {
            acc += if j % 2 == 1 { 4.0 } else { 2.0 } * speed(w[0] + j as f64 * h);
        }
        out.push(out.last().unwrap() + acc * h / 3.0);
    }
    out
}

#[test]
fn minimal_meridians_satisfy_unit_speed_system() {
    let cases = [
        (SurfaceKind::FirstType, 1.0, 1.0, 0.25, 0.0, 1.0, 0.6, 2.0),
        (SurfaceKind::FirstType, 1.4, 0.6, 0.8, 1.1, -1.0, 0.9, 2.5),
        (SurfaceKind::SecondType, 1.0, 2.0, 1.0, 0.0, 1.0, 0.2, 3.0),
        (SurfaceKind::SecondType, 0.7, 1.3, 0.4, -0.5, -1.0, 0.3, 2.0),
    ];
    for (kind, alpha, beta, a, c, eps, lo, hi) in cases {
        let p = MinimalProfile::new(kind, alpha, beta, a, c, eps).unwrap();
        let n = 4001;
        let fs: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let s = arclength(&p, &fs, 8);
        let (a2, b2) = (alpha * alpha, beta * beta);
        let g: Vec<f64> = fs.iter().map(|&t| p.eval(t).g).collect();
        // chord ratios in s, with the h^2 error term removed by Richardson
        let slope = |x: &[f64], i: usize| {
            let d1 = (x[i + 1] - x[i - 1]) / (s[i + 1] - s[i - 1]);
            let d2 = (x[i + 2] - x[i - 2]) / (s[i + 2] - s[i - 2]);
            (4.0 * d1 - d2) / 3.0
        };
        for i in (2..n - 2).step_by(100) {
            let (df, dg) = (slope(&fs, i), slope(&g, i));
            let (f, g) = (fs[i], g[i]);
            let (ef, eg) = match kind {
                SurfaceKind::FirstType => {
                    let den = a2 * f * f - b2 * g * g;
                    ((a2 * f * f - a) / den, (a - b2 * g * g) / den)
                }
                SurfaceKind::SecondType => {
                    let den = a2 * f * f + b2 * g * g;
                    ((a2 * f * f + a) / den, (a - b2 * g * g) / den)
                }
            };
            assert!((df * df - ef).abs() < 1e-7, "{kind:?} f' at {f}: {} vs {ef}", df * df);
            assert!((dg * dg - eg).abs() < 1e-7, "{kind:?} g' at {f}: {} vs {eg}", dg * dg);
        }
    }
}

#[test]
fn minimal_meridian_conserves_and_recovers_a() {
    let m = minimal_meridian(SurfaceKind::FirstType, 1.0, 1.0, 0.25, 0.0, 1.0, (0.6, 2.0)).unwrap();
    let s = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, m).unwrap();
    let r = conservation_check(&s, &s.meridian().grid(50)).unwrap();
    assert!(r.max_spread < 1e-6);
    assert!((r.recovered_a(1.0, 1.0) - 0.25).abs() < 1e-6 * 0.25);
}

#[test]
fn conservation_rejects_example_one() {
    let s = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7)).unwrap())
        .unwrap();
    assert!(matches!(conservation_check(&s, &s.meridian().grid(5)), Err(Error::NotMinimal { .. })));
    assert!(conservation_check(&s, &[]).is_err());
}

#[test]
fn second_type_minimal_is_bounded() {
    let m = minimal_meridian(SurfaceKind::SecondType, 1.0, 2.0, 1.0, 0.0, 1.0, (0.2, 3.0)).unwrap();
    assert!(m.grid(500).into_iter().all(|u| m.eval(u).g.abs() <= 0.5 + 1e-15));
}

#[test]
fn parabolic_families() {
    let kind = SurfaceKind::FirstType;
    let s = |case| {
        let m = parabolic_meridian(kind, case, 1.3, 0.9, (1.0, 2.0)).unwrap();
        RotationalSurface::new(kind, 1.3, 0.9, m).unwrap()
    };
    let dev = s(ParabolicCase::DevelopableRuled { a: 0.5 });
    let non = s(ParabolicCase::NonDevelopableRuled { a: 0.5, b: 0.4 });
    for u in [1.0, 1.3, 1.7, 2.0] {
        let r = invariants(&dev.as_patch(), u, 0.5, DEFAULT_TOL).unwrap();
        assert!(r.k.abs() < 1e-10 && r.kappa.abs() < 1e-10 && r.gauss.abs() < 1e-10);
        let r = invariants(&non.as_patch(), u, 0.5, DEFAULT_TOL).unwrap();
        assert!(r.k.abs() < 1e-10 && r.kappa.abs() > 1e-4);
    }
    let p = parabolic_meridian(kind, ParabolicCase::PowerLaw { c: 1.0 }, 2.0, 1.0, (1.0, 2.0)).unwrap();
    let p = RotationalSurface::new(kind, 2.0, 1.0, p).unwrap();
    let r = invariants(&p.as_patch(), 1.5, 0.3, DEFAULT_TOL).unwrap();
    assert!(r.k.abs() < 1e-10 && r.kappa.abs() > 1e-4 && r.gauss.abs() > 1e-4);
    assert!(parabolic_meridian(kind, ParabolicCase::DevelopableRuled { a: 0.0 }, 1.0, 1.0, (1.0, 2.0)).is_err());
}

#[test]
fn normalized_speed_examples() {
    let c = MeridianCurve::circle(1.0, (-1.0, 1.0)).unwrap();
    let h = MeridianCurve::hyperbolic(1.0, (0.1, 1.5)).unwrap();
    let l = MeridianCurve::line(1.0, 1.0, (0.0, 1.0)).unwrap();
    assert!(normalized_speed_residual(&c, SurfaceKind::FirstType) < 1e-14);
    assert!(normalized_speed_residual(&h, SurfaceKind::SecondType) < 1e-13);
    assert!((normalized_speed_residual(&l, SurfaceKind::FirstType) - 1.0).abs() < 1e-15);
}

#[test]
fn circle_is_recovered_by_the_flat_normal_solver() {
    let t = 0.5f64;
    let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (t.sin(), t.cos(), -t.tan()), 0.7);
    let sol = solve_ode(&p).unwrap();
    assert_eq!(sol.termination, Termination::ReachedEnd);
    for (u, f) in sol.u.iter().zip(&sol.f) {
        assert!((f - (1.0 - u * u).sqrt()).abs() < 1e-6);
    }
}

#[test]
fn hyperbola_is_recovered_by_the_flat_normal_solver() {
    let t = 0.5f64;
    let p = OdeProblem::new(
        SurfaceKind::SecondType,
        OdeTarget::FlatNormal,
        1.0,
        1.0,
        (t.cosh(), t.sinh(), 1.0 / t.tanh()),
        2.5,
    );
    let sol = solve_ode(&p).unwrap();
    assert_eq!(sol.termination, Termination::ReachedEnd);
    for (u, f) in sol.u.iter().zip(&sol.f) {
        assert!((f - (u * u - 1.0).sqrt()).abs() < 1e-6);
    }
}

#[test]
fn generic_flat_solution_has_small_residual() {
    let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::Flat, 2.0, 1.0, (0.2, 1.0, 0.1), 1.2);
    let sol = solve_ode(&p).unwrap();
    assert!(sol.termination.is_success());
    let r = sol.interior_residuals().unwrap();
    assert!(r.iter().all(|x| x.abs() < 1e-6));
    let s = sol.to_surface().unwrap();
    for u in s.meridian().grid(7) {
        let rep = invariants(&s.as_patch(), u, 0.2, DEFAULT_TOL).unwrap();
        assert!(rep.gauss.abs() < 1e-6);
    }
}

#[test]
fn flat_normal_solutions_have_equal_normal_curvatures() {
    let problems = [
        OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.5, 0.7, (0.3, 1.2, 0.2), 1.2),
        OdeProblem::new(SurfaceKind::SecondType, OdeTarget::FlatNormal, 0.8, 1.2, (0.5, 1.0, -1.4), 1.5),
    ];
    for p in problems {
        let sol = solve_ode(&p).unwrap();
        sol.check().unwrap();
        let s = sol.to_surface().unwrap();
        let (lo, hi) = s.meridian().domain();
        for i in 1..8 {
            let u = lo + (hi - lo) * i as f64 / 8.0;
            let closed = s.closed_frame_invariants(u).unwrap();
            assert!((closed.nu1 - closed.nu2).abs() < 1e-6, "{:?}", p.kind);
            let kernel = frame_invariants(&s.as_patch(), u, 0.1, DEFAULT_TOL).unwrap();
            assert!((kernel.nu1 - kernel.nu2).abs() < 1e-5, "{:?} {kernel:?}", p.kind);
        }
    }
}

#[test]
fn solver_reports_the_singular_denominator() {
    // alpha^2 f^2 - beta^2 u^2 vanishes on the circle at u = 1/sqrt 2
    let t = 0.2f64;
    let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (t.sin(), t.cos(), -t.tan()), 0.9);
    let sol = solve_ode(&p).unwrap();
    match sol.termination {
        Termination::Singularity { u, .. } => assert!((u - 0.5f64.sqrt()).abs() < 1e-3),
        other => panic!("{other}"),
    }
    assert!(sol.check().is_err());
    assert!(sol.len() > 10);
}

#[test]
fn second_type_rejects_slopes_inside_the_unit_interval() {
    let p = OdeProblem::new(SurfaceKind::SecondType, OdeTarget::Flat, 1.0, 1.0, (1.0, 0.5, 0.5), 2.0);
    assert!(matches!(solve_ode(&p), Err(Error::DomainViolation { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tolerance_halving_is_stable(
        fp0 in -0.3f64..0.3,
        f0 in 0.9f64..1.3,
        flat in proptest::bool::ANY,
    ) {
        let target = if flat { OdeTarget::Flat } else { OdeTarget::FlatNormal };
        let mut p = OdeProblem::new(SurfaceKind::FirstType, target, 1.5, 0.8, (0.2, f0, fp0), 0.6);
        p.h_max = 0.1;
        let a = solve_ode(&p).unwrap();
        prop_assume!(a.termination.is_success());
        let mut q = p.clone();
        q.rel_tol /= 2.0;
        let b = solve_ode(&q).unwrap();
        prop_assert!(b.termination.is_success());
        let (fa, fb) = (a.f.last().unwrap(), b.f.last().unwrap());
        prop_assert!((fa - fb).abs() < 10.0 * p.rel_tol, "{} {}", fa, fb);
    }
}
