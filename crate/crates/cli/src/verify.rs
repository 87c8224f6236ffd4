//! Seeded property suite, grouped by module.

use std::io::Write;

use minkowski_surfaces::meridian::{
    conservation_check, minimal_meridian, parabolic_meridian, solve_ode, OdeProblem, OdeTarget, ParabolicCase,
};
use minkowski_surfaces::minkowski::{causal_class, inner, normal_frame, orientation_det, CausalClass};
use minkowski_surfaces::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};
use minkowski_surfaces::sampling::{max_v, random_samples, Sample, SAMPLE_MARGIN};
use minkowski_surfaces::surface::{
    allied_mean_curvature_magnitude, first_form, invariants, second_form, DerivativeMode, PointClass,
};
use minkowski_surfaces::SpacetimeVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::format::Format;
use crate::mesh::grid_faces;
use crate::setup::linspace;
use crate::sweep::sweep;

pub const MODULES: [&str; 5] = ["minkowski_core", "surface_kernel", "rotational_surfaces", "meridian_solvers", "cli_runner"];

const SAMPLES: usize = 100;

/// Outcome of one property.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} ({})", self.module, self.name, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Worst value against a tolerance; an `Err` fails the check.
fn bounded(module: &'static str, name: &'static str, worst: Result<f64, String>, tol: f64) -> Check {
    match worst {
        Ok(w) => Check { module, name, pass: w < tol, detail: format!("worst {w:.3e}, tol {tol:.0e}") },
        Err(e) => Check { module, name, pass: false, detail: e },
    }
}

/// Largest value of `f` over `items`, stopping at the first error.
fn worst<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<f64, String>) -> Result<f64, String> {
    let mut w = 0.0_f64;
    for x in items {
        w = w.max(f(x)?);
    }
    Ok(w)
}

fn random_vector(rng: &mut ChaCha8Rng) -> SpacetimeVector {
    SpacetimeVector::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

fn minkowski_core(seed: u64, tol: f64) -> Vec<Check> {
    const M: &str = "minkowski_core";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bilinear = worst(0..SAMPLES, |_| {
        let (a, b, c) = (random_vector(&mut rng), random_vector(&mut rng), random_vector(&mut rng));
        let t: f64 = rng.gen_range(-3.0..3.0);
        let sym = (inner(&a, &b) - inner(&b, &a)).abs();
        let lin = rel(inner(&(a + t * b), &c), inner(&a, &c) + t * inner(&b, &c));
        Ok(sym.max(lin))
    });
    let basis = [1, 2, 3, 4].map(SpacetimeVector::basis);
    let null = basis[2] + basis[3];
    let classes_ok = basis[..3].iter().all(|e| causal_class(e, tol) == CausalClass::Spacelike)
        && causal_class(&basis[3], tol) == CausalClass::Timelike
        && causal_class(&null, tol) == CausalClass::Lightlike
        && causal_class(&SpacetimeVector::ZERO, tol) == CausalClass::Zero;

    let samples = random_samples(seed, SAMPLES);
    let mut negative = 0;
    let gram = worst(&samples, |s| {
        let jet = s.surface.as_patch().jet(s.u, s.v).map_err(|e| e.to_string())?;
        let (t1, t2) = (jet.z_u, jet.z_v);
        let (n1, n2) = normal_frame(&t1, &t2, tol).map_err(|e| e.to_string())?;
        if orientation_det(&t1, &t2, &n1, &n2) <= 0.0 {
            negative += 1;
        }
        let scale = |t: &SpacetimeVector| t.components().iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut w = (n1.square() - 1.0).abs().max((n2.square() + 1.0).abs()).max(inner(&n1, &n2).abs());
        for t in [&t1, &t2] {
            for n in [&n1, &n2] {
                w = w.max(inner(n, t).abs() / scale(t));
            }
        }
        Ok(w)
    });
    vec![
        bounded(M, "inner product is symmetric and bilinear", bilinear, 1e-12),
        Check {
            module: M,
            name: "causal classes of the standard frame",
            pass: classes_ok,
            detail: "e1..e3 spacelike, e4 timelike, e3+e4 lightlike, 0 zero".into(),
        },
        bounded(M, "normal frame Gram block-diagonality", gram, 1e-10),
        Check {
            module: M,
            name: "tangent and normal frame positively oriented",
            pass: negative == 0,
            detail: format!("{negative} of {} negative", samples.len()),
        },
    ]
}

fn surface_kernel(seed: u64, tol: f64) -> Vec<Check> {
    const M: &str = "surface_kernel";
    let samples = random_samples(seed ^ 0x5eed, SAMPLES);
    let fd_error = |s: &Sample, h: f64| -> Result<f64, String> {
        let analytic = s.surface.as_patch();
        let fd = analytic.with_mode(DerivativeMode::uniform_difference(h));
        let e = |x: minkowski_surfaces::Error| x.to_string();
        let (a1, a2) = (first_form(&analytic, s.u, s.v).map_err(e)?, second_form(&analytic, s.u, s.v).map_err(e)?);
        let (b1, b2) = (first_form(&fd, s.u, s.v).map_err(e)?, second_form(&fd, s.u, s.v).map_err(e)?);
        Ok([a1.e - b1.e, a1.f - b1.f, a1.g - b1.g, a2.l - b2.l, a2.m - b2.m, a2.n - b2.n]
            .iter()
            .fold(0.0_f64, |m, x| m.max(x.abs())))
    };
    let order = (|| -> Result<f64, String> {
        let fd_samples = &samples[..25];
        let coarse = worst(fd_samples, |s| fd_error(s, 1e-2))?;
        let fine = worst(fd_samples, |s| fd_error(s, 5e-3))?;
        Ok((coarse / fine).log2())
    })();
    let order_check = match order {
        Ok(p) => Check { module: M, name: "finite differences converge at second order", pass: p >= 1.9, detail: format!("observed order {p:.3}, required 1.9") },
        Err(e) => Check { module: M, name: "finite differences converge at second order", pass: false, detail: e },
    };

    let mut frames = 0;
    let relations = worst(&samples, |s| {
        let r = invariants(&s.surface.as_patch(), s.u, s.v, tol).map_err(|e| e.to_string())?;
        let (Some(f), Some(eps)) = (r.frame, r.epsilon) else {
            return Ok(0.0);
        };
        frames += 1;
        Ok(rel(r.k, -4.0 * f.nu1 * f.nu2 * f.mu * f.mu)
            .max(rel(r.kappa.abs(), ((f.nu1 - f.nu2) * f.mu).abs()))
            .max(rel(r.gauss, eps * (f.nu1 * f.nu2 - f.lambda * f.lambda + f.mu * f.mu)))
            .max(rel(r.norm_h, (f.nu1 + f.nu2).abs() / 2.0)))
    });
    let relations = relations.and_then(|w| if frames == 0 { Err("no sample carried a frame".into()) } else { Ok(w) });

    let mut wrong = 0;
    for s in &samples {
        if let Ok(r) = invariants(&s.surface.as_patch(), s.u, s.v, tol) {
            if r.point_class != PointClass::from_k(r.k, tol) {
                wrong += 1;
            }
        }
    }
    vec![
        order_check,
        bounded(M, "frame relations for k, kappa, K and |H|", relations, 1e-6),
        Check {
            module: M,
            name: "point class follows the sign of k",
            pass: wrong == 0,
            detail: format!("{wrong} of {} misclassified", samples.len()),
        },
    ]
}

fn rotational_surfaces(seed: u64, tol: f64) -> Vec<Check> {
    const M: &str = "rotational_surfaces";
    let samples = random_samples(seed, SAMPLES);
    let dual = worst(&samples, |s| {
        let r = invariants(&s.surface.as_patch(), s.u, s.v, tol).map_err(|e| e.to_string())?;
        let c = s.surface.closed_curvatures(s.u).map_err(|e| e.to_string())?;
        let o = s.surface.kind().kappa_orientation();
        Ok(rel(r.k, c.k).max(rel(r.kappa, o * c.kappa)).max(rel(r.gauss, c.gauss)))
    });
    let norm_h = worst(&samples, |s| {
        let r = invariants(&s.surface.as_patch(), s.u, s.v, tol).map_err(|e| e.to_string())?;
        let c = s.surface.closed_frame_invariants(s.u).map_err(|e| e.to_string())?;
        Ok(rel(r.norm_h, (c.nu1 + c.nu2).abs() / 2.0))
    });
    let mut bad_eps = 0;
    let mut checked = 0;
    let chen = worst(&samples, |s| {
        let r = invariants(&s.surface.as_patch(), s.u, s.v, tol).map_err(|e| e.to_string())?;
        if r.is_minimal_point || r.first.e <= SAMPLE_MARGIN {
            return Ok(0.0);
        }
        checked += 1;
        let expected = match s.surface.kind() {
            SurfaceKind::FirstType => 1.0,
            SurfaceKind::SecondType => -1.0,
        };
        if r.epsilon != Some(expected) {
            bad_eps += 1;
        }
        allied_mean_curvature_magnitude(&r).ok_or_else(|| format!("no frame at a non-minimal point of {}", s.preset))
    });
    let membership = (|| -> Result<f64, String> {
        let e1 = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7)).unwrap())
            .map_err(|e| e.to_string())?;
        let e2 = RotationalSurface::new(SurfaceKind::SecondType, 1.0, 1.0, MeridianCurve::hyperbolic(1.0, (0.1, 1.5)).unwrap())
            .map_err(|e| e.to_string())?;
        let mut w = 0.0_f64;
        for (s, target) in [(e1, 1.0), (e2, -1.0)] {
            for u in s.meridian().grid(20) {
                for v in linspace(0.0, max_v(s.beta()), 20) {
                    w = w.max((s.embed(u, v).map_err(|e| e.to_string())?.square() - target).abs());
                }
            }
        }
        Ok(w)
    })();
    vec![
        bounded(M, "dual-path k, kappa, K agree", dual, 1e-8),
        bounded(M, "|H| equals |nu1 + nu2| / 2", norm_h, 1e-8),
        Check {
            module: M,
            name: "mean curvature vector is spacelike (first type) or timelike (second type)",
            pass: bad_eps == 0 && checked > 0,
            detail: format!("{bad_eps} of {checked} non-minimal points wrong"),
        },
        bounded(M, "Chen property: allied mean curvature magnitude = 0", chen, 1e-8),
        bounded(M, "examples lie on the unit quadrics", membership, 1e-12),
    ]
}

fn meridian_solvers(seed: u64, tol: f64) -> Vec<Check> {
    const M: &str = "meridian_solvers";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut minimal = Vec::new();
    while minimal.len() < 6 {
        let kind = if minimal.len() % 2 == 0 { SurfaceKind::FirstType } else { SurfaceKind::SecondType };
        let (alpha, beta) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let a: f64 = rng.gen_range(0.1..1.0);
        let phase = rng.gen_range(-3.0..3.0);
        let eps = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let lo = match kind {
            SurfaceKind::FirstType => 1.2 * a.sqrt() / alpha,
            SurfaceKind::SecondType => 0.2,
        };
        if let Ok(m) = minimal_meridian(kind, alpha, beta, a, phase, eps, (lo, lo + 2.0)) {
            if let Ok(s) = RotationalSurface::new(kind, alpha, beta, m) {
                minimal.push((s, a));
            }
        }
    }
    let mean_curvature = worst(&minimal, |(s, _)| {
        worst(s.meridian().grid(50), |u| {
            let c = s.closed_frame_invariants(u).map_err(|e| e.to_string())?;
            Ok((c.nu1 + c.nu2).abs())
        })
    });
    let conservation = worst(&minimal, |(s, a)| {
        let r = conservation_check(s, &s.meridian().grid(50)).map_err(|e| e.to_string())?;
        Ok(r.max_spread.max(rel(r.recovered_a(s.alpha(), s.beta()), *a)))
    });

    let parabolic = worst([SurfaceKind::FirstType, SurfaceKind::SecondType], |kind| {
        let (alpha, beta) = (rng.gen_range(1.0..2.0), rng.gen_range(0.5..1.0));
        let cases = [
            ParabolicCase::DevelopableRuled { a: rng.gen_range(0.1..0.4) },
            ParabolicCase::NonDevelopableRuled { a: rng.gen_range(0.1..0.4), b: rng.gen_range(0.05..0.2) },
            ParabolicCase::PowerLaw { c: rng.gen_range(0.2..0.6) },
        ];
        worst(cases, |case| {
            let m = parabolic_meridian(kind, case, alpha, beta, (1.0, 2.0)).map_err(|e| e.to_string())?;
            let s = RotationalSurface::new(kind, alpha, beta, m).map_err(|e| e.to_string())?;
            worst(s.meridian().grid(9), |u| {
                let r = invariants(&s.as_patch(), u, 0.3, tol).map_err(|e| e.to_string())?;
                Ok(r.k.abs())
            })
        })
    });

    let t = 0.5f64;
    let analytic = (|| -> Result<f64, String> {
        let circle = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (t.sin(), t.cos(), -t.tan()), 0.7);
        let hyperbola =
            OdeProblem::new(SurfaceKind::SecondType, OdeTarget::FlatNormal, 1.0, 1.0, (t.cosh(), t.sinh(), 1.0 / t.tanh()), 2.5);
        let mut w = 0.0_f64;
        for (p, exact) in [(circle, (|u: f64| (1.0 - u * u).sqrt()) as fn(f64) -> f64), (hyperbola, |u: f64| (u * u - 1.0).sqrt())] {
            let sol = solve_ode(&p).map_err(|e| e.to_string())?;
            sol.check().map_err(|e| e.to_string())?;
            for (u, f) in sol.u.iter().zip(&sol.f) {
                w = w.max((f - exact(*u)).abs());
            }
        }
        Ok(w)
    })();

    let f0 = rng.gen_range(0.9..1.2);
    let fp0 = rng.gen_range(-0.2..0.2);
    let problems = [
        OdeProblem::new(SurfaceKind::FirstType, OdeTarget::Flat, 2.0, 1.0, (0.2, 1.0, 0.1), 1.2),
        OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.5, 0.7, (0.3, f0, fp0), 1.0),
        OdeProblem::new(SurfaceKind::SecondType, OdeTarget::Flat, 1.0, 1.0, (1.0, 0.5, 1.5), 2.0),
        OdeProblem::new(SurfaceKind::SecondType, OdeTarget::FlatNormal, 0.8, 1.2, (0.5, 1.0, -1.4), 1.5),
    ];
    let residuals = worst(&problems, |p| {
        let sol = solve_ode(p).map_err(|e| e.to_string())?;
        sol.check().map_err(|e| format!("{} {}: {e}", p.kind.as_str(), p.target.as_str()))?;
        let r = sol.interior_residuals().map_err(|e| e.to_string())?;
        Ok(r.iter().fold(0.0_f64, |m, x| m.max(x.abs())))
    });
    let halving = worst(&problems, |p| {
        let mut p = p.clone();
        p.h_max = 0.1;
        let a = solve_ode(&p).map_err(|e| e.to_string())?;
        let mut q = p.clone();
        q.rel_tol /= 2.0;
        let b = solve_ode(&q).map_err(|e| e.to_string())?;
        let (fa, fb) = (a.f.last().copied().unwrap_or(f64::NAN), b.f.last().copied().unwrap_or(f64::NAN));
        Ok((fa - fb).abs() / (10.0 * p.rel_tol))
    });
    vec![
        bounded(M, "minimal meridians: |nu1 + nu2| = 0", mean_curvature, 1e-8),
        bounded(M, "minimal meridians: conservation spread and recovered A", conservation, 1e-6),
        bounded(M, "parabolic families: k = 0", parabolic, 1e-10),
        bounded(M, "flat-normal solver reproduces circle and hyperbola", analytic, 1e-6),
        bounded(M, "solved meridians: defining residual at interior nodes", residuals, 1e-6),
        bounded(M, "tolerance halving: final f drift / (10 rel_tol)", halving, 1.0),
    ]
}

fn cli_runner(_seed: u64, tol: f64) -> Vec<Check> {
    const M: &str = "cli_runner";
    let deterministic = (|| -> CliResult<bool> {
        let s = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7))?)?;
        let (us, vs) = (linspace(-0.7, 0.7, 10), linspace(0.0, 2.0, 10));
        let mut outputs = Vec::new();
        for format in [Format::Csv, Format::Csv, Format::Json, Format::Json] {
            let table = sweep(&s, &s.as_patch(), &us, &vs, tol)?;
            let mut buf = Vec::new();
            table.write(format, &mut buf)?;
            outputs.push(buf);
        }
        Ok(outputs[0] == outputs[1] && outputs[2] == outputs[3])
    })();
    let faces = grid_faces(10, 10);
    let mesh_ok = faces.len() == 81 && faces.iter().flatten().all(|&i| i < 100);
    vec![
        Check {
            module: M,
            name: "sweep output is byte-identical across runs",
            pass: matches!(deterministic, Ok(true)),
            detail: match deterministic {
                Ok(b) => format!("identical: {b}"),
                Err(e) => e.to_string(),
            },
        },
        Check {
            module: M,
            name: "10x10 mesh has 100 vertices and 81 quads",
            pass: mesh_ok,
            detail: format!("{} faces", faces.len()),
        },
    ]
}

pub fn checks(scope: &str, seed: u64, tol: f64) -> CliResult<Vec<Check>> {
    let run = |m: &str| match m {
        "minkowski_core" => minkowski_core(seed, tol),
        "surface_kernel" => surface_kernel(seed, tol),
        "rotational_surfaces" => rotational_surfaces(seed, tol),
        "meridian_solvers" => meridian_solvers(seed, tol),
        _ => cli_runner(seed, tol),
    };
    match scope {
        "all" => Ok(MODULES.iter().flat_map(|m| run(m)).collect()),
        m if MODULES.contains(&m) => Ok(run(m)),
        other => Err(CliError::Input(format!("unknown scope '{other}'; expected all or one of {}", MODULES.join(", ")))),
    }
}

pub fn run(scope: &str, seed: u64, tol: f64, mut out: impl Write) -> CliResult<()> {
    let checks = checks(scope, seed, tol)?;
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "{} passed, {failed} failed (seed {seed})", checks.len() - failed)?;
    out.flush()?;
    match failed {
        0 => Ok(()),
        n => Err(CliError::Verify(n)),
    }
}
