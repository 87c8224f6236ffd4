//! Seeded random points on rotational surfaces, drawn across every meridian
//! preset and both surface types.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::meridian::minimal_meridian;
use crate::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};

/// Smallest `E` and `G` accepted at a sample point.
pub const SAMPLE_MARGIN: f64 = 0.05;

pub const PRESETS: [&str; 5] = ["line", "power-law", "circle", "hyperbolic", "minimal"];

#[derive(Clone, Debug)]
pub struct Sample {
    pub preset: &'static str,
    pub surface: RotationalSurface,
    pub u: f64,
    pub v: f64,
}

fn random_meridian(rng: &mut ChaCha8Rng, preset: &str, kind: SurfaceKind, alpha: f64, beta: f64) -> Option<MeridianCurve> {
    let signed = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
        let x = rng.gen_range(lo..hi);
        if rng.gen_bool(0.5) {
            x
        } else {
            -x
        }
    };
    match preset {
        "line" => {
            let (a, b) = (signed(rng, 0.1, 1.0), signed(rng, 0.1, 1.0));
            MeridianCurve::line(a, b, (0.2, 3.0)).ok()
        }
        "power-law" => {
            let c = signed(rng, 0.2, 2.0);
            MeridianCurve::power_law(c, -(beta * beta) / (alpha * alpha), (0.3, 3.0)).ok()
        }
        "circle" => MeridianCurve::circle(rng.gen_range(0.5..2.0), (-1.2, 1.2)).ok(),
        "hyperbolic" => MeridianCurve::hyperbolic(rng.gen_range(0.5..2.0), (0.05, 2.0)).ok(),
        "minimal" => {
            let a = rng.gen_range(0.1..1.0);
            let c = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let eps = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            minimal_meridian(kind, alpha, beta, a, c, eps, (-3.0, 3.0)).ok()
        }
        _ => None,
    }
}

/// Largest boost parameter `β v` drawn by the sampler.
///
/// The embedding's coordinates grow like `cosh(β v)` while the invariants
/// do not depend on `v`; beyond this bound double precision cancellation
/// dominates every comparison.
pub const MAX_BOOST: f64 = 2.0;

/// Upper end of the sampled `v` range: `min(2π, MAX_BOOST / β)`.
pub fn max_v(beta: f64) -> f64 {
    (MAX_BOOST / beta).min(std::f64::consts::TAU)
}

/// `n` samples cycling through the presets; types and parameters are random.
///
/// Points are drawn by rejection until `E, G > SAMPLE_MARGIN`.
pub fn random_samples(seed: u64, n: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while out.len() < n {
        let preset = PRESETS[i % PRESETS.len()];
        i += 1;
        let kind = if rng.gen_bool(0.5) { SurfaceKind::FirstType } else { SurfaceKind::SecondType };
        let (alpha, beta) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let Some(meridian) = random_meridian(&mut rng, preset, kind, alpha, beta) else {
            continue;
        };
        let Ok(surface) = RotationalSurface::new(kind, alpha, beta, meridian) else {
            continue;
        };
        let (lo, hi) = surface.meridian().domain();
        let mut found = None;
        for _ in 0..200 {
            let u = rng.gen_range(lo..hi);
            let m = surface.metric(u);
            if m.is_finite() && m.e > SAMPLE_MARGIN && m.g > SAMPLE_MARGIN {
                found = Some(u);
                break;
            }
        }
        if let Some(u) = found {
            let v = rng.gen_range(0.0..max_v(beta));
            out.push(Sample { preset, surface, u, v });
        } else {
            i -= 1;
        }
    }
    out
}
