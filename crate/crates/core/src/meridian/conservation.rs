use crate::error::{Error, Result};
use crate::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};

/// Relative bound on the minimal residual accepted by [`conservation_check`].
pub const MINIMAL_TOL: f64 = 1e-8;

/// Values of `G² (μ² + ν1²)` along a minimal meridian.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub c_squared: Vec<f64>,
    /// `(max - min) / |mean|`
    pub max_spread: f64,
}

impl ConservationReport {
    pub fn mean(&self) -> f64 {
        self.c_squared.iter().sum::<f64>() / self.c_squared.len() as f64
    }

    /// `A = c² / (α² + β²)`
    pub fn recovered_a(&self, alpha: f64, beta: f64) -> f64 {
        self.mean() / (alpha * alpha + beta * beta)
    }
}

/// Evaluates the conserved quantity of a minimal surface at `u_samples`.
pub fn conservation_check(s: &RotationalSurface, u_samples: &[f64]) -> Result<ConservationReport> {
    if u_samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let mut c_squared = Vec::with_capacity(u_samples.len());
    for &u in u_samples {
        let m = s.checked_metric(u)?;
        let (q, p) = (m.q / m.e, m.p / m.g);
        let residual = q - p;
        if residual.abs() > MINIMAL_TOL * 1f64.max(q.abs()).max(p.abs()) {
            return Err(Error::NotMinimal { u, residual });
        }
        let fi = s.closed_frame_invariants(u)?;
        c_squared.push(m.g * m.g * (fi.mu * fi.mu + fi.nu1 * fi.nu1));
    }
    let max = c_squared.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = c_squared.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = c_squared.iter().sum::<f64>() / c_squared.len() as f64;
    Ok(ConservationReport { max_spread: (max - min) / mean.abs(), c_squared })
}

/// Samples used by [`normalized_speed_residual`].
const SPEED_SAMPLES: usize = 257;

/// Largest deviation of `f'² ± g'²` from 1 along the meridian.
pub fn normalized_speed_residual(m: &MeridianCurve, kind: SurfaceKind) -> f64 {
    m.grid(SPEED_SAMPLES)
        .into_iter()
        .map(|u| {
            let j = m.eval(u);
            let speed = match kind {
                SurfaceKind::FirstType => j.fp * j.fp + j.gp * j.gp,
                SurfaceKind::SecondType => j.fp * j.fp - j.gp * j.gp,
            };
            (speed - 1.0).abs()
        })
        .fold(0.0, f64::max)
}
