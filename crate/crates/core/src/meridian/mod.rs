//! Meridians realizing the special classes of rotational surfaces: minimal
//! and parabolic families in closed form, flat and flat-normal families by
//! numerical integration.

mod conservation;
mod minimal;
mod ode;
mod parabolic;

pub use conservation::{conservation_check, normalized_speed_residual, ConservationReport};
pub use minimal::{minimal_meridian, MinimalProfile};
pub use ode::{
    solve_ode, Direction, OdeProblem, OdeTarget, SolvedMeridian, Termination, DEFAULT_GUARD_TOL,
    DEFAULT_H_INIT, DEFAULT_H_MAX, DEFAULT_RESOLUTION_LIMIT,
};
pub use parabolic::{parabolic_meridian, ParabolicCase};

use crate::error::{Error, Result};
use crate::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};

/// Samples used when scanning an interval for the type conditions.
pub const ADMISSIBILITY_SAMPLES: usize = 4001;

/// Margin required of `E` and `G` when scanning for admissible intervals.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-6;

/// Longest sub-interval of the meridian's domain on which the type
/// conditions hold at every scan sample, with margin.
pub fn admissible_interval(
    kind: SurfaceKind,
    alpha: f64,
    beta: f64,
    meridian: &MeridianCurve,
) -> Result<(f64, f64)> {
    let s = RotationalSurface::new(kind, alpha, beta, meridian.clone())?;
    let grid = meridian.grid(ADMISSIBILITY_SAMPLES);
    let ok: Vec<bool> = grid
        .iter()
        .map(|&u| {
            let m = s.metric(u);
            m.is_finite() && m.e > ADMISSIBILITY_MARGIN && m.g > ADMISSIBILITY_MARGIN
        })
        .collect();
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for i in 0..=ok.len() {
        match (i < ok.len() && ok[i], start) {
            (true, None) => start = Some(i),
            (false, Some(s0)) => {
                if best.map_or(true, |(a, b)| i - 1 - s0 > b - a) {
                    best = Some((s0, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    match best {
        Some((a, b)) if b > a => Ok((grid[a], grid[b])),
        _ => {
            let (lo, hi) = meridian.domain();
            Err(Error::EmptyDomain(format!(
                "no sub-interval of [{lo}, {hi}] satisfies the {} type conditions",
                kind.as_str()
            )))
        }
    }
}
