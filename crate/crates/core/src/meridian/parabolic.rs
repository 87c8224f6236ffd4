use crate::error::{Error, Result};
use crate::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};

use super::ADMISSIBILITY_SAMPLES;

/// The three families of meridians, with `f = u`, whose rotational surfaces
/// consist of parabolic points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParabolicCase {
    /// `g = a u`, `a ≠ 0`
    DevelopableRuled { a: f64 },
    /// `g = a u + b`, `a, b ≠ 0`
    NonDevelopableRuled { a: f64, b: f64 },
    /// `g = c u^(-β²/α²)`, `c ≠ 0`
    PowerLaw { c: f64 },
}

impl ParabolicCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::DevelopableRuled { .. } => "developable-ruled",
            Self::NonDevelopableRuled { .. } => "non-developable-ruled",
            Self::PowerLaw { .. } => "power-law",
        }
    }
}

/// Meridian of the given parabolic family on `interval`.
///
/// Fails with `DomainViolation` at the first scan sample where the type
/// conditions do not hold.
pub fn parabolic_meridian(
    kind: SurfaceKind,
    case: ParabolicCase,
    alpha: f64,
    beta: f64,
    interval: (f64, f64),
) -> Result<MeridianCurve> {
    let nonzero = |name: &str, x: f64| {
        if x != 0.0 && x.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{name} = {x} must be finite and nonzero")))
        }
    };
    let meridian = match case {
        ParabolicCase::DevelopableRuled { a } => {
            nonzero("a", a)?;
            MeridianCurve::line(a, 0.0, interval)?
        }
        ParabolicCase::NonDevelopableRuled { a, b } => {
            nonzero("a", a)?;
            nonzero("b", b)?;
            MeridianCurve::line(a, b, interval)?
        }
        ParabolicCase::PowerLaw { c } => {
            nonzero("c", c)?;
            MeridianCurve::power_law(c, -(beta * beta) / (alpha * alpha), interval)?
        }
    };
    let s = RotationalSurface::new(kind, alpha, beta, meridian)?;
    s.validate(ADMISSIBILITY_SAMPLES)?;
    Ok(s.meridian().clone())
}
