use crate::error::{Error, Result};
use crate::rotational::{MeridianCurve, MeridianJet, MeridianShape, SurfaceKind};

use super::admissible_interval;

/// Minimal meridian written as a graph over `f`:
/// `g = (√A/β) sin(ε (β/α) ln|α f + √(α² f² ∓ A)| + C)`,
/// with `-A` for the first type and `+A` for the second.
///
/// The meridian parameter is `f` itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimalProfile {
    pub kind: SurfaceKind,
    pub alpha: f64,
    pub beta: f64,
    pub a_const: f64,
    pub phase: f64,
    /// `ε = ±1`
    pub sign: f64,
}

impl MinimalProfile {
    pub fn new(kind: SurfaceKind, alpha: f64, beta: f64, a_const: f64, phase: f64, sign: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha}, beta = {beta} must be positive")));
        }
        if !(a_const > 0.0 && a_const.is_finite()) {
            return Err(Error::InvalidParameter(format!("A = {a_const} must be positive")));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidParameter(format!("C = {phase} must be finite")));
        }
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::InvalidParameter(format!("eps = {sign} must be +1 or -1")));
        }
        Ok(Self { kind, alpha, beta, a_const, phase, sign })
    }

    /// `α² t² ∓ A`
    fn radicand(&self, t: f64) -> f64 {
        let a2t2 = self.alpha * self.alpha * t * t;
        match self.kind {
            SurfaceKind::FirstType => a2t2 - self.a_const,
            SurfaceKind::SecondType => a2t2 + self.a_const,
        }
    }

    /// Argument of the sine.
    pub fn angle(&self, t: f64) -> f64 {
        let s = self.radicand(t).sqrt();
        self.sign * self.beta / self.alpha * (self.alpha * t + s).abs().ln() + self.phase
    }

    pub fn eval(&self, t: f64) -> MeridianJet {
        let (a, b, eps) = (self.alpha, self.beta, self.sign);
        let s = self.radicand(t).sqrt();
        let ds = a * a * t / s;
        let theta = self.angle(t);
        let dtheta = eps * b / s;
        let ddtheta = -eps * b * ds / (s * s);
        let amp = self.a_const.sqrt() / b;
        let (sin, cos) = theta.sin_cos();
        MeridianJet {
            f: t,
            fp: 1.0,
            fpp: 0.0,
            g: amp * sin,
            gp: amp * cos * dtheta,
            gpp: amp * (-sin * dtheta * dtheta + cos * ddtheta),
        }
    }
}

/// Minimal meridian restricted to the longest admissible sub-interval of
/// `interval` (values of `f`).
pub fn minimal_meridian(
    kind: SurfaceKind,
    alpha: f64,
    beta: f64,
    a_const: f64,
    phase: f64,
    sign_eps: f64,
    interval: (f64, f64),
) -> Result<MeridianCurve> {
    let profile = MinimalProfile::new(kind, alpha, beta, a_const, phase, sign_eps)?;
    let full = MeridianCurve::new(MeridianShape::Minimal(profile), interval)?;
    let domain = admissible_interval(kind, alpha, beta, &full)?;
    MeridianCurve::new(MeridianShape::Minimal(profile), domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotational::RotationalSurface;

    #[test]
    fn vanishes_where_the_angle_does() {
        // choose C so that the angle is zero at f0
        let p = MinimalProfile::new(SurfaceKind::FirstType, 1.3, 0.7, 0.5, 0.0, 1.0).unwrap();
        let f0 = 1.1;
        let q = MinimalProfile { phase: -p.angle(f0), ..p };
        assert!(q.eval(f0).g.abs() < 1e-15);
    }

    #[test]
    fn chain_rule_derivatives() {
        for kind in [SurfaceKind::FirstType, SurfaceKind::SecondType] {
            let p = MinimalProfile::new(kind, 1.3, 0.7, 0.5, 0.4, -1.0).unwrap();
            let h = 1e-5;
            for t in [0.8, 1.5, 3.0] {
                let (j, a, b) = (p.eval(t), p.eval(t + h), p.eval(t - h));
                assert!(((a.g - b.g) / (2.0 * h) - j.gp).abs() < 1e-8);
                assert!(((a.gp - b.gp) / (2.0 * h) - j.gpp).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn first_type_is_minimal_on_requested_interval() {
        let m = minimal_meridian(SurfaceKind::FirstType, 1.0, 1.0, 0.25, 0.0, 1.0, (0.6, 2.0)).unwrap();
        assert_eq!(m.domain(), (0.6, 2.0));
        let s = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, m).unwrap();
        for u in s.meridian().grid(50) {
            let f = s.closed_frame_invariants(u).unwrap();
            assert!((f.nu1 + f.nu2).abs() < 1e-8);
        }
    }

    #[test]
    fn second_type_amplitude() {
        let m = minimal_meridian(SurfaceKind::SecondType, 1.0, 2.0, 1.0, 0.0, 1.0, (0.2, 5.0)).unwrap();
        for u in m.grid(200) {
            assert!(m.eval(u).g.abs() <= 0.5 + 1e-15);
        }
    }

    #[test]
    fn first_type_interval_is_clipped() {
        // |f| > √A/α = 0.5 is required
        let m = minimal_meridian(SurfaceKind::FirstType, 1.0, 1.0, 0.25, 0.0, 1.0, (0.0, 2.0)).unwrap();
        let (lo, hi) = m.domain();
        assert!(lo > 0.5 && lo < 0.51 && hi == 2.0, "{lo} {hi}");
        assert!(matches!(
            minimal_meridian(SurfaceKind::FirstType, 1.0, 1.0, 0.25, 0.0, 1.0, (-0.4, 0.4)),
            Err(Error::EmptyDomain(_))
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MinimalProfile::new(SurfaceKind::FirstType, 1.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(MinimalProfile::new(SurfaceKind::FirstType, 1.0, 1.0, 1.0, 0.0, 0.5).is_err());
        assert!(MinimalProfile::new(SurfaceKind::FirstType, -1.0, 1.0, 1.0, 0.0, 1.0).is_err());
    }
}
