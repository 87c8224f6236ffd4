//! Closed-form invariants and the characterizing equations of the special
//! classes, evaluated along the meridian.

use crate::error::{Error, Result};
use crate::minkowski::DEFAULT_TOL;
use crate::surface::FrameInvariants;

use super::surface::{MeridianMetric, RotationalSurface, SurfaceKind};

/// `k`, `kappa` and the Gauss curvature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureInvariants {
    pub k: f64,
    pub kappa: f64,
    pub gauss: f64,
}

impl RotationalSurface {
    /// Closed-form `k`, `kappa`, `K` at meridian parameter `u`.
    pub fn closed_curvatures(&self, u: f64) -> Result<CurvatureInvariants> {
        let m = self.checked_metric(u)?;
        let (a, b) = (self.alpha(), self.beta());
        let ab2 = a * a * b * b;
        let (e2, g2) = (m.e * m.e, m.g * m.g);
        let k = 4.0 * ab2 * m.d * m.d * m.q * m.p / (e2 * m.e * g2 * m.g);
        let kappa = a * b * m.d * (m.g * m.q + m.e * m.p) / (e2 * g2);
        let numerator = ab2 * m.e * m.d * m.d - m.g * m.p * m.q;
        let gauss = match self.kind() {
            SurfaceKind::FirstType => numerator / (e2 * g2),
            SurfaceKind::SecondType => -numerator / (e2 * g2),
        };
        Ok(CurvatureInvariants { k, kappa, gauss })
    }

    /// Closed-form frame invariants; `gamma1 = lambda = beta1 = 0` always.
    pub fn closed_frame_invariants(&self, u: f64) -> Result<FrameInvariants> {
        let m = self.checked_metric(u)?;
        let (a, b) = (self.alpha(), self.beta());
        let j = m.jet;
        let se = m.e.sqrt();
        let seg = se * m.g;
        let (gamma2, mu, beta2) = match self.kind() {
            SurfaceKind::FirstType => (
                -(a * a * j.f * j.fp - b * b * j.g * j.gp) / seg,
                a * b * m.d / seg,
                a * b * (j.f * j.fp + j.g * j.gp) / seg,
            ),
            SurfaceKind::SecondType => (
                -(a * a * j.f * j.fp + b * b * j.g * j.gp) / seg,
                -a * b * m.d / seg,
                a * b * (j.g * j.gp - j.f * j.fp) / seg,
            ),
        };
        Ok(FrameInvariants {
            gamma1: 0.0,
            gamma2,
            nu1: m.q / (m.e * se),
            nu2: -m.p / seg,
            lambda: 0.0,
            mu,
            beta1: 0.0,
            beta2,
        })
    }

    /// Meridian data with the printed denominators checked for zeros first,
    /// then the type conditions.
    fn residual_metric(&self, u: f64) -> Result<MeridianMetric> {
        if !self.meridian().contains(u) {
            return self.checked_metric(u);
        }
        let m = self.metric(u);
        let (e_name, g_name) = match self.kind() {
            SurfaceKind::FirstType => ("f'^2 + g'^2", "alpha^2 f^2 - beta^2 g^2"),
            SurfaceKind::SecondType => ("f'^2 - g'^2", "alpha^2 f^2 + beta^2 g^2"),
        };
        if m.e.abs() <= DEFAULT_TOL {
            return Err(Error::SingularConfiguration { u, denominator: e_name });
        }
        if m.g.abs() <= DEFAULT_TOL {
            return Err(Error::SingularConfiguration { u, denominator: g_name });
        }
        self.checked_metric(u)
    }

    /// Flatness equation, left minus right side, divided by `E^2 G^2`.
    ///
    /// The scaling makes the residual equal `±K`.
    pub fn residual_flat(&self, u: f64) -> Result<f64> {
        let m = self.residual_metric(u)?;
        let (a, b) = (self.alpha(), self.beta());
        let lhs = a * a * b * b * m.e * m.d * m.d;
        let rhs = m.g * m.p * m.q;
        Ok((lhs - rhs) / (m.e * m.e * m.g * m.g))
    }

    /// `Q/E + P/G`: vanishes iff the normal connection is flat.
    pub fn residual_flat_normal(&self, u: f64) -> Result<f64> {
        let m = self.residual_metric(u)?;
        Ok(m.q / m.e + m.p / m.g)
    }

    /// `Q/E - P/G`: vanishes iff the surface is minimal.
    pub fn residual_minimal(&self, u: f64) -> Result<f64> {
        let m = self.residual_metric(u)?;
        Ok(m.q / m.e - m.p / m.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotational::MeridianCurve;

    fn surf(kind: SurfaceKind, alpha: f64, beta: f64, m: MeridianCurve) -> RotationalSurface {
        RotationalSurface::new(kind, alpha, beta, m).unwrap()
    }

    #[test]
    fn lines_through_origin_are_developable() {
        for kind in [SurfaceKind::FirstType, SurfaceKind::SecondType] {
            let s = surf(kind, 1.7, 0.9, MeridianCurve::line(0.4, 0.0, (0.3, 3.0)).unwrap());
            for u in s.meridian().grid(9) {
                let c = s.closed_curvatures(u).unwrap();
                assert_eq!((c.k, c.kappa, c.gauss), (0.0, 0.0, 0.0));
            }
        }
    }

    #[test]
    fn offset_lines_are_parabolic_with_normal_curvature() {
        for kind in [SurfaceKind::FirstType, SurfaceKind::SecondType] {
            let s = surf(kind, 1.7, 0.9, MeridianCurve::line(0.4, 0.3, (0.5, 3.0)).unwrap());
            for u in s.meridian().grid(9) {
                let c = s.closed_curvatures(u).unwrap();
                assert_eq!(c.k, 0.0);
                assert!(c.kappa.abs() > 1e-4);
            }
        }
    }

    #[test]
    fn frame_invariants_structure() {
        let s = surf(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7)).unwrap());
        let f = s.closed_frame_invariants(0.3).unwrap();
        assert_eq!((f.gamma1, f.lambda, f.beta1), (0.0, 0.0, 0.0));
        // Normal curvature vanishes on the circle profile: nu1 = nu2.
        // Direct evaluation: nu1 = -1, nu2 = -(cos^2 - sin^2)/cos(2u) = -1.
        assert!((f.nu1 + 1.0).abs() < 1e-15);
        assert!((f.nu2 + 1.0).abs() < 1e-14);
        let c = s.closed_curvatures(0.3).unwrap();
        assert!((c.kappa - (f.nu1 - f.nu2) * f.mu).abs() < 1e-14);
    }

    #[test]
    fn residuals_on_examples() {
        let ex1 = surf(SurfaceKind::FirstType, 1.3, 0.8, MeridianCurve::circle(2.0, (-0.5, 0.5)).unwrap());
        let ex2 = surf(SurfaceKind::SecondType, 0.7, 1.6, MeridianCurve::hyperbolic(1.5, (0.1, 2.0)).unwrap());
        for s in [&ex1, &ex2] {
            for u in s.meridian().grid(11) {
                assert!(s.residual_flat_normal(u).unwrap().abs() < 1e-14);
            }
        }
    }

    #[test]
    fn flat_residual_is_gauss_curvature() {
        let s = surf(SurfaceKind::FirstType, 1.2, 0.5, MeridianCurve::line(0.3, 0.2, (0.5, 2.0)).unwrap());
        let t = surf(SurfaceKind::SecondType, 1.2, 0.5, MeridianCurve::line(0.3, 0.2, (0.5, 2.0)).unwrap());
        assert!((s.residual_flat(1.1).unwrap() - s.closed_curvatures(1.1).unwrap().gauss).abs() < 1e-15);
        assert!((t.residual_flat(1.1).unwrap() + t.closed_curvatures(1.1).unwrap().gauss).abs() < 1e-15);
    }

    #[test]
    fn singular_denominators_are_reported() {
        // G = cos(2u) vanishes at pi/4 for the unit circle profile.
        let s = surf(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (0.0, 1.0)).unwrap());
        assert!(matches!(
            s.residual_minimal(std::f64::consts::FRAC_PI_4),
            Err(Error::SingularConfiguration { .. })
        ));
        assert!(matches!(s.residual_minimal(0.9), Err(Error::DomainViolation { .. })));
    }
}
