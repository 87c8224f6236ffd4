//! Pointwise invariants: `k`, `kappa`, Gauss curvature, mean curvature vector,
//! point classification and the eight invariants of the geometric frame.

use crate::error::{Error, Result};
use crate::minkowski::{inner, orientation_det, SpacetimeVector};

use super::forms::{FirstForm, SecondForm};
use super::patch::{Jet, SurfacePatch};

/// Default step for differentiating the geometric frame field.
pub const DEFAULT_FRAME_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl PointClass {
    pub fn from_k(k: f64, tol: f64) -> Self {
        if k > tol {
            Self::Elliptic
        } else if k < -tol {
            Self::Hyperbolic
        } else {
            Self::Parabolic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Elliptic => "elliptic",
            Self::Parabolic => "parabolic",
            Self::Hyperbolic => "hyperbolic",
        }
    }
}

/// The eight invariants of the geometric frame `{x, y, b, l}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameInvariants {
    pub gamma1: f64,
    pub gamma2: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub lambda: f64,
    pub mu: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl FrameInvariants {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.gamma1,
            self.gamma2,
            self.nu1,
            self.nu2,
            self.lambda,
            self.mu,
            self.beta1,
            self.beta2,
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub first: FirstForm,
    pub second: SecondForm,
    pub k: f64,
    pub kappa: f64,
    /// Gauss curvature.
    pub gauss: f64,
    /// Mean curvature vector.
    pub h: SpacetimeVector,
    /// `sqrt(|<H,H>|)`
    pub norm_h: f64,
    /// `sign <H,H>`, undefined when `H` is (numerically) lightlike or zero.
    pub epsilon: Option<f64>,
    pub point_class: PointClass,
    pub is_flat_point: bool,
    pub is_minimal_point: bool,
    pub frame: Option<FrameInvariants>,
}

/// Normal parts of the second fundamental tensor on the orthonormal tangent
/// pair `x = z_u / |z_u|`, `y` = normalized component of `z_v` orthogonal to `x`.
struct SecondTensor {
    xx: SpacetimeVector,
    xy: SpacetimeVector,
    yy: SpacetimeVector,
}

impl SecondTensor {
    fn new(jet: &Jet, first: &FirstForm, second: &SecondForm) -> Self {
        let r = first.f / first.e;
        let ny2 = first.g - first.f * r;
        let xx = second.normal_part(&jet.z_uu) * (1.0 / first.e);
        let xy = second.normal_part(&(jet.z_uv - r * jet.z_uu)) * (1.0 / (first.e * ny2).sqrt());
        let yy = second.normal_part(&(jet.z_vv - 2.0 * r * jet.z_uv + r * r * jet.z_uu))
            * (1.0 / ny2);
        Self { xx, xy, yy }
    }

    fn mean_curvature(&self) -> SpacetimeVector {
        (self.xx + self.yy) * 0.5
    }

    /// Gauss equation in a flat ambient space.
    fn gauss_curvature(&self) -> f64 {
        inner(&self.xx, &self.yy) - self.xy.square()
    }
}

/// All pointwise invariants at `(u, v)`.
///
/// The frame invariants are filled only where the parameters are principal
/// and the mean curvature vector is non-zero and non-lightlike.
pub fn invariants(patch: &SurfacePatch, u: f64, v: f64, tol: f64) -> Result<InvariantReport> {
    let jet = patch.jet(u, v)?;
    let first = FirstForm::from_jet(&jet, u, v, tol)?;
    let second = SecondForm::from_jet(&jet, &first, tol)?;
    let det = first.det();
    let k = (second.l * second.n - second.m * second.m) / det;
    let kappa = (first.e * second.n + first.g * second.l - 2.0 * first.f * second.m) / (2.0 * det);

    let sigma = SecondTensor::new(&jet, &first, &second);
    let h = sigma.mean_curvature();
    let hh = h.square();
    let epsilon = (hh.abs() > tol).then(|| hh.signum());
    let is_minimal_point = h.max_norm() <= tol;

    let frame = match frame_invariants_with_step(patch, u, v, tol, DEFAULT_FRAME_STEP) {
        Ok(f) => Some(f),
        Err(
            Error::NotPrincipalParameters { .. }
            | Error::MinimalPoint { .. }
            | Error::LightlikeMeanCurvature { .. },
        ) => None,
        Err(e) => return Err(e),
    };

    Ok(InvariantReport {
        first,
        second,
        k,
        kappa,
        gauss: sigma.gauss_curvature(),
        h,
        norm_h: hh.abs().sqrt(),
        epsilon,
        point_class: PointClass::from_k(k, tol),
        is_flat_point: second.max_abs() <= tol,
        is_minimal_point,
        frame,
    })
}

/// Geometric frame `{x, y, b, l}` at one point of a principally parametrized patch.
struct GeometricFrame {
    jet: Jet,
    first: FirstForm,
    b: SpacetimeVector,
    l: SpacetimeVector,
}

impl GeometricFrame {
    fn at(patch: &SurfacePatch, u: f64, v: f64, tol: f64, check_principal: bool) -> Result<Self> {
        let jet = patch.jet_unchecked(u, v)?;
        let first = FirstForm::from_jet(&jet, u, v, tol)?;
        let second = SecondForm::from_jet(&jet, &first, tol)?;
        let f_scale = (first.e * first.g).sqrt().max(1.0);
        let m_scale = second.l.abs().max(second.n.abs()).max(1.0);
        if check_principal && (first.f.abs() > tol * f_scale || second.m.abs() > tol * m_scale) {
            return Err(Error::NotPrincipalParameters { u, v, f: first.f, m: second.m });
        }
        let h = SecondTensor::new(&jet, &first, &second).mean_curvature();
        if h.max_norm() <= tol {
            return Err(Error::MinimalPoint { u, v });
        }
        let hh = h.square();
        if hh.abs() <= tol {
            return Err(Error::LightlikeMeanCurvature { u, v });
        }
        let b = h * (1.0 / hh.abs().sqrt());
        // b = p n1 + q n2; the normal orthogonal to b is q n1 + p n2.
        let p = inner(&b, &second.n1);
        let q = -inner(&b, &second.n2);
        let mut l = q * second.n1 + p * second.n2;
        let x = jet.z_u * (1.0 / first.e.sqrt());
        let y = jet.z_v * (1.0 / first.g.sqrt());
        if orientation_det(&x, &y, &b, &l) < 0.0 {
            l = -l;
        }
        Ok(Self { jet, first, b, l })
    }
}

/// The eight frame invariants with the default frame-differencing step.
pub fn frame_invariants(
    patch: &SurfacePatch,
    u: f64,
    v: f64,
    tol: f64,
) -> Result<FrameInvariants> {
    frame_invariants_with_step(patch, u, v, tol, DEFAULT_FRAME_STEP)
}

/// The eight frame invariants; requires principal parameters (`F = M = 0`).
///
/// `nu1, nu2, lambda, mu` are projections of second partials onto `b` and
/// `l`; `gamma1, gamma2, beta1, beta2` differentiate the frame field with
/// central differences of step `h`.
pub fn frame_invariants_with_step(
    patch: &SurfacePatch,
    u: f64,
    v: f64,
    tol: f64,
    h: f64,
) -> Result<FrameInvariants> {
    if !patch.domain().contains(u, v) {
        return Err(Error::OutOfDomain { u, v });
    }
    let c = GeometricFrame::at(patch, u, v, tol, true)?;
    let (e, g) = (c.first.e, c.first.g);
    let sqrt_eg = (e * g).sqrt();

    let nu1 = inner(&c.jet.z_uu, &c.b) / e;
    let nu2 = inner(&c.jet.z_vv, &c.b) / g;
    let lambda = inner(&c.jet.z_uv, &c.b) / sqrt_eg;
    let mu = inner(&c.jet.z_uv, &c.l) / sqrt_eg;

    let up = GeometricFrame::at(patch, u + h, v, tol, false)?;
    let um = GeometricFrame::at(patch, u - h, v, tol, false)?;
    let vp = GeometricFrame::at(patch, u, v + h, tol, false)?;
    let vm = GeometricFrame::at(patch, u, v - h, tol, false)?;
    let inv2h = 0.5 / h;

    let db_du = (up.b - um.b) * inv2h;
    let db_dv = (vp.b - vm.b) * inv2h;
    let beta1 = inner(&db_du, &c.l) / e.sqrt();
    let beta2 = inner(&db_dv, &c.l) / g.sqrt();

    // gamma1 = -y(ln sqrt E), gamma2 = -x(ln sqrt G)
    let gamma1 = -0.5 * (vp.first.e.ln() - vm.first.e.ln()) * inv2h / g.sqrt();
    let gamma2 = -0.5 * (up.first.g.ln() - um.first.g.ln()) * inv2h / e.sqrt();

    Ok(FrameInvariants { gamma1, gamma2, nu1, nu2, lambda, mu, beta1, beta2 })
}

/// Magnitude of the allied mean curvature vector, `|lambda| sqrt(kappa^2 - k) / 2`.
///
/// `None` when the report carries no frame invariants.
pub fn allied_mean_curvature_magnitude(report: &InvariantReport) -> Option<f64> {
    let frame = report.frame?;
    let disc = (report.kappa * report.kappa - report.k).max(0.0);
    Some(frame.lambda.abs() * disc.sqrt() / 2.0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::minkowski::DEFAULT_TOL;
    use crate::surface::patch::{Embedding, ParamDomain};

    struct Plane;
    impl Embedding for Plane {
        fn position(&self, u: f64, v: f64) -> SpacetimeVector {
            SpacetimeVector::new(u, v, 0.0, 0.0)
        }
        fn analytic_jet(&self, u: f64, v: f64) -> Option<Jet> {
            Some(Jet {
                z: self.position(u, v),
                z_u: SpacetimeVector::basis(1),
                z_v: SpacetimeVector::basis(2),
                z_uu: SpacetimeVector::ZERO,
                z_uv: SpacetimeVector::ZERO,
                z_vv: SpacetimeVector::ZERO,
            })
        }
    }

    #[test]
    fn plane_has_vanishing_invariants() {
        let p = SurfacePatch::analytic(Arc::new(Plane), ParamDomain::unbounded());
        let r = invariants(&p, 0.2, 0.1, DEFAULT_TOL).unwrap();
        assert_eq!((r.k, r.kappa, r.gauss), (0.0, 0.0, 0.0));
        assert_eq!(r.h, SpacetimeVector::ZERO);
        assert!(r.is_flat_point && r.is_minimal_point);
        assert_eq!(r.epsilon, None);
        assert_eq!(r.point_class, PointClass::Parabolic);
        assert!(r.frame.is_none());
        assert_eq!(
            frame_invariants(&p, 0.2, 0.1, DEFAULT_TOL),
            Err(Error::MinimalPoint { u: 0.2, v: 0.1 })
        );
    }

    fn report_with(lambda: f64, kappa: f64, k: f64) -> InvariantReport {
        let p = SurfacePatch::analytic(Arc::new(Plane), ParamDomain::unbounded());
        let mut r = invariants(&p, 0.0, 0.0, DEFAULT_TOL).unwrap();
        r.frame = Some(FrameInvariants { lambda, ..Default::default() });
        r.kappa = kappa;
        r.k = k;
        r
    }

    #[test]
    fn allied_magnitude_arithmetic() {
        assert_eq!(allied_mean_curvature_magnitude(&report_with(0.5, 1.0, 0.0)), Some(0.25));
        assert_eq!(allied_mean_curvature_magnitude(&report_with(0.5, 2.0, 4.0)), Some(0.0));
        let mut r = report_with(0.5, 1.0, 0.0);
        r.frame = None;
        assert_eq!(allied_mean_curvature_magnitude(&r), None);
    }

    #[test]
    fn point_classes() {
        assert_eq!(PointClass::from_k(1e-3, 1e-10), PointClass::Elliptic);
        assert_eq!(PointClass::from_k(-1e-3, 1e-10), PointClass::Hyperbolic);
        assert_eq!(PointClass::from_k(1e-12, 1e-10), PointClass::Parabolic);
    }
}
