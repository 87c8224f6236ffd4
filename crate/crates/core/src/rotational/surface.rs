use std::f64::consts::TAU;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::minkowski::{SpacetimeVector, DEFAULT_TOL};
use crate::surface::{Embedding, Jet, ParamDomain, SurfacePatch};

use super::curve::{MeridianCurve, MeridianJet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// `(f cos av, f sin av, g cosh bv, g sinh bv)`
    FirstType,
    /// `(f cos av, f sin av, g sinh bv, g cosh bv)`
    SecondType,
}

impl SurfaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::FirstType => "first",
            Self::SecondType => "second",
        }
    }

    /// `+1` for the first type, `-1` for the second: the sign in
    /// `E = f'^2 ± g'^2` and, negated, in `G = a^2 f^2 ∓ b^2 g^2`.
    pub(crate) fn sigma(&self) -> f64 {
        match self {
            Self::FirstType => 1.0,
            Self::SecondType => -1.0,
        }
    }

    /// Causal sign of the mean curvature vector: spacelike for the first
    /// type, timelike for the second.
    pub fn mean_curvature_sign(&self) -> f64 {
        self.sigma()
    }

    /// Factor relating the printed closed-form `kappa` to the kernel's value
    /// under the convention that `{z_u, z_v, n1, n2}` is positively oriented.
    ///
    /// For the first type the printed frame invariants are written with
    /// `b = -H/|H|`, which also reverses the sign of the normal curvature.
    pub fn kappa_orientation(&self) -> f64 {
        match self {
            Self::FirstType => -1.0,
            Self::SecondType => 1.0,
        }
    }

    /// Factor relating the printed `nu1, nu2, lambda` to the kernel's values,
    /// whose frame uses `b = H/|H|`.
    pub fn mean_direction_orientation(&self) -> f64 {
        self.kappa_orientation()
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" | "first-type" => Ok(Self::FirstType),
            "second" | "2" | "second-type" => Ok(Self::SecondType),
            other => Err(Error::InvalidParameter(format!("unknown surface kind `{other}`"))),
        }
    }
}

/// Metric data of a rotational surface along the meridian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct MeridianMetric {
    pub jet: MeridianJet,
    /// `f'^2 ± g'^2`
    pub e: f64,
    /// `a^2 f^2 ∓ b^2 g^2`
    pub g: f64,
    /// `a^2 f g' + b^2 g f'`
    pub p: f64,
    /// `g' f'' - f' g''`
    pub q: f64,
    /// `g f' - f g'`
    pub d: f64,
}

impl MeridianMetric {
    pub fn is_finite(&self) -> bool {
        let j = &self.jet;
        [j.f, j.fp, j.fpp, j.g, j.gp, j.gpp, self.e, self.g].iter().all(|x| x.is_finite())
    }
}

/// General rotational surface of first or second type.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationalSurface {
    kind: SurfaceKind,
    alpha: f64,
    beta: f64,
    meridian: MeridianCurve,
}

impl RotationalSurface {
    pub fn new(kind: SurfaceKind, alpha: f64, beta: f64, meridian: MeridianCurve) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rotation speeds must be positive, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { kind, alpha, beta, meridian })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn meridian(&self) -> &MeridianCurve {
        &self.meridian
    }

    pub(crate) fn metric(&self, u: f64) -> MeridianMetric {
        let jet = self.meridian.eval(u);
        let (a2, b2) = (self.alpha * self.alpha, self.beta * self.beta);
        let s = self.kind.sigma();
        MeridianMetric {
            jet,
            e: jet.fp * jet.fp + s * jet.gp * jet.gp,
            g: a2 * jet.f * jet.f - s * b2 * jet.g * jet.g,
            p: a2 * jet.f * jet.gp + b2 * jet.g * jet.fp,
            q: jet.curvature_numerator(),
            d: jet.cross(),
        }
    }

    /// Meridian data at `u` after checking `u ∈ J` and the spacelike
    /// conditions of the surface type.
    pub(crate) fn checked_metric(&self, u: f64) -> Result<MeridianMetric> {
        if !self.meridian.contains(u) {
            let (lo, hi) = self.meridian.domain();
            return Err(Error::DomainViolation { u, reason: format!("u outside meridian interval [{lo}, {hi}]") });
        }
        let m = self.metric(u);
        if !m.is_finite() {
            return Err(Error::DomainViolation { u, reason: "meridian is not finite here".into() });
        }
        let (e_name, g_name) = match self.kind {
            SurfaceKind::FirstType => ("f'^2 + g'^2", "alpha^2 f^2 - beta^2 g^2"),
            SurfaceKind::SecondType => ("f'^2 - g'^2", "alpha^2 f^2 + beta^2 g^2"),
        };
        if !(m.e > DEFAULT_TOL) {
            return Err(Error::DomainViolation { u, reason: format!("{e_name} = {:e} is not positive", m.e) });
        }
        if !(m.g > DEFAULT_TOL) {
            return Err(Error::DomainViolation { u, reason: format!("{g_name} = {:e} is not positive", m.g) });
        }
        Ok(m)
    }

    /// Checks the type conditions on `n` equally spaced samples of `J`.
    pub fn validate(&self, n: usize) -> Result<()> {
        self.meridian.grid(n).into_iter().try_for_each(|u| self.checked_metric(u).map(|_| ()))
    }

    pub fn embed(&self, u: f64, v: f64) -> Result<SpacetimeVector> {
        self.checked_metric(u)?;
        Ok(self.position(u, v))
    }

    /// Analytic patch over `J x [0, 2π]`.
    pub fn as_patch(&self) -> SurfacePatch {
        let (lo, hi) = self.meridian.domain();
        SurfacePatch::analytic(Arc::new(self.clone()), ParamDomain::new((lo, hi), (0.0, TAU)))
    }

    /// Rotation factors and their `v`-derivatives for slots 1-2 and 3-4.
    fn rotation(&self, v: f64) -> ([f64; 2], [f64; 2], [f64; 2], [f64; 2], [f64; 2], [f64; 2]) {
        let (a, b) = (self.alpha, self.beta);
        let (s, c) = (a * v).sin_cos();
        let (sh, ch) = ((b * v).sinh(), (b * v).cosh());
        let circ = [c, s];
        let circ_v = [-a * s, a * c];
        let circ_vv = [-a * a * c, -a * a * s];
        let (hyp, hyp_v, hyp_vv) = match self.kind {
            SurfaceKind::FirstType => ([ch, sh], [b * sh, b * ch], [b * b * ch, b * b * sh]),
            SurfaceKind::SecondType => ([sh, ch], [b * ch, b * sh], [b * b * sh, b * b * ch]),
        };
        (circ, circ_v, circ_vv, hyp, hyp_v, hyp_vv)
    }
}

fn combine(f: f64, circ: [f64; 2], g: f64, hyp: [f64; 2]) -> SpacetimeVector {
    SpacetimeVector::new(f * circ[0], f * circ[1], g * hyp[0], g * hyp[1])
}

impl Embedding for RotationalSurface {
    fn position(&self, u: f64, v: f64) -> SpacetimeVector {
        let m = self.meridian.eval(u);
        let (circ, _, _, hyp, _, _) = self.rotation(v);
        combine(m.f, circ, m.g, hyp)
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<Jet> {
        let m = self.meridian.eval(u);
        let (circ, circ_v, circ_vv, hyp, hyp_v, hyp_vv) = self.rotation(v);
        Some(Jet {
            z: combine(m.f, circ, m.g, hyp),
            z_u: combine(m.fp, circ, m.gp, hyp),
            z_v: combine(m.f, circ_v, m.g, hyp_v),
            z_uu: combine(m.fpp, circ, m.gpp, hyp),
            z_uv: combine(m.fp, circ_v, m.gp, hyp_v),
            z_vv: combine(m.f, circ_vv, m.g, hyp_vv),
        })
    }
}
