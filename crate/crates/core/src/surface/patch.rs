use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::minkowski::SpacetimeVector;

/// Default step for finite-difference first partials.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Default step for finite-difference second partials.
pub const DEFAULT_FD_SECOND_STEP: f64 = 1e-4;

/// Position and partial derivatives up to second order at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub z: SpacetimeVector,
    pub z_u: SpacetimeVector,
    pub z_v: SpacetimeVector,
    pub z_uu: SpacetimeVector,
    pub z_uv: SpacetimeVector,
    pub z_vv: SpacetimeVector,
}

/// A parametrized surface `(u, v) -> z(u, v)` in Minkowski 4-space.
pub trait Embedding: Send + Sync {
    fn position(&self, u: f64, v: f64) -> SpacetimeVector;

    /// Analytic partial derivatives, when available.
    fn analytic_jet(&self, _u: f64, _v: f64) -> Option<Jet> {
        None
    }
}

/// Rectangular parameter domain `[u_min, u_max] x [v_min, v_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamDomain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl ParamDomain {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Self {
        Self { u_min: u.0, u_max: u.1, v_min: v.0, v_max: v.1 }
    }

    pub fn unbounded() -> Self {
        Self::new((f64::NEG_INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::INFINITY))
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.u_min..=self.u_max).contains(&u) && (self.v_min..=self.v_max).contains(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    /// Central differences of positions; `step` for first partials and
    /// `second_step` for second partials.
    FiniteDifference { step: f64, second_step: f64 },
}

impl DerivativeMode {
    pub fn finite_difference() -> Self {
        Self::FiniteDifference { step: DEFAULT_FD_STEP, second_step: DEFAULT_FD_SECOND_STEP }
    }

    /// Same step for first and second partials.
    pub fn uniform_difference(h: f64) -> Self {
        Self::FiniteDifference { step: h, second_step: h }
    }
}

/// An embedding together with its domain and the way partials are obtained.
#[derive(Clone)]
pub struct SurfacePatch {
    embedding: Arc<dyn Embedding>,
    domain: ParamDomain,
    mode: DerivativeMode,
}

impl fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("domain", &self.domain)
            .field("mode", &self.mode)
            .finish_non_exhaustive()
    }
}

impl SurfacePatch {
    pub fn new(embedding: Arc<dyn Embedding>, domain: ParamDomain, mode: DerivativeMode) -> Self {
        Self { embedding, domain, mode }
    }

    pub fn analytic(embedding: Arc<dyn Embedding>, domain: ParamDomain) -> Self {
        Self::new(embedding, domain, DerivativeMode::Analytic)
    }

    pub fn with_mode(&self, mode: DerivativeMode) -> Self {
        Self { mode, ..self.clone() }
    }

    pub fn domain(&self) -> ParamDomain {
        self.domain
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn position(&self, u: f64, v: f64) -> SpacetimeVector {
        self.embedding.position(u, v)
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<Jet> {
        if !self.domain.contains(u, v) {
            return Err(Error::OutOfDomain { u, v });
        }
        self.jet_unchecked(u, v)
    }

    /// Partials without the domain check; used for stencils that straddle
    /// the domain edge.
    pub(crate) fn jet_unchecked(&self, u: f64, v: f64) -> Result<Jet> {
        match self.mode {
            DerivativeMode::Analytic => {
                self.embedding.analytic_jet(u, v).ok_or(Error::NoAnalyticDerivatives)
            }
            DerivativeMode::FiniteDifference { step, second_step } => {
                Ok(central_difference_jet(self.embedding.as_ref(), u, v, step, second_step))
            }
        }
    }
}

fn central_difference_jet(s: &dyn Embedding, u: f64, v: f64, h: f64, h2: f64) -> Jet {
    let z = s.position(u, v);
    let half = 0.5 / h;
    let z_u = (s.position(u + h, v) - s.position(u - h, v)) * half;
    let z_v = (s.position(u, v + h) - s.position(u, v - h)) * half;

    let inv = 1.0 / (h2 * h2);
    let z_uu = (s.position(u + h2, v) - 2.0 * z + s.position(u - h2, v)) * inv;
    let z_vv = (s.position(u, v + h2) - 2.0 * z + s.position(u, v - h2)) * inv;
    let z_uv = (s.position(u + h2, v + h2) - s.position(u + h2, v - h2)
        - s.position(u - h2, v + h2)
        + s.position(u - h2, v - h2))
        * (0.25 * inv);
    Jet { z, z_u, z_v, z_uu, z_uv, z_vv }
}

/// Closure-backed embedding that only supplies positions.
pub struct PositionFn<F>(pub F);

impl<F> Embedding for PositionFn<F>
where
    F: Fn(f64, f64) -> SpacetimeVector + Send + Sync,
{
    fn position(&self, u: f64, v: f64) -> SpacetimeVector {
        (self.0)(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Sample;

    // z = (u, v, sin(u v), u^2 / 3)
    impl Embedding for Sample {
        fn position(&self, u: f64, v: f64) -> SpacetimeVector {
            SpacetimeVector::new(u, v, (u * v).sin(), u * u / 3.0)
        }
        fn analytic_jet(&self, u: f64, v: f64) -> Option<Jet> {
            let (s, c) = (u * v).sin_cos();
            Some(Jet {
                z: self.position(u, v),
                z_u: SpacetimeVector::new(1.0, 0.0, v * c, 2.0 * u / 3.0),
                z_v: SpacetimeVector::new(0.0, 1.0, u * c, 0.0),
                z_uu: SpacetimeVector::new(0.0, 0.0, -v * v * s, 2.0 / 3.0),
                z_uv: SpacetimeVector::new(0.0, 0.0, c - u * v * s, 0.0),
                z_vv: SpacetimeVector::new(0.0, 0.0, -u * u * s, 0.0),
            })
        }
    }

    #[test]
    fn difference_jet_tracks_analytic() {
        let patch = SurfacePatch::analytic(Arc::new(Sample), ParamDomain::unbounded());
        let fd = patch.with_mode(DerivativeMode::finite_difference());
        let a = patch.jet(0.4, -0.7).unwrap();
        let b = fd.jet(0.4, -0.7).unwrap();
        let pairs = [
            (a.z_u, b.z_u),
            (a.z_v, b.z_v),
            (a.z_uu, b.z_uu),
            (a.z_uv, b.z_uv),
            (a.z_vv, b.z_vv),
        ];
        for (x, y) in pairs {
            assert!((x - y).max_norm() < 1e-6, "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn position_only_needs_differences() {
        let patch = SurfacePatch::analytic(
            Arc::new(PositionFn(|u, v| SpacetimeVector::new(u, v, 0.0, 0.0))),
            ParamDomain::unbounded(),
        );
        assert_eq!(patch.jet(0.0, 0.0), Err(Error::NoAnalyticDerivatives));
        let fd = patch.with_mode(DerivativeMode::finite_difference());
        assert!(fd.jet(0.0, 0.0).is_ok());
    }

    #[test]
    fn domain_is_enforced() {
        let patch = SurfacePatch::analytic(
            Arc::new(Sample),
            ParamDomain::new((0.0, 1.0), (0.0, 1.0)),
        );
        assert_eq!(patch.jet(1.5, 0.5), Err(Error::OutOfDomain { u: 1.5, v: 0.5 }));
    }
}
