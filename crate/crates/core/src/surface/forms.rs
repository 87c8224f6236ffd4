//! First and second fundamental forms.

use crate::error::{Error, Result};
use crate::minkowski::{inner, normal_frame, SpacetimeVector, DEFAULT_TOL};

use super::patch::{Jet, SurfacePatch};

/// Coefficients of the induced metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    /// `sqrt(EG - F^2)`
    pub w: f64,
}

impl FirstForm {
    pub fn from_jet(jet: &Jet, u: f64, v: f64, tol: f64) -> Result<Self> {
        let e = jet.z_u.square();
        let f = inner(&jet.z_u, &jet.z_v);
        let g = jet.z_v.square();
        let det = e * g - f * f;
        if e <= tol || det <= tol {
            return Err(Error::NotSpacelike { u, v, e, det });
        }
        Ok(Self { e, f, g, w: det.sqrt() })
    }

    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Normal components of the second partials and the invariant form `L, M, N`.
///
/// `c_ijk = <z_ij, n_k>`; e.g. `c121` is the component of `z_uv` along `n1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondForm {
    pub c111: f64,
    pub c121: f64,
    pub c221: f64,
    pub c112: f64,
    pub c122: f64,
    pub c222: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Spacelike unit normal.
    pub n1: SpacetimeVector,
    /// Timelike unit normal; `{z_u, z_v, n1, n2}` is positively oriented.
    pub n2: SpacetimeVector,
}

impl SecondForm {
    pub fn from_jet(jet: &Jet, first: &FirstForm, tol: f64) -> Result<Self> {
        let (n1, n2) = normal_frame(&jet.z_u, &jet.z_v, tol)?;
        let c111 = inner(&jet.z_uu, &n1);
        let c121 = inner(&jet.z_uv, &n1);
        let c221 = inner(&jet.z_vv, &n1);
        let c112 = inner(&jet.z_uu, &n2);
        let c122 = inner(&jet.z_uv, &n2);
        let c222 = inner(&jet.z_vv, &n2);
        let w = first.w;
        Ok(Self {
            c111,
            c121,
            c221,
            c112,
            c122,
            c222,
            l: 2.0 / w * (c111 * c122 - c121 * c112),
            m: (c111 * c222 - c221 * c112) / w,
            n: 2.0 / w * (c121 * c222 - c221 * c122),
            n1,
            n2,
        })
    }

    /// Normal part of an ambient vector.
    pub fn normal_part(&self, w: &SpacetimeVector) -> SpacetimeVector {
        inner(w, &self.n1) * self.n1 - inner(w, &self.n2) * self.n2
    }

    pub fn max_abs(&self) -> f64 {
        self.l.abs().max(self.m.abs()).max(self.n.abs())
    }
}

pub fn first_form(patch: &SurfacePatch, u: f64, v: f64) -> Result<FirstForm> {
    FirstForm::from_jet(&patch.jet(u, v)?, u, v, DEFAULT_TOL)
}

pub fn second_form(patch: &SurfacePatch, u: f64, v: f64) -> Result<SecondForm> {
    let jet = patch.jet(u, v)?;
    let first = FirstForm::from_jet(&jet, u, v, DEFAULT_TOL)?;
    SecondForm::from_jet(&jet, &first, DEFAULT_TOL)
}
