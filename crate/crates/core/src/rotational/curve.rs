use crate::error::{Error, Result};
use crate::meridian::MinimalProfile;

use super::spline::SampledChannel;

/// Meridian coordinates and their first two derivatives at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeridianJet {
    pub f: f64,
    pub fp: f64,
    pub fpp: f64,
    pub g: f64,
    pub gp: f64,
    pub gpp: f64,
}

impl MeridianJet {
    /// `g f' - f g'`
    pub fn cross(&self) -> f64 {
        self.g * self.fp - self.f * self.gp
    }

    /// `g' f'' - f' g''`
    pub fn curvature_numerator(&self) -> f64 {
        self.gp * self.fpp - self.fp * self.gpp
    }
}

/// A sampled meridian: either a graph `g = u` with `f` sampled, or both
/// coordinates sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledMeridian {
    nodes: Vec<f64>,
    f: SampledChannel,
    g: Option<SampledChannel>,
}

impl SampledMeridian {
    /// Graph chart `f = f(u), g = u`.
    pub fn graph(nodes: &[f64], f: &[f64], fp: &[f64]) -> Result<Self> {
        Ok(Self { nodes: nodes.to_vec(), f: SampledChannel::new(nodes, f, fp)?, g: None })
    }

    pub fn general(nodes: &[f64], f: &[f64], fp: &[f64], g: &[f64], gp: &[f64]) -> Result<Self> {
        Ok(Self {
            nodes: nodes.to_vec(),
            f: SampledChannel::new(nodes, f, fp)?,
            g: Some(SampledChannel::new(nodes, g, gp)?),
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn f_channel(&self) -> &SampledChannel {
        &self.f
    }

    pub fn g_channel(&self) -> Option<&SampledChannel> {
        self.g.as_ref()
    }

    pub fn is_graph(&self) -> bool {
        self.g.is_none()
    }

    fn eval(&self, u: f64) -> MeridianJet {
        let (f, fp, fpp) = self.f.eval(u);
        let (g, gp, gpp) = match &self.g {
            Some(ch) => ch.eval(u),
            None => (u, 1.0, 0.0),
        };
        MeridianJet { f, fp, fpp, g, gp, gpp }
    }

    /// Worst estimated error of the interpolated second derivatives.
    pub fn resolution_estimate(&self) -> Option<f64> {
        let f = self.f.curvature_error_estimate()?;
        match &self.g {
            Some(g) => Some(f.max(g.curvature_error_estimate()?)),
            None => Some(f),
        }
    }

    pub fn check_resolution(&self, limit: f64) -> Result<()> {
        let estimate = self.resolution_estimate().unwrap_or(f64::INFINITY);
        if estimate < limit {
            Ok(())
        } else {
            Err(Error::UnderResolved { estimate, limit })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeridianShape {
    /// `f = u, g = a u + b`
    Line { a: f64, b: f64 },
    /// `f = u, g = c u^exponent`
    PowerLaw { c: f64, exponent: f64 },
    /// `f = a cos u, g = a sin u`
    Circle { a: f64 },
    /// `f = a sinh u, g = a cosh u`
    Hyperbolic { a: f64 },
    /// Closed-form minimal meridian, `f = u`.
    Minimal(MinimalProfile),
    Sampled(SampledMeridian),
}

/// Where a meridian came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Preset { name: &'static str, params: Vec<(&'static str, f64)> },
    Sampled { nodes: usize, interpolation: &'static str },
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Preset { name, params } => {
                write!(f, "{name}(")?;
                for (i, (k, v)) in params.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}={v}")?;
                }
                write!(f, ")")
            }
            Provenance::Sampled { nodes, interpolation } => {
                write!(f, "sampled(nodes={nodes},interpolation={interpolation})")
            }
        }
    }
}

/// A plane meridian `(f(u), g(u))` on the interval `J = [lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeridianCurve {
    shape: MeridianShape,
    domain: (f64, f64),
}

impl MeridianCurve {
    pub fn new(shape: MeridianShape, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!("meridian domain [{lo}, {hi}] is not a proper interval")));
        }
        if let MeridianShape::Sampled(s) = &shape {
            let n = s.nodes();
            if lo < n[0] || hi > n[n.len() - 1] {
                return Err(Error::InvalidParameter("domain exceeds the sampled nodes".into()));
            }
        }
        Ok(Self { shape, domain })
    }

    pub fn line(a: f64, b: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(MeridianShape::Line { a, b }, domain)
    }

    pub fn power_law(c: f64, exponent: f64, domain: (f64, f64)) -> Result<Self> {
        if domain.0 <= 0.0 {
            return Err(Error::InvalidParameter("power-law meridian needs u > 0".into()));
        }
        Self::new(MeridianShape::PowerLaw { c, exponent }, domain)
    }

    pub fn circle(a: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(MeridianShape::Circle { a }, domain)
    }

    pub fn hyperbolic(a: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(MeridianShape::Hyperbolic { a }, domain)
    }

    /// Sampled meridian over the full node range.
    pub fn sampled(s: SampledMeridian) -> Result<Self> {
        let n = s.nodes();
        let domain = (n[0], n[n.len() - 1]);
        Self::new(MeridianShape::Sampled(s), domain)
    }

    pub fn shape(&self) -> &MeridianShape {
        &self.shape
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn contains(&self, u: f64) -> bool {
        (self.domain.0..=self.domain.1).contains(&u)
    }

    /// `n` equally spaced parameter values covering the domain.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.domain;
        match n {
            0 => vec![],
            1 => vec![0.5 * (lo + hi)],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        }
    }

    /// Evaluates the meridian without checking the domain.
    pub fn eval(&self, u: f64) -> MeridianJet {
        match &self.shape {
            MeridianShape::Line { a, b } => {
                MeridianJet { f: u, fp: 1.0, fpp: 0.0, g: a * u + b, gp: *a, gpp: 0.0 }
            }
            MeridianShape::PowerLaw { c, exponent: p } => MeridianJet {
                f: u,
                fp: 1.0,
                fpp: 0.0,
                g: c * u.powf(*p),
                gp: c * p * u.powf(p - 1.0),
                gpp: c * p * (p - 1.0) * u.powf(p - 2.0),
            },
            MeridianShape::Circle { a } => {
                let (s, c) = u.sin_cos();
                MeridianJet { f: a * c, fp: -a * s, fpp: -a * c, g: a * s, gp: a * c, gpp: -a * s }
            }
            MeridianShape::Hyperbolic { a } => {
                let (s, c) = (u.sinh(), u.cosh());
                MeridianJet { f: a * s, fp: a * c, fpp: a * s, g: a * c, gp: a * s, gpp: a * c }
            }
            MeridianShape::Minimal(p) => p.eval(u),
            MeridianShape::Sampled(s) => s.eval(u),
        }
    }

    pub fn provenance(&self) -> Provenance {
        let preset = |name, params| Provenance::Preset { name, params };
        match &self.shape {
            MeridianShape::Line { a, b } => preset("line", vec![("a", *a), ("b", *b)]),
            MeridianShape::PowerLaw { c, exponent } => {
                preset("power-law", vec![("c", *c), ("exponent", *exponent)])
            }
            MeridianShape::Circle { a } => preset("circle", vec![("a", *a)]),
            MeridianShape::Hyperbolic { a } => preset("hyperbolic", vec![("a", *a)]),
            MeridianShape::Minimal(p) => preset(
                "minimal",
                vec![("A", p.a_const), ("C", p.phase), ("eps", p.sign), ("alpha", p.alpha), ("beta", p.beta)],
            ),
            MeridianShape::Sampled(s) => {
                Provenance::Sampled { nodes: s.nodes().len(), interpolation: "cubic" }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(m: &MeridianCurve, u: f64) {
        let h = 1e-5;
        let j = m.eval(u);
        let (p, q) = (m.eval(u + h), m.eval(u - h));
        assert!(((p.f - q.f) / (2.0 * h) - j.fp).abs() < 1e-8);
        assert!(((p.g - q.g) / (2.0 * h) - j.gp).abs() < 1e-8);
        assert!(((p.fp - q.fp) / (2.0 * h) - j.fpp).abs() < 1e-8);
        assert!(((p.gp - q.gp) / (2.0 * h) - j.gpp).abs() < 1e-8);
    }

    #[test]
    fn preset_derivatives_are_consistent() {
        fd_check(&MeridianCurve::line(0.4, -1.0, (0.0, 1.0)).unwrap(), 0.3);
        fd_check(&MeridianCurve::power_law(1.3, -0.25, (0.5, 2.0)).unwrap(), 1.5);
        fd_check(&MeridianCurve::circle(2.0, (-1.0, 1.0)).unwrap(), 0.2);
        fd_check(&MeridianCurve::hyperbolic(0.7, (0.1, 1.0)).unwrap(), 0.6);
    }

    #[test]
    fn sampled_graph_interpolates_nodes() {
        let nodes: Vec<f64> = (0..30).map(|i| 0.1 * i as f64).collect();
        let f: Vec<f64> = nodes.iter().map(|u| (1.0 + u * u).sqrt()).collect();
        let fp: Vec<f64> = nodes.iter().map(|u| u / (1.0 + u * u).sqrt()).collect();
        let s = SampledMeridian::graph(&nodes, &f, &fp).unwrap();
        let m = MeridianCurve::sampled(s).unwrap();
        for (i, &u) in nodes.iter().enumerate() {
            let j = m.eval(u);
            assert!((j.f - f[i]).abs() < 1e-15 && (j.fp - fp[i]).abs() < 1e-15);
            assert_eq!((j.g, j.gp, j.gpp), (u, 1.0, 0.0));
        }
        assert!(matches!(m.provenance(), Provenance::Sampled { nodes: 30, .. }));
    }

    #[test]
    fn coarse_samples_fail_resolution_check() {
        let nodes: Vec<f64> = (0..12).map(|i| 0.5 * i as f64).collect();
        let f: Vec<f64> = nodes.iter().map(|u| (3.0 * u).sin()).collect();
        let fp: Vec<f64> = nodes.iter().map(|u| 3.0 * (3.0 * u).cos()).collect();
        let s = SampledMeridian::graph(&nodes, &f, &fp).unwrap();
        assert!(matches!(s.check_resolution(1e-6), Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn domain_must_be_proper() {
        assert!(MeridianCurve::line(1.0, 0.0, (1.0, 1.0)).is_err());
        assert!(MeridianCurve::power_law(1.0, -1.0, (-1.0, 1.0)).is_err());
    }
}
