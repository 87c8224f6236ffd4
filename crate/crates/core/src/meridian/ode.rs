//! Flat and flat-normal meridians `f = f(u), g = u` by adaptive
//! Dormand-Prince 5(4) integration in the substituted slope variable.

use crate::error::{Error, Result};
use crate::rotational::{MeridianCurve, RotationalSurface, SampledMeridian, SurfaceKind};

pub const DEFAULT_H_INIT: f64 = 1e-3;
/// Largest step; keeps the node spacing fine enough for the sampled meridian.
pub const DEFAULT_H_MAX: f64 = 2e-3;
pub const DEFAULT_GUARD_TOL: f64 = 1e-6;
/// Bound on the estimated interpolation error of a solved meridian.
pub const DEFAULT_RESOLUTION_LIMIT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeTarget {
    Flat,
    FlatNormal,
}

impl OdeTarget {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Flat => "flat",
            Self::FlatNormal => "flat-normal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeProblem {
    pub kind: SurfaceKind,
    pub target: OdeTarget,
    pub alpha: f64,
    pub beta: f64,
    pub u0: f64,
    pub f0: f64,
    pub fp0: f64,
    /// Integration stops here unless a guard fires first; its side of `u0`
    /// fixes the direction.
    pub u_end: f64,
    pub h_init: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub guard_tol: f64,
    pub max_steps: usize,
}

impl OdeProblem {
    pub fn new(
        kind: SurfaceKind,
        target: OdeTarget,
        alpha: f64,
        beta: f64,
        (u0, f0, fp0): (f64, f64, f64),
        u_end: f64,
    ) -> Self {
        Self {
            kind,
            target,
            alpha,
            beta,
            u0,
            f0,
            fp0,
            u_end,
            h_init: DEFAULT_H_INIT,
            h_min: 1e-12,
            h_max: DEFAULT_H_MAX,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            guard_tol: DEFAULT_GUARD_TOL,
            max_steps: 200_000,
        }
    }

    pub fn direction(&self) -> Direction {
        if self.u_end >= self.u0 {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    }

    fn slope_to_state(&self, w: f64) -> f64 {
        match self.kind {
            SurfaceKind::FirstType => w.atan(),
            SurfaceKind::SecondType => ((1.0 + w) / (1.0 - w)).abs().ln(),
        }
    }

    /// `f'` from the substituted variable; for the second type `|f'| > 1`.
    fn state_to_slope(&self, phi: f64) -> f64 {
        match self.kind {
            SurfaceKind::FirstType => phi.tan(),
            SurfaceKind::SecondType => 1.0 / (0.5 * phi).tanh(),
        }
    }

    /// Right-hand side in `(f, phi)`; `Err` names the denominator that fell
    /// below the guard.
    fn rhs(&self, u: f64, y: [f64; 2]) -> std::result::Result<[f64; 2], &'static str> {
        let [f, phi] = y;
        let (a2, b2) = (self.alpha * self.alpha, self.beta * self.beta);
        let g_tol = self.guard_tol;
        let w = match self.kind {
            SurfaceKind::FirstType => {
                if phi.cos().abs() < g_tol {
                    return Err("cos(arctan f')");
                }
                phi.tan()
            }
            SurfaceKind::SecondType => {
                let w = self.state_to_slope(phi);
                if !w.is_finite() || (1.0 - w * w).abs() < g_tol || 1.0 / w.abs() < g_tol {
                    return Err("1 - f'^2");
                }
                w
            }
        };
        let (g, g_name) = match self.kind {
            SurfaceKind::FirstType => (a2 * f * f - b2 * u * u, "alpha^2 f^2 - beta^2 u^2"),
            SurfaceKind::SecondType => (a2 * f * f + b2 * u * u, "alpha^2 f^2 + beta^2 u^2"),
        };
        if g < g_tol {
            return Err(g_name);
        }
        let p = a2 * f + b2 * u * w;
        let dphi = match (self.kind, self.target) {
            (SurfaceKind::FirstType, OdeTarget::FlatNormal) => -p / g,
            (SurfaceKind::SecondType, OdeTarget::FlatNormal) => 2.0 * p / g,
            (kind, OdeTarget::Flat) => {
                if p.abs() < g_tol {
                    return Err("alpha^2 f + beta^2 u f'");
                }
                let d = u * w - f;
                let r = a2 * b2 * d * d / (g * p);
                match kind {
                    SurfaceKind::FirstType => r,
                    SurfaceKind::SecondType => -2.0 * r,
                }
            }
        };
        Ok([w, dphi])
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} = {x} must be positive")))
            }
        };
        positive("alpha", self.alpha)?;
        positive("beta", self.beta)?;
        positive("h_init", self.h_init)?;
        positive("h_min", self.h_min)?;
        positive("h_max", self.h_max)?;
        positive("rel_tol", self.rel_tol)?;
        positive("abs_tol", self.abs_tol)?;
        positive("guard_tol", self.guard_tol)?;
        if ![self.u0, self.f0, self.fp0, self.u_end].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("initial data and u_end must be finite".into()));
        }
        if self.u_end == self.u0 {
            return Err(Error::InvalidParameter("u_end equals u0".into()));
        }
        if self.kind == SurfaceKind::SecondType && !(self.fp0 * self.fp0 - 1.0 > self.guard_tol) {
            return Err(Error::DomainViolation {
                u: self.u0,
                reason: format!("second type in the chart g = u needs |f'| > 1, got f' = {}", self.fp0),
            });
        }
        let y0 = [self.f0, self.slope_to_state(self.fp0)];
        self.rhs(self.u0, y0).map_err(|name| Error::DomainViolation {
            u: self.u0,
            reason: format!("initial data violates the guard on {name}"),
        })?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Termination {
    ReachedEnd,
    Singularity { denominator: &'static str, u: f64 },
    StepUnderflow { u: f64, h: f64 },
    MaxSteps { u: f64, steps: usize },
}

impl Termination {
    pub fn is_success(&self) -> bool {
        matches!(self, Self::ReachedEnd)
    }

    pub fn as_error(&self) -> Option<Error> {
        match *self {
            Self::ReachedEnd => None,
            Self::Singularity { denominator, u } => Some(Error::SingularityReached { u, denominator }),
            Self::StepUnderflow { u, h } => Some(Error::StepUnderflow { u, h }),
            Self::MaxSteps { u, steps } => Some(Error::MaxSteps { u, steps }),
        }
    }
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ReachedEnd => write!(f, "reached-end"),
            Self::Singularity { denominator, u } => write!(f, "singularity({denominator} at u={u})"),
            Self::StepUnderflow { u, h } => write!(f, "step-underflow(u={u}, h={h:e})"),
            Self::MaxSteps { u, steps } => write!(f, "max-steps({steps} at u={u})"),
        }
    }
}

/// Trajectory of an ODE solve: nodes in integration order.
#[derive(Clone, Debug, PartialEq)]
pub struct SolvedMeridian {
    pub problem: OdeProblem,
    pub u: Vec<f64>,
    pub f: Vec<f64>,
    pub fp: Vec<f64>,
    pub termination: Termination,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl SolvedMeridian {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `Err` unless the integration reached `u_end`.
    pub fn check(&self) -> Result<()> {
        self.termination.as_error().map_or(Ok(()), Err)
    }

    /// Nodes, `f`, `f'` sorted by increasing `u`.
    pub fn increasing(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let (mut u, mut f, mut fp) = (self.u.clone(), self.f.clone(), self.fp.clone());
        if self.problem.direction() == Direction::Decreasing {
            u.reverse();
            f.reverse();
            fp.reverse();
        }
        (u, f, fp)
    }

    /// Sampled graph meridian through the nodes, after the resolution check.
    pub fn to_meridian(&self) -> Result<MeridianCurve> {
        let (u, f, fp) = self.increasing();
        let s = SampledMeridian::graph(&u, &f, &fp)?;
        s.check_resolution(DEFAULT_RESOLUTION_LIMIT)?;
        MeridianCurve::sampled(s)
    }

    pub fn to_surface(&self) -> Result<RotationalSurface> {
        RotationalSurface::new(self.problem.kind, self.problem.alpha, self.problem.beta, self.to_meridian()?)
    }

    /// Defining residual of the target on the induced surface at the
    /// interior nodes.
    pub fn interior_residuals(&self) -> Result<Vec<f64>> {
        let s = self.to_surface()?;
        let (u, _, _) = self.increasing();
        let n = u.len();
        u[1..n - 1]
            .iter()
            .map(|&x| match self.problem.target {
                OdeTarget::Flat => s.residual_flat(x),
                OdeTarget::FlatNormal => s.residual_flat_normal(x),
            })
            .collect()
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type Stage = std::result::Result<[f64; 2], &'static str>;

/// One trial step; `Err` carries the guard that fired.
fn try_step(p: &OdeProblem, u: f64, y: [f64; 2], k1: [f64; 2], h: f64) -> std::result::Result<([f64; 2], [f64; 2], f64), &'static str> {
    let mut k = [[0.0; 2]; 7];
    k[0] = k1;
    for s in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            for i in 0..2 {
                ys[i] += h * A[s][j] * kj[i];
            }
        }
        let stage: Stage = p.rhs(u + C[s] * h, ys);
        k[s] = stage?;
    }
    let mut y5 = y;
    let mut err = 0.0;
    for i in 0..2 {
        let mut e = 0.0;
        for s in 0..7 {
            y5[i] += h * B5[s] * k[s][i];
            e += h * (B5[s] - B4[s]) * k[s][i];
        }
        let scale = p.abs_tol + p.rel_tol * y[i].abs().max(y5[i].abs());
        err += (e / scale).powi(2);
    }
    // FSAL: the last stage is the derivative at the new point.
    Ok((y5, k[6], (err / 2.0).sqrt()))
}

/// Integrates the problem from `u0` toward `u_end`.
///
/// Invalid initial data is an error; early stops are reported in
/// [`SolvedMeridian::termination`] together with the partial trajectory.
pub fn solve_ode(p: &OdeProblem) -> Result<SolvedMeridian> {
    p.validate()?;
    let dir = if p.direction() == Direction::Increasing { 1.0 } else { -1.0 };
    let mut u = p.u0;
    let mut y = [p.f0, p.slope_to_state(p.fp0)];
    let mut k1 = p.rhs(u, y).expect("validated initial data");
    let mut out = SolvedMeridian {
        problem: p.clone(),
        u: vec![u],
        f: vec![y[0]],
        fp: vec![p.fp0],
        termination: Termination::ReachedEnd,
        accepted_steps: 0,
        rejected_steps: 0,
    };
    let mut h = p.h_init.min(p.h_max);
    let mut last_guard: Option<&'static str> = None;
    loop {
        let remaining = (p.u_end - u) * dir;
        if remaining <= 1e-14 * p.u_end.abs().max(1.0) {
            out.termination = Termination::ReachedEnd;
            break;
        }
        if out.accepted_steps + out.rejected_steps >= p.max_steps {
            out.termination = Termination::MaxSteps { u, steps: p.max_steps };
            break;
        }
        let step = h.min(remaining);
        match try_step(p, u, y, k1, dir * step) {
            Err(name) => {
                out.rejected_steps += 1;
                last_guard = Some(name);
                h = step * 0.5;
            }
            Ok((y_new, k_new, err)) => {
                if err <= 1.0 {
                    u = if step == remaining { p.u_end } else { u + dir * step };
                    y = y_new;
                    k1 = k_new;
                    out.accepted_steps += 1;
                    out.u.push(u);
                    out.f.push(y[0]);
                    out.fp.push(p.state_to_slope(y[1]));
                    last_guard = None;
                } else {
                    out.rejected_steps += 1;
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h = (step * factor).min(p.h_max);
            }
        }
        if h < p.h_min {
            out.termination = match last_guard {
                Some(denominator) => Termination::Singularity { denominator, u },
                None => Termination::StepUnderflow { u, h },
            };
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_round_trips() {
        let p = OdeProblem::new(SurfaceKind::SecondType, OdeTarget::Flat, 1.0, 1.0, (2.0, 1.0, 1.5), 3.0);
        for w in [1.5, -1.2, 7.0, -30.0] {
            assert!((p.state_to_slope(p.slope_to_state(w)) - w).abs() < 1e-12 * w.abs());
        }
        let q = OdeProblem { kind: SurfaceKind::FirstType, ..p };
        for w in [0.0, 0.3, -4.0] {
            assert!((q.state_to_slope(q.slope_to_state(w)) - w).abs() < 1e-14 * w.abs().max(1.0));
        }
    }

    #[test]
    fn integrates_circle_exactly_enough() {
        let (s, c) = 0.5_f64.sin_cos();
        let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (s, c, -s / c), 0.65);
        let sol = solve_ode(&p).unwrap();
        assert_eq!(sol.termination, Termination::ReachedEnd);
        for (u, f) in sol.u.iter().zip(&sol.f) {
            assert!((f - (1.0 - u * u).sqrt()).abs() < 1e-8);
        }
    }

    #[test]
    fn guard_stops_at_light_cone() {
        // G = 1 - 2u^2 on the unit circle
        let (s, c) = 0.5_f64.sin_cos();
        let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (s, c, -s / c), 0.9);
        let sol = solve_ode(&p).unwrap();
        match sol.termination {
            Termination::Singularity { denominator, u } => {
                assert_eq!(denominator, "alpha^2 f^2 - beta^2 u^2");
                assert!((u - 0.5_f64.sqrt()).abs() < 1e-5);
            }
            t => panic!("unexpected termination {t}"),
        }
        assert!(matches!(sol.check(), Err(Error::SingularityReached { .. })));
    }

    #[test]
    fn second_type_needs_steep_initial_slope() {
        let p = OdeProblem::new(SurfaceKind::SecondType, OdeTarget::FlatNormal, 1.0, 1.0, (1.5, 1.0, 0.5), 2.0);
        assert!(matches!(solve_ode(&p), Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn decreasing_direction() {
        let (s, c) = 0.5_f64.sin_cos();
        let p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (s, c, -s / c), 0.1);
        let sol = solve_ode(&p).unwrap();
        assert_eq!(*sol.u.last().unwrap(), 0.1);
        let (u, _, _) = sol.increasing();
        assert!(u.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn max_steps_reported() {
        let (s, c) = 0.5_f64.sin_cos();
        let mut p = OdeProblem::new(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.0, 1.0, (s, c, -s / c), 0.65);
        p.max_steps = 5;
        let sol = solve_ode(&p).unwrap();
        assert!(matches!(sol.termination, Termination::MaxSteps { steps: 5, .. }));
    }
}
