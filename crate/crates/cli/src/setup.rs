//! Surface and grid construction from command-line arguments.

use std::f64::consts::TAU;

use minkowski_surfaces::meridian::minimal_meridian;
use minkowski_surfaces::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};
use minkowski_surfaces::sampling::max_v;
use minkowski_surfaces::surface::{DerivativeMode, SurfacePatch, DEFAULT_FD_SECOND_STEP};

use crate::args::{GlobalArgs, GridArgs, KindArg, Preset, SurfaceArgs};
use crate::error::{CliError, CliResult};
use crate::meridian_file;

/// `n >= 2` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

pub fn parse_kind(s: &str) -> CliResult<SurfaceKind> {
    match s {
        "first" => Ok(SurfaceKind::FirstType),
        "second" => Ok(SurfaceKind::SecondType),
        other => Err(CliError::Input(format!("unknown surface kind '{other}'"))),
    }
}

pub fn kind_name(kind: SurfaceKind) -> &'static str {
    match kind {
        SurfaceKind::FirstType => "first",
        SurfaceKind::SecondType => "second",
    }
}

/// Default `f`-interval of a minimal meridian: clear of `α² f² = A` for the
/// first type.
pub fn minimal_default_interval(kind: SurfaceKind, alpha: f64, a_const: f64) -> (f64, f64) {
    match kind {
        SurfaceKind::FirstType => {
            let lo = 1.2 * a_const.abs().sqrt() / alpha.abs();
            (lo, lo + 2.0)
        }
        SurfaceKind::SecondType => (0.2, 2.2),
    }
}

pub fn derivative_mode(g: &GlobalArgs) -> CliResult<DerivativeMode> {
    match g.fd_step {
        None => Ok(DerivativeMode::Analytic),
        Some(step) => {
            let second_step = g.fd_second_step.unwrap_or(DEFAULT_FD_SECOND_STEP);
            if !(step > 0.0 && second_step > 0.0) {
                return Err(CliError::Input("finite-difference steps must be positive".into()));
            }
            Ok(DerivativeMode::FiniteDifference { step, second_step })
        }
    }
}

/// A surface with the grid requested for it.
pub struct Grid {
    pub surface: RotationalSurface,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
}

impl Grid {
    pub fn patch(&self, g: &GlobalArgs) -> CliResult<SurfacePatch> {
        Ok(self.surface.as_patch().with_mode(derivative_mode(g)?))
    }
}

fn fixed_kind(requested: Option<KindArg>, kind: KindArg, preset: &str) -> CliResult<SurfaceKind> {
    match requested {
        Some(k) if k != kind => Err(CliError::Input(format!("{preset} is a surface of the {kind:?} type").to_lowercase())),
        _ => Ok(kind.into()),
    }
}

fn build_surface(s: &SurfaceArgs, u_range: (Option<f64>, Option<f64>)) -> CliResult<RotationalSurface> {
    if let Some(path) = &s.meridian {
        let loaded = meridian_file::load(path)?;
        let kind = match (s.kind, loaded.meta.get("kind")) {
            (Some(k), _) => k.into(),
            (None, Some(k)) => parse_kind(k)?,
            (None, None) => return Err(CliError::Input("surface kind missing: pass --kind".into())),
        };
        let param = |arg: Option<f64>, name: &str| -> CliResult<f64> {
            match (arg, loaded.meta.get(name)) {
                (Some(x), _) => Ok(x),
                (None, Some(x)) => x.parse().map_err(|_| CliError::Input(format!("bad {name} '{x}' in meridian file"))),
                (None, None) => Err(CliError::Input(format!("{name} missing: pass --{name}"))),
            }
        };
        let (alpha, beta) = (param(s.alpha, "alpha")?, param(s.beta, "beta")?);
        return Ok(RotationalSurface::new(kind, alpha, beta, MeridianCurve::sampled(loaded.sampled()?)?)?);
    }
    let preset = s.preset.ok_or_else(|| CliError::Input("pass --preset or --meridian".into()))?;
    let (alpha, beta) = (s.alpha.unwrap_or(1.0), s.beta.unwrap_or(1.0));
    let kind: SurfaceKind = match preset {
        Preset::Example1 => fixed_kind(s.kind, KindArg::First, "example1")?,
        Preset::Example2 => fixed_kind(s.kind, KindArg::Second, "example2")?,
        _ => s.kind.unwrap_or(KindArg::First).into(),
    };
    let range = |lo: f64, hi: f64| (u_range.0.unwrap_or(lo), u_range.1.unwrap_or(hi));
    let meridian = match preset {
        Preset::Line => MeridianCurve::line(s.a.unwrap_or(0.5), s.b.unwrap_or(0.0), range(1.0, 2.0))?,
        Preset::PowerLaw => {
            MeridianCurve::power_law(s.c.unwrap_or(1.0), -(beta * beta) / (alpha * alpha), range(1.0, 2.0))?
        }
        Preset::Circle | Preset::Example1 => MeridianCurve::circle(s.a.unwrap_or(1.0), range(-0.7, 0.7))?,
        Preset::Hyperbolic | Preset::Example2 => MeridianCurve::hyperbolic(s.a.unwrap_or(1.0), range(0.1, 1.5))?,
        Preset::Minimal => {
            let a_const = s.a_const.unwrap_or(0.25);
            let (lo, hi) = minimal_default_interval(kind, alpha, a_const);
            let requested = range(lo, hi);
            let m = minimal_meridian(
                kind,
                alpha,
                beta,
                a_const,
                s.phase.unwrap_or(0.0),
                s.eps.unwrap_or(1.0),
                requested,
            )?;
            if m.domain() != requested {
                let (a, b) = m.domain();
                return Err(CliError::Input(format!(
                    "minimal meridian is admissible only on [{a}, {b}], not on [{}, {}]",
                    requested.0, requested.1
                )));
            }
            m
        }
    };
    Ok(RotationalSurface::new(kind, alpha, beta, meridian)?)
}

/// Builds the surface and its grid, and checks every grid point against the
/// admissible domain before anything is evaluated.
pub fn resolve_grid(s: &SurfaceArgs, grid: &GridArgs) -> CliResult<Grid> {
    if grid.u_count < 2 || grid.v_count < 2 {
        return Err(CliError::Input("grid counts must be at least 2".into()));
    }
    let surface = build_surface(s, (grid.u_min, grid.u_max))?;
    let (lo, hi) = surface.meridian().domain();
    let (u_min, u_max) = (grid.u_min.unwrap_or(lo), grid.u_max.unwrap_or(hi));
    let (v_min, v_max) = (grid.v_min, grid.v_max.unwrap_or(max_v(surface.beta())));
    if !(u_min < u_max) || !(v_min < v_max) {
        return Err(CliError::Input("grid ranges must be increasing".into()));
    }
    if v_min < 0.0 || v_max > TAU {
        return Err(CliError::Input(format!("v range [{v_min}, {v_max}] leaves the chart [0, 2π]")));
    }
    let us = linspace(u_min, u_max, grid.u_count);
    for &u in &us {
        surface.closed_curvatures(u)?;
    }
    Ok(Grid { vs: linspace(v_min, v_max, grid.v_count), us, surface })
}
