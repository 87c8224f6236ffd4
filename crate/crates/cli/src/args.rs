use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minkowski_surfaces::meridian::{DEFAULT_GUARD_TOL, DEFAULT_H_INIT, DEFAULT_H_MAX};
use minkowski_surfaces::rotational::SurfaceKind;
use minkowski_surfaces::DEFAULT_TOL;

use crate::format::Format;

#[derive(Debug, Parser)]
#[command(name = "mksurf", version, about = "Invariants and special classes of general rotational surfaces in Minkowski 4-space")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Absolute tolerance for every degeneracy test.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Use central differences with this step for first partials instead of
    /// analytic derivatives.
    #[arg(long, global = true)]
    pub fd_step: Option<f64>,

    /// Step for second partials in finite-difference mode.
    #[arg(long, global = true, requires = "fd_step")]
    pub fd_second_step: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep all pointwise invariants over a (u, v) grid.
    Invariants(SweepArgs),
    /// Generate a meridian of one of the special families.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the seeded property suite.
    Verify(VerifyArgs),
    /// Write a quad mesh of the surface with curvature channels (JSON).
    ExportMesh(MeshArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    Second,
}

impl From<KindArg> for SurfaceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::First => SurfaceKind::FirstType,
            KindArg::Second => SurfaceKind::SecondType,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Line,
    PowerLaw,
    Circle,
    Hyperbolic,
    Minimal,
    Example1,
    Example2,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum, required_unless_present = "meridian")]
    pub preset: Option<Preset>,

    /// Sampled meridian file written by `generate`.
    #[arg(long, conflicts_with = "preset")]
    pub meridian: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,

    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Slope (line), radius (circle, hyperbolic).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Intercept (line).
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,

    /// Coefficient (power law).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,

    /// Constant A of the minimal meridian.
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a_const: Option<f64>,

    /// Phase C of the minimal meridian.
    #[arg(long = "C", allow_negative_numbers = true)]
    pub phase: Option<f64>,

    /// Branch sign of the minimal meridian, +1 or -1.
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub u_min: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub u_max: Option<f64>,

    #[arg(long, default_value_t = 10)]
    pub u_count: usize,

    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub v_min: f64,

    /// Defaults to min(2π, 2/β).
    #[arg(long, allow_negative_numbers = true)]
    pub v_max: Option<f64>,

    #[arg(long, default_value_t = 10)]
    pub v_count: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,

    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Coordinate (1-4) dropped by the projection to 3-space.
    #[arg(long, default_value_t = 4)]
    pub drop_axis: i64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// `all` or one of minkowski_core, surface_kernel, rotational_surfaces,
    /// meridian_solvers, cli_runner.
    #[arg(default_value = "all")]
    pub scope: String,
}

#[derive(Debug, Clone, Args)]
pub struct TypeArgs {
    #[arg(long, value_enum, default_value_t = KindArg::First)]
    pub kind: KindArg,

    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub alpha: f64,

    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Also write the report as JSON to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IntervalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub u_min: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub u_max: Option<f64>,

    /// Number of output samples.
    #[arg(long, default_value_t = 401)]
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    DevelopableRuled,
    NonDevelopableRuled,
    PowerLaw,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Closed-form minimal meridian, parametrized by f.
    Minimal {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long = "A", allow_negative_numbers = true)]
        a_const: f64,
        #[arg(long = "C", allow_negative_numbers = true, default_value_t = 0.0)]
        phase: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        eps: f64,
        #[command(flatten)]
        interval: IntervalArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Meridians whose surfaces consist of parabolic points.
    Parabolic {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[command(flatten)]
        interval: IntervalArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Flat surfaces by integrating the graph-chart ODE (g = u).
    Flat(OdeArgs),
    /// Surfaces with flat normal connection by integrating the graph-chart ODE.
    FlatNormal(OdeArgs),
    /// Circle meridian of the first type, on the de Sitter quadric.
    Example1(ExampleArgs),
    /// Hyperbola meridian of the second type, on the hyperbolic quadric.
    Example2(ExampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OdeArgs {
    #[command(flatten)]
    pub ty: TypeArgs,

    #[arg(long, allow_negative_numbers = true)]
    pub u0: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub f0: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub fp0: f64,

    /// End of the integration; its side of u0 fixes the direction.
    #[arg(long, allow_negative_numbers = true)]
    pub u_end: f64,

    #[arg(long, default_value_t = DEFAULT_H_INIT)]
    pub h_init: f64,

    #[arg(long, default_value_t = 1e-12)]
    pub h_min: f64,

    #[arg(long, default_value_t = DEFAULT_H_MAX)]
    pub h_max: f64,

    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,

    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,

    #[arg(long, default_value_t = DEFAULT_GUARD_TOL)]
    pub guard_tol: f64,

    #[arg(long, default_value_t = 200_000)]
    pub max_steps: usize,

    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub a: f64,

    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub alpha: f64,

    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub beta: f64,

    #[command(flatten)]
    pub interval: IntervalArgs,

    #[command(flatten)]
    pub report: ReportArgs,
}
