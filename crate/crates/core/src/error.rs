use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tangent plane is not spacelike (Gram determinant {gram:e})")]
    DegenerateTangentPlane { gram: f64 },

    #[error("normal plane has no spacelike/timelike split: only lightlike candidates found")]
    LightlikeNormalDirection,

    #[error("induced metric is not positive definite at (u, v) = ({u}, {v}): E = {e:e}, EG - F^2 = {det:e}")]
    NotSpacelike { u: f64, v: f64, e: f64, det: f64 },

    #[error("parameter point (u, v) = ({u}, {v}) lies outside the patch domain")]
    OutOfDomain { u: f64, v: f64 },

    #[error("analytic derivatives requested but the embedding only supplies positions")]
    NoAnalyticDerivatives,

    #[error("parameters are not principal at (u, v) = ({u}, {v}): F = {f:e}, M = {m:e}")]
    NotPrincipalParameters { u: f64, v: f64, f: f64, m: f64 },

    #[error("mean curvature vector vanishes at (u, v) = ({u}, {v})")]
    MinimalPoint { u: f64, v: f64 },

    #[error("mean curvature vector is lightlike at (u, v) = ({u}, {v})")]
    LightlikeMeanCurvature { u: f64, v: f64 },

    #[error("domain violation at u = {u}: {reason}")]
    DomainViolation { u: f64, reason: String },

    #[error("singular configuration at u = {u}: {denominator} vanishes")]
    SingularConfiguration { u: f64, denominator: &'static str },

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("meridian samples are under-resolved: interpolation error estimate {estimate:e} exceeds {limit:e}")]
    UnderResolved { estimate: f64, limit: f64 },

    #[error("integration hit the singularity guard at u = {u}: {denominator} is below the guard")]
    SingularityReached { u: f64, denominator: &'static str },

    #[error("step size underflow at u = {u} (h = {h:e})")]
    StepUnderflow { u: f64, h: f64 },

    #[error("maximum number of steps ({steps}) reached at u = {u}")]
    MaxSteps { u: f64, steps: usize },

    #[error("surface is not minimal at u = {u}: residual {residual:e}")]
    NotMinimal { u: f64, residual: f64 },
}
