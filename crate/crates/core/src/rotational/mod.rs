//! Rotational surfaces of the first and second type: meridians, the
//! embeddings, and closed-form invariants along the meridian.

mod closed;
mod curve;
mod spline;
mod surface;

pub use closed::CurvatureInvariants;
pub use curve::{MeridianCurve, MeridianJet, MeridianShape, Provenance, SampledMeridian};
pub use spline::{CubicSpline, SampledChannel};
pub use surface::{RotationalSurface, SurfaceKind};
