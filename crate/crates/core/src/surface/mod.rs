//! Numerical invariants of an arbitrary parametrized spacelike surface.

mod forms;
mod invariants;
mod patch;

pub use forms::{first_form, second_form, FirstForm, SecondForm};
pub use invariants::{
    allied_mean_curvature_magnitude, frame_invariants, frame_invariants_with_step, invariants,
    FrameInvariants, InvariantReport, PointClass, DEFAULT_FRAME_STEP,
};
pub use patch::{
    DerivativeMode, Embedding, Jet, ParamDomain, PositionFn, SurfacePatch, DEFAULT_FD_SECOND_STEP,
    DEFAULT_FD_STEP,
};
