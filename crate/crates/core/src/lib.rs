//! Invariants of spacelike surfaces in Minkowski 4-space and the special
//! classes of general rotational surfaces: flat, with flat normal
//! connection, parabolic, minimal and Chen.
//!
//! * [`minkowski`]: the signature (3,1) inner product, causal classes,
//!   orientation and pseudo-orthonormal normal frames.
//! * [`surface`]: fundamental forms, `k`, `kappa`, Gauss curvature, mean
//!   curvature vector and frame invariants of any [`surface::SurfacePatch`].
//! * [`rotational`]: closed-form embeddings and invariants of general
//!   rotational surfaces of first and second type.
//! * [`meridian`]: generators for the minimal and parabolic families in
//!   closed form and the flat and flat-normal families by ODE integration.

pub mod error;
pub mod meridian;
pub mod minkowski;
pub mod rotational;
pub mod sampling;
pub mod surface;

pub use error::{Error, Result};
pub use minkowski::{SpacetimeVector, DEFAULT_TOL};
