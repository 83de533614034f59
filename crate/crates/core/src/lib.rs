//! Exact ambient-metric computations for CR invariants of the sphere.
//!
//! The crate is layered bottom-up:
//!
//! - [`algebra`]: Gaussian rationals, polynomials in A-variables, weight-truncated
//!   series and exact linear algebra.
//! - [`ambient`]: homogeneous series on the ambient space, the Laplacian, harmonic
//!   extension, the Q-operator and harmonic tensors at the base point.
//! - [`jets`]: boundary jets in Siegel coordinates, pluriharmonic spans, the
//!   normal-form slices and the induced action of the parabolic subgroup.
//! - [`invariants`]: contraction schemes, Weyl invariants, classification of
//!   invariant polynomials and the jet isomorphism check.

pub mod algebra;
pub mod ambient;
pub mod checks;
mod error;
pub mod invariants;
pub mod jets;
pub mod sampling;

pub use error::{Error, Result};
