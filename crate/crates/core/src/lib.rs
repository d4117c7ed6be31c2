//! Numerical ranges of complex square matrices.
//!
//! The crate computes the numerical range `W(A)`, the numerical radius `w(A)`,
//! the maximal numerical range `W0(A)` (the numerical range of the compression
//! of `A` onto the top eigenspace of `A*A`), the peripheral spectrum and the
//! normaloid classification, together with the set of chords of the circle
//! `|z| = ‖A‖` that lie on the boundary of `W(A)`.
//!
//! [`theorems`] turns the structural facts relating these sets into seeded,
//! reproducible checkers.

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod numrange;
pub mod theorems;

pub use error::{Error, Result};
pub use geometry::{AngleGrid, Chord, ConvexRegion};
pub use linalg::{CMatrix, HermEigen, Subspace};
pub use num_complex::Complex64;
pub use numrange::{RangeReport, SpectralData, Tolerances};
