//! Exact computations on genus-2 curves, their classifying map to ℙ³, the
//! Kummer quartic, and the cohomology of the associated Steiner bundle.

pub mod classifier;
pub mod curve;
pub mod error;
pub mod fiberlab;
pub mod field;
pub mod kummer;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod seed;
pub mod steiner;
pub mod univariate;

/// Version string recorded in reports and cache keys.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use field::{FieldContext, Scalar};
pub use matrix::ExactMatrix;
pub use poly::MultiPoly;
pub use univariate::UniPoly;
