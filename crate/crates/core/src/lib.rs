//! Exact symbolic calculus of almost-cosymplectic-contact structures.
//!
//! Coefficients are rational functions over ℚ, so every identity is decided by an
//! exact zero test rather than sampled numerically.

pub mod algebra;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod catalog;
pub mod cli;
pub mod io;
pub mod random;
pub mod report;
pub mod structures;
pub mod suite;
pub mod symmetries;

pub use algebra::{Chart, Poly, Scalar};
pub use error::{Error, Result};
pub use exterior::{DiffForm, Multivector};
