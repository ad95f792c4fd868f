//! Exact tail asymptotics for two-dimensional skip-free reflecting random
//! walks (double QBD processes), with a truncated-chain oracle that checks
//! every prediction numerically.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod model;
pub mod netgen;
pub mod numfmt;
pub mod oracle;

pub use error::{Error, ModelError, Result};
