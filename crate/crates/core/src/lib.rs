//! Certified bounds for the Z_p-index and Z_p-coindex of free Z_p-spaces.
//!
//! The crate builds free simplicial and cubical Z_p-complexes (joins of discrete `Z_p`,
//! discretized periodic-point spaces of shift systems), computes F_p homology, searches for
//! equivariant simplicial maps, and combines the results into checkable certificates. It also
//! enumerates periodic points of three-symbol subshifts and evaluates marker functions on finite
//! dynamical systems in exact rational arithmetic.

pub mod arith;
pub mod config;
pub mod error;
pub mod index;
pub mod marker;
pub mod simplicial;
pub mod symbolic;

pub use error::{Error, Result};

/// Crate version, recorded in artifact provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
