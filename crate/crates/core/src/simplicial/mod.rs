//! Finite simplicial complexes carrying free Z_p-actions.

pub mod action;
pub mod complex;
pub mod homology;
pub mod json;

pub use action::{
  barycentric_subdivide, e_n_zp, join, make_discrete_zp, subdivide_n, FreeZpComplex, ZpActionMap,
};
pub use complex::{Simplex, SimplicialComplex};
pub use homology::{homology, Connectivity, HomologyProfile};
pub use json::ComplexJson;
