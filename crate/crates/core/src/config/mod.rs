//! Cubical inner approximations of periodic-point spaces and their simplicial models.

pub mod cubical;
pub mod relabel;
pub mod space;

pub use cubical::{Cell, CubicalComplex};
pub use relabel::{relabel_isomorphism, Relabeling};
pub use space::{
  build_pp_xm, build_pp_yz, cubical_to_simplicial, CircleSpace, CubicalZpComplex, GridSpec, SpaceKind,
  DEFAULT_CELL_BUDGET,
};
