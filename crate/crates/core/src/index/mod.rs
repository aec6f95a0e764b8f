//! Certified bounds on the Z_p-index and Z_p-coindex.

pub mod certificate;
pub mod rules;
pub mod search;
pub mod verify;

pub use certificate::{BoundType, CertificateKind, Evidence, IndexCertificate, MapEvidence, Model};
pub use rules::{
  ambient_sphere_bound, best_coind_lower, best_ind_upper, coindex_le_index_check, coindex_lower,
  coindex_of_empty, ensure_consistent, index_lower_from_connectivity, index_upper,
  index_upper_from_dimension, iterate_action_coindex, join_coindex_certificate, product_coindex_certificate,
  restrict_coindex_witness,
};
pub use search::{search_equivariant_map, MapSearch, SearchBudget};
pub use verify::check_equivariant_map;
