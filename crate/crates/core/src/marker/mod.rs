//! Finite dynamical systems: marker checks, ε-embeddings, universality maps and marker functions.

pub mod embedding;
pub mod phi;
pub mod report;
pub mod system;

pub use embedding::{
  epsilon_embedding, universality_map, verify_universality, EpsEmbedding, Trajectory, UniversalityMap,
};
pub use phi::{lindenstrauss_phi, phi, MarkerHypothesis, PhiReport};
pub use report::{obstruction_report, CertificateStore, ObstructionReport, ObstructionRow, Side, StoreEntry};
pub use system::{check_marker, FiniteDynSys, MarkerWitness};
