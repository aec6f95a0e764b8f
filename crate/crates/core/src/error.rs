use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
  #[error("{0} is not a prime")]
  NotPrime(u64),

  #[error("prime mismatch: {left} vs {right}")]
  PrimeMismatch { left: u64, right: u64 },

  #[error("invalid complex: {0}")]
  InvalidComplex(String),

  #[error("action is not free: {0}")]
  NotFree(String),

  #[error("invalid input: {0}")]
  InvalidInput(String),

  /// A search or enumeration ran out of budget. This is never a negative answer.
  #[error("budget exceeded in {what}: limit {limit}, reached {reached}")]
  BudgetExceeded { what: String, limit: u64, reached: u64 },

  #[error("inconsistent certificates: {0}")]
  Inconsistent(String),

  #[error("missing certificates: {0}")]
  MissingCertificates(String),

  #[error("json: {0}")]
  Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
