//! Per-prime comparison of certified coindex bounds for `P_p(X(N, δ))` and `P_p(Z)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{BoundType, CertificateKind, Evidence, IndexCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
  /// Discretizations of `P_p(X(N, δ))`.
  X,
  /// Discretizations of `P_p(Z)`.
  Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreEntry {
  pub side: Side,
  /// Grid label, e.g. `"N=1,G=4"`; both sides of a prime must use the same one.
  pub grid: String,
  pub certificate: IndexCertificate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStore {
  pub entries: Vec<StoreEntry>,
}

impl CertificateStore {
  pub fn push(&mut self, side: Side, grid: &str, certificate: IndexCertificate) {
    self.entries.push(StoreEntry { side, grid: grid.to_string(), certificate });
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionRow {
  pub p: u64,
  pub grid: String,
  pub x_coind_lower: Option<i64>,
  pub z_coind_lower: Option<i64>,
  /// Smallest certified upper bound on `coind_p` of the `Z` side (an `ind` upper bound counts).
  pub z_coind_upper: Option<i64>,
  /// Search nodes spent on unsuccessful searches for the `Z` side.
  pub z_exhaustion_nodes: u64,
  pub gap_certified: bool,
  pub verdict: String,
  pub certificate_hashes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
  pub rows: Vec<ObstructionRow>,
}

impl ObstructionReport {
  pub fn to_json(&self) -> String {
    serde_json::to_string_pretty(self).expect("serializable")
  }

  pub fn to_csv(&self) -> String {
    let opt = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
    let mut out = String::from(
      "p,grid,x_coind_lower,z_coind_lower,z_coind_upper,z_exhaustion_nodes,gap_certified,verdict\n",
    );
    for r in &self.rows {
      out.push_str(&format!(
        "{},\"{}\",{},{},{},{},{},\"{}\"\n",
        r.p,
        r.grid,
        opt(r.x_coind_lower),
        opt(r.z_coind_lower),
        opt(r.z_coind_upper),
        r.z_exhaustion_nodes,
        r.gap_certified,
        r.verdict
      ));
    }
    out
  }
}

/// Re-validates every certificate and reports, per prime, whether
/// `coind(X side) >= coind(Z side) + 1` is certified at the stored resolution.
pub fn obstruction_report(primes: &[u64], store: &CertificateStore) -> Result<ObstructionReport> {
  if store.entries.is_empty() {
    return Err(Error::MissingCertificates("certificate store is empty".into()));
  }
  for e in &store.entries {
    e.certificate.revalidate()?;
  }
  let primes: BTreeSet<u64> = primes.iter().copied().collect();
  let mut rows = Vec::new();
  for &p in &primes {
    let at_p: Vec<&StoreEntry> = store.entries.iter().filter(|e| e.certificate.p == p).collect();
    let grids: BTreeSet<&str> = at_p.iter().map(|e| e.grid.as_str()).collect();
    let mut any = false;
    for grid in grids {
      let side = |s: Side| -> Vec<&IndexCertificate> {
        at_p.iter().filter(|e| e.side == s && e.grid == grid).map(|e| &e.certificate).collect()
      };
      let (xs, zs) = (side(Side::X), side(Side::Z));
      if xs.is_empty() || zs.is_empty() {
        continue;
      }
      any = true;
      let established = |cs: &[&IndexCertificate], b: BoundType| -> Vec<i64> {
        cs.iter().filter(|c| c.is_established() && c.bound_type == b).map(|c| c.value).collect()
      };
      let x_coind_lower = established(&xs, BoundType::CoindLower).into_iter().max();
      let z_coind_lower = established(&zs, BoundType::CoindLower).into_iter().max();
      let z_coind_upper = established(&zs, BoundType::CoindUpper)
        .into_iter()
        .chain(established(&zs, BoundType::IndUpper))
        .min();
      let z_exhaustion_nodes = zs
        .iter()
        .filter(|c| c.kind == CertificateKind::Exhaustion)
        .map(|c| match c.evidence {
          Evidence::Exhaustion { nodes, .. } => nodes,
          _ => 0,
        })
        .sum();
      let gap_certified = matches!((x_coind_lower, z_coind_upper), (Some(lo), Some(hi)) if lo > hi);
      let verdict = if gap_certified {
        format!(
          "gap certified: coind >= {} on X side, coind <= {} on Z side",
          x_coind_lower.unwrap(),
          z_coind_upper.unwrap()
        )
      } else {
        "gap not certified at this resolution".to_string()
      };
      let mut certificate_hashes: Vec<String> = xs.iter().chain(&zs).map(|c| c.hash()).collect();
      certificate_hashes.sort();
      rows.push(ObstructionRow {
        p,
        grid: grid.to_string(),
        x_coind_lower,
        z_coind_lower,
        z_coind_upper,
        z_exhaustion_nodes,
        gap_certified,
        verdict,
        certificate_hashes,
      });
    }
    if !any {
      return Err(Error::MissingCertificates(format!("no matching X and Z certificates for p = {p}")));
    }
  }
  Ok(ObstructionReport { rows })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::index::{ambient_sphere_bound, coindex_of_empty};

  #[test]
  fn empty_store_rejected() {
    assert!(matches!(
      obstruction_report(&[2], &CertificateStore::default()),
      Err(Error::MissingCertificates(_))
    ));
  }

  #[test]
  fn missing_side_rejected() {
    let mut s = CertificateStore::default();
    s.push(Side::X, "G=2", coindex_of_empty(2));
    assert!(obstruction_report(&[2], &s).is_err());
  }

  #[test]
  fn gap_flag() {
    let mut s = CertificateStore::default();
    s.push(Side::X, "G=2", coindex_of_empty(3));
    s.push(Side::Z, "G=2", ambient_sphere_bound(1, 3).unwrap());
    let r = obstruction_report(&[3], &s).unwrap();
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].x_coind_lower, Some(-1));
    assert_eq!(r.rows[0].z_coind_upper, Some(1));
    assert!(!r.rows[0].gap_certified);
    assert!(r.to_csv().lines().nth(1).unwrap().ends_with("\"gap not certified at this resolution\""));
  }
}
