//! Homology over the prime field F_p by column reduction of boundary matrices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::SimplicialComplex;
use crate::arith::{inv_mod, require_prime};
use crate::error::Result;

/// Homological connectivity: the largest `c` with vanishing reduced homology in degrees `<= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
  /// `-2` for the empty space, `-1` for a nonempty disconnected one.
  Finite(i64),
  /// All reduced homology vanishes.
  Acyclic,
}

impl Connectivity {
  pub fn finite(self) -> Option<i64> {
    match self {
      Connectivity::Finite(c) => Some(c),
      Connectivity::Acyclic => None,
    }
  }

  pub fn from_reduced_betti(nonempty: bool, reduced: &[usize]) -> Self {
    if !nonempty {
      return Connectivity::Finite(-2);
    }
    match reduced.iter().position(|&b| b != 0) {
      Some(k) => Connectivity::Finite(k as i64 - 1),
      None => Connectivity::Acyclic,
    }
  }
}

impl fmt::Display for Connectivity {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Connectivity::Finite(c) => write!(f, "{c}"),
      Connectivity::Acyclic => f.write_str("inf"),
    }
  }
}

impl Serialize for Connectivity {
  fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
    match self {
      Connectivity::Finite(c) => s.serialize_i64(*c),
      Connectivity::Acyclic => s.serialize_str("inf"),
    }
  }
}

impl<'de> Deserialize<'de> for Connectivity {
  fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
      Int(i64),
      Str(String),
    }
    match Raw::deserialize(d)? {
      Raw::Int(c) => Ok(Connectivity::Finite(c)),
      Raw::Str(s) if s == "inf" => Ok(Connectivity::Acyclic),
      Raw::Str(s) => Err(serde::de::Error::custom(format!("bad connectivity {s:?}"))),
    }
  }
}

/// Betti numbers of a complex over F_p together with its homological connectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
  pub p: u64,
  pub betti: Vec<usize>,
  pub reduced: bool,
  pub homological_connectivity: Connectivity,
}

impl HomologyProfile {
  /// Builds a profile from unreduced Betti numbers.
  pub fn from_unreduced(p: u64, unreduced: Vec<usize>, reduced: bool) -> Self {
    let nonempty = unreduced.first().is_some_and(|&b| b > 0);
    let mut red = unreduced.clone();
    if nonempty {
      red[0] -= 1;
    }
    let homological_connectivity = Connectivity::from_reduced_betti(nonempty, &red);
    Self { p, betti: if reduced { red } else { unreduced }, reduced, homological_connectivity }
  }

  pub fn betti(&self, k: usize) -> usize {
    self.betti.get(k).copied().unwrap_or(0)
  }

  /// Alternating sum of the unreduced Betti numbers.
  pub fn euler_characteristic(&self) -> i64 {
    let mut chi: i64 =
      self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    if self.reduced && self.homological_connectivity != Connectivity::Finite(-2) {
      chi += 1;
    }
    chi
  }
}

/// A sparse column over F_p: `(row, coefficient)` pairs, rows strictly increasing,
/// coefficients in `1..p`.
pub(crate) type Column = Vec<(usize, u64)>;

/// Rank of a sparse matrix over F_p, given by columns.
///
/// Standard left-to-right column reduction keyed on the lowest nonzero row.
pub(crate) fn rank_mod_p(columns: Vec<Column>, p: u64) -> usize {
  let mut pivots: HashMap<usize, Column> = HashMap::new();
  let mut rank = 0;
  for mut col in columns {
    while let Some(&(low, c)) = col.last() {
      match pivots.get(&low) {
        Some(piv) => {
          let (_, pc) = *piv.last().expect("pivot columns are nonzero");
          // col -= (c / pc) * piv
          let factor = c * inv_mod(pc, p).expect("nonzero") % p;
          col = axpy(&col, piv, p - factor, p);
        }
        None => break,
      }
    }
    if let Some(&(low, _)) = col.last() {
      pivots.insert(low, col);
      rank += 1;
    }
  }
  rank
}

/// `a + factor * b` over F_p.
fn axpy(a: &[(usize, u64)], b: &[(usize, u64)], factor: u64, p: u64) -> Column {
  let mut out = Vec::with_capacity(a.len() + b.len());
  let (mut i, mut j) = (0, 0);
  while i < a.len() || j < b.len() {
    let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
    let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
    if take_a {
      out.push(a[i]);
      i += 1;
    } else if take_b {
      out.push((b[j].0, factor * b[j].1 % p));
      j += 1;
    } else {
      let v = (a[i].1 + factor * b[j].1) % p;
      if v != 0 {
        out.push((a[i].0, v));
      }
      i += 1;
      j += 1;
    }
  }
  out
}

/// Boundary matrix of dimension `d` (columns = d-simplices) with signs reduced mod p.
fn boundary_columns(x: &SimplicialComplex, d: usize, p: u64) -> Vec<Column> {
  x.simplices(d)
    .iter()
    .map(|s| {
      let mut col: Column = (0..s.len())
        .map(|i| {
          let mut f = s.clone();
          f.remove(i);
          let row = x.position(&f).expect("closed complex");
          let sign = if i % 2 == 0 { 1 } else { p - 1 };
          (row, sign % p)
        })
        .filter(|&(_, c)| c != 0)
        .collect();
      col.sort_unstable();
      col
    })
    .collect()
}

/// Betti numbers of `x` with F_p coefficients.
pub fn homology(x: &SimplicialComplex, p: u64, reduced: bool) -> Result<HomologyProfile> {
  require_prime(p)?;
  let top = x.dim();
  if top < 0 {
    return Ok(HomologyProfile::from_unreduced(p, Vec::new(), reduced));
  }
  let top = top as usize;
  // ranks[d] = rank of the boundary map out of dimension d; ranks[0] = 0.
  let ranks: Vec<usize> = (0..top + 2)
    .map(|d| if d == 0 || d > top { 0 } else { rank_mod_p(boundary_columns(x, d, p), p) })
    .collect();
  let betti = (0..=top).map(|d| x.count(d) - ranks[d] - ranks[d + 1]).collect();
  Ok(HomologyProfile::from_unreduced(p, betti, reduced))
}

#[cfg(test)]
mod tests {
  use super::*;

  fn sc(n: usize, gens: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_generators(n, gens.iter().map(|g| g.to_vec())).unwrap()
  }

  #[test]
  fn point_is_acyclic() {
    let h = homology(&sc(1, &[]), 2, true).unwrap();
    assert_eq!(h.betti, vec![0]);
    assert_eq!(h.homological_connectivity, Connectivity::Acyclic);
  }

  #[test]
  fn circle() {
    let c = sc(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
    let h = homology(&c, 3, true).unwrap();
    assert_eq!(h.betti, vec![0, 1]);
    assert_eq!(h.homological_connectivity, Connectivity::Finite(0));
    let u = homology(&c, 3, false).unwrap();
    assert_eq!(u.betti, vec![1, 1]);
    assert_eq!(u.euler_characteristic(), c.euler_characteristic());
    assert_eq!(h.euler_characteristic(), c.euler_characteristic());
  }

  #[test]
  fn empty_space() {
    let h = homology(&SimplicialComplex::empty(), 2, true).unwrap();
    assert!(h.betti.is_empty());
    assert_eq!(h.homological_connectivity, Connectivity::Finite(-2));
  }

  #[test]
  fn projective_plane_depends_on_field() {
    // 6-vertex RP^2
    let rp2 = sc(
      6,
      &[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[2, 4, 5],
        &[1, 3, 5],
      ],
    );
    assert_eq!(homology(&rp2, 2, false).unwrap().betti, vec![1, 1, 1]);
    assert_eq!(homology(&rp2, 3, false).unwrap().betti, vec![1, 0, 0]);
  }

  #[test]
  fn connectivity_serde() {
    let s = serde_json::to_string(&Connectivity::Acyclic).unwrap();
    assert_eq!(s, "\"inf\"");
    let c: Connectivity = serde_json::from_str("-2").unwrap();
    assert_eq!(c, Connectivity::Finite(-2));
  }

  #[test]
  fn non_prime_rejected() {
    assert!(homology(&sc(1, &[]), 4, true).is_err());
  }
}
