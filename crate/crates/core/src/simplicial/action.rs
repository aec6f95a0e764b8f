//! Free simplicial Z_p-actions and the standard free Z_p-complexes built from them.

use std::collections::HashSet;

use super::complex::{Simplex, SimplicialComplex};
use super::homology::{homology, HomologyProfile};
use crate::arith::require_prime;
use crate::error::{Error, Result};

/// A vertex permutation generating a Z_p-action: `perm` composed `p` times is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZpActionMap {
  p: u64,
  perm: Vec<usize>,
}

impl ZpActionMap {
  pub fn new(p: u64, perm: Vec<usize>) -> Result<Self> {
    require_prime(p)?;
    let n = perm.len();
    let mut seen = vec![false; n];
    for &v in &perm {
      if v >= n || std::mem::replace(&mut seen[v], true) {
        return Err(Error::InvalidInput(format!("not a permutation of 0..{n}")));
      }
    }
    let a = Self { p, perm };
    let order_ok = (0..n).all(|v| {
      let mut w = v;
      for _ in 0..p {
        w = a.perm[w];
      }
      w == v
    });
    if !order_ok {
      return Err(Error::InvalidInput(format!("permutation does not have order dividing {p}")));
    }
    Ok(a)
  }

  /// The cyclic shift on `orbits` consecutive blocks of size `p`.
  pub fn cyclic_blocks(p: u64, orbits: usize) -> Result<Self> {
    let p_us = p as usize;
    let perm = (0..orbits * p_us).map(|v| (v / p_us) * p_us + (v % p_us + 1) % p_us).collect();
    Self::new(p, perm)
  }

  pub fn p(&self) -> u64 {
    self.p
  }

  pub fn perm(&self) -> &[usize] {
    &self.perm
  }

  pub fn apply(&self, v: usize) -> usize {
    self.perm[v]
  }

  pub fn apply_power(&self, mut v: usize, a: u64) -> usize {
    for _ in 0..a % self.p {
      v = self.perm[v];
    }
    v
  }

  /// The generator `perm^a`, which generates the same group when `p` does not divide `a`.
  pub fn power(&self, a: u64) -> Self {
    let perm = (0..self.perm.len()).map(|v| self.apply_power(v, a)).collect();
    Self { p: self.p, perm }
  }

  pub fn image(&self, s: &[usize], a: u64) -> Simplex {
    let mut img: Simplex = s.iter().map(|&v| self.apply_power(v, a)).collect();
    img.sort_unstable();
    img
  }

  /// Vertex orbits, each listed as `[r, perm(r), perm^2(r), ...]` starting at its smallest vertex.
  pub fn orbits(&self) -> Vec<Vec<usize>> {
    let mut seen = vec![false; self.perm.len()];
    let mut out = Vec::new();
    for r in 0..self.perm.len() {
      if seen[r] {
        continue;
      }
      let mut orbit = vec![r];
      seen[r] = true;
      let mut v = self.perm[r];
      while v != r {
        seen[v] = true;
        orbit.push(v);
        v = self.perm[v];
      }
      out.push(orbit);
    }
    out
  }
}

/// A finite simplicial complex with a free simplicial Z_p-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeZpComplex {
  complex: SimplicialComplex,
  action: ZpActionMap,
  simply_connected: bool,
}

impl FreeZpComplex {
  /// Validates simpliciality and freeness of `action` on `complex`.
  pub fn new(complex: SimplicialComplex, action: ZpActionMap) -> Result<Self> {
    if action.perm.len() != complex.vertex_count() {
      return Err(Error::InvalidInput(format!(
        "permutation has {} entries for {} vertices",
        action.perm.len(),
        complex.vertex_count()
      )));
    }
    complex.validate()?;
    let p = action.p;
    for s in complex.iter() {
      let img = action.image(s, 1);
      if !complex.contains(&img) {
        return Err(Error::InvalidComplex(format!("action maps {s:?} to non-simplex {img:?}")));
      }
      for a in 1..p {
        if action.image(s, a) == *s {
          return Err(Error::NotFree(format!("simplex {s:?} is fixed by perm^{a}")));
        }
      }
    }
    Ok(Self { complex, action, simply_connected: false })
  }

  pub fn complex(&self) -> &SimplicialComplex {
    &self.complex
  }

  pub fn action(&self) -> &ZpActionMap {
    &self.action
  }

  pub fn p(&self) -> u64 {
    self.action.p
  }

  pub fn vertex_count(&self) -> usize {
    self.complex.vertex_count()
  }

  pub fn dim(&self) -> isize {
    self.complex.dim()
  }

  pub fn is_empty(&self) -> bool {
    self.complex.is_empty()
  }

  /// Set only when simple connectivity is known without computing π_1: joins of two
  /// nonempty complexes one of which is connected, their subdivisions, or by assertion.
  pub fn simply_connected_verified(&self) -> bool {
    self.simply_connected
  }

  /// Records an external proof that the complex is simply connected.
  pub fn assert_simply_connected(mut self) -> Self {
    self.simply_connected = true;
    self
  }

  pub fn empty(p: u64) -> Result<Self> {
    Self::new(SimplicialComplex::empty(), ZpActionMap::new(p, Vec::new())?)
  }

  /// The same complex with generator `perm^a`.
  pub fn with_action_power(&self, a: u64) -> Result<Self> {
    if a.is_multiple_of(self.p()) {
      return Err(Error::InvalidInput(format!("exponent {a} is divisible by p = {}", self.p())));
    }
    Ok(Self {
      complex: self.complex.clone(),
      action: self.action.power(a),
      simply_connected: self.simply_connected,
    })
  }

  pub fn homology(&self, p_coeff: u64, reduced: bool) -> Result<HomologyProfile> {
    homology(&self.complex, p_coeff, reduced)
  }

  /// Whether the underlying graph is connected (the empty complex is not).
  pub fn is_connected(&self) -> bool {
    graph_connected(&self.complex)
  }
}

fn graph_connected(x: &SimplicialComplex) -> bool {
  let n = x.vertex_count();
  if n == 0 {
    return false;
  }
  let mut adj = vec![Vec::new(); n];
  for e in x.simplices(1) {
    adj[e[0]].push(e[1]);
    adj[e[1]].push(e[0]);
  }
  let mut seen = HashSet::from([0usize]);
  let mut stack = vec![0usize];
  while let Some(v) = stack.pop() {
    for &w in &adj[v] {
      if seen.insert(w) {
        stack.push(w);
      }
    }
  }
  seen.len() == n
}

/// `Z_p` acting on itself: `p` isolated vertices permuted cyclically.
pub fn make_discrete_zp(p: u64) -> Result<FreeZpComplex> {
  require_prime(p)?;
  let complex = SimplicialComplex::from_generators(p as usize, Vec::new())?;
  FreeZpComplex::new(complex, ZpActionMap::cyclic_blocks(p, 1)?)
}

/// Join with the simultaneous action. `x * ∅ = x`.
pub fn join(x: &FreeZpComplex, y: &FreeZpComplex) -> Result<FreeZpComplex> {
  if x.p() != y.p() {
    return Err(Error::PrimeMismatch { left: x.p(), right: y.p() });
  }
  if y.is_empty() {
    return Ok(x.clone());
  }
  if x.is_empty() {
    return Ok(y.clone());
  }
  let complex = x.complex.join(&y.complex);
  let offset = x.vertex_count();
  let perm = x.action.perm.iter().copied().chain(y.action.perm.iter().map(|v| v + offset)).collect();
  let mut out = FreeZpComplex::new(complex, ZpActionMap::new(x.p(), perm)?)?;
  // conn(X*Y) >= conn X + conn Y + 2 >= 1 once one factor is connected and the other nonempty
  out.simply_connected = x.is_connected() || y.is_connected();
  Ok(out)
}

/// The join of `n + 1` copies of discrete `Z_p`. Copy `c` occupies vertices `c*p .. (c+1)*p`.
pub fn e_n_zp(n: usize, p: u64) -> Result<FreeZpComplex> {
  let point = make_discrete_zp(p)?;
  let mut acc = point.clone();
  for _ in 0..n {
    acc = join(&acc, &point)?;
  }
  Ok(acc)
}

/// Barycentric subdivision with the induced action.
pub fn barycentric_subdivide(x: &FreeZpComplex) -> Result<FreeZpComplex> {
  let (complex, barycenters) = x.complex.barycentric_subdivision();
  let perm = barycenters
    .iter()
    .map(|s| {
      let img = x.action.image(s, 1);
      x.complex.flat_index(&img).expect("action is simplicial")
    })
    .collect();
  let mut out = FreeZpComplex::new(complex, ZpActionMap::new(x.p(), perm)?)?;
  out.simply_connected = x.simply_connected;
  Ok(out)
}

/// Applies [`barycentric_subdivide`] `depth` times.
pub fn subdivide_n(x: &FreeZpComplex, depth: usize) -> Result<FreeZpComplex> {
  let mut acc = x.clone();
  for _ in 0..depth {
    acc = barycentric_subdivide(&acc)?;
  }
  Ok(acc)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::simplicial::homology::Connectivity;

  #[test]
  fn discrete() {
    for p in [2, 3, 5] {
      let z = make_discrete_zp(p).unwrap();
      assert_eq!(z.vertex_count(), p as usize);
      assert_eq!(z.dim(), 0);
      for a in 1..p {
        for v in 0..p as usize {
          assert_ne!(z.action().apply_power(v, a), v);
        }
      }
    }
    assert_eq!(make_discrete_zp(2).unwrap().action().perm(), &[1, 0]);
    assert_eq!(make_discrete_zp(3).unwrap().action().perm(), &[1, 2, 0]);
    assert!(make_discrete_zp(4).is_err());
    assert!(make_discrete_zp(1).is_err());
  }

  #[test]
  fn rejects_fixed_simplex() {
    // Z_2 swapping the ends of a single edge fixes the edge setwise.
    let edge = SimplicialComplex::from_generators(2, vec![vec![0, 1]]).unwrap();
    let act = ZpActionMap::new(2, vec![1, 0]).unwrap();
    assert!(matches!(FreeZpComplex::new(edge, act), Err(Error::NotFree(_))));
  }

  #[test]
  fn rejects_wrong_order() {
    assert!(ZpActionMap::new(2, vec![1, 2, 0]).is_err());
    assert!(ZpActionMap::new(3, vec![0, 0, 1]).is_err());
  }

  #[test]
  fn join_mismatch() {
    let a = make_discrete_zp(2).unwrap();
    let b = make_discrete_zp(3).unwrap();
    assert!(matches!(join(&a, &b), Err(Error::PrimeMismatch { .. })));
  }

  #[test]
  fn z2_join_z2_is_square() {
    let z = make_discrete_zp(2).unwrap();
    let c = join(&z, &z).unwrap();
    assert_eq!(c.vertex_count(), 4);
    assert_eq!(c.complex().count(1), 4);
    assert_eq!(c.dim(), 1);
    assert!(!c.simply_connected_verified());
    let h = c.homology(2, false).unwrap();
    assert_eq!(h.betti, vec![1, 1]);
  }

  #[test]
  fn join_with_empty() {
    let z = make_discrete_zp(3).unwrap();
    let e = FreeZpComplex::empty(3).unwrap();
    assert_eq!(join(&z, &e).unwrap(), z);
    assert_eq!(join(&e, &z).unwrap(), z);
  }

  #[test]
  fn octahedron() {
    let e2 = e_n_zp(2, 2).unwrap();
    assert_eq!(e2.vertex_count(), 6);
    assert_eq!(e2.complex().count(1), 12);
    assert_eq!(e2.complex().count(2), 8);
    assert!(e2.simply_connected_verified());
    let h = e2.homology(2, true).unwrap();
    assert_eq!(h.betti, vec![0, 0, 1]);
    assert_eq!(h.homological_connectivity, Connectivity::Finite(1));
  }

  #[test]
  fn subdivided_octahedron() {
    let e2 = e_n_zp(2, 2).unwrap();
    let s = barycentric_subdivide(&e2).unwrap();
    assert_eq!(s.vertex_count(), 26);
    assert_eq!(s.homology(2, false).unwrap().betti, vec![1, 0, 1]);
    assert!(s.simply_connected_verified());
  }

  #[test]
  fn action_power() {
    let e1 = e_n_zp(1, 3).unwrap();
    let sq = e1.with_action_power(2).unwrap();
    assert_eq!(sq.action().perm(), &[2, 0, 1, 5, 3, 4]);
    assert!(e1.with_action_power(3).is_err());
  }

  #[test]
  fn orbits_start_at_smallest() {
    let a = ZpActionMap::new(3, vec![2, 0, 1, 4, 5, 3]).unwrap();
    assert_eq!(a.orbits(), vec![vec![0, 2, 1], vec![3, 4, 5]]);
  }
}
