//! Finite abstract simplicial complexes with a canonical storage layout.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A simplex is a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex on the vertex set `0..vertex_count`.
///
/// Simplices are stored grouped by dimension, each group sorted lexicographically, so two
/// complexes with the same simplices compare equal. Every vertex is a 0-simplex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
  vertex_count: usize,
  by_dim: Vec<Vec<Simplex>>,
  index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
  fn eq(&self, other: &Self) -> bool {
    self.vertex_count == other.vertex_count && self.by_dim == other.by_dim
  }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
  pub fn empty() -> Self {
    Self { vertex_count: 0, by_dim: Vec::new(), index: Vec::new() }
  }

  /// Builds the downward closure of `generators` on `vertex_count` vertices.
  ///
  /// Every vertex becomes a 0-simplex even if it appears in no generator.
  pub fn from_generators<I>(vertex_count: usize, generators: I) -> Result<Self>
  where
    I: IntoIterator<Item = Simplex>,
  {
    let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
    let push = |sets: &mut Vec<BTreeSet<Simplex>>, s: Simplex| {
      let d = s.len() - 1;
      if sets.len() <= d {
        sets.resize_with(d + 1, BTreeSet::new);
      }
      sets[d].insert(s)
    };
    for v in 0..vertex_count {
      push(&mut sets, vec![v]);
    }
    for mut g in generators {
      g.sort_unstable();
      if g.is_empty() {
        continue;
      }
      if g.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidComplex(format!("repeated vertex in simplex {g:?}")));
      }
      if let Some(&v) = g.iter().find(|&&v| v >= vertex_count) {
        return Err(Error::InvalidComplex(format!("vertex {v} out of range 0..{vertex_count}")));
      }
      push(&mut sets, g);
    }
    // Close downward, top dimension first so each level is complete before it is faced.
    for d in (1..sets.len()).rev() {
      let faces: Vec<Simplex> = sets[d].iter().flat_map(|s| facets(s)).collect();
      for f in faces {
        sets[d - 1].insert(f);
      }
    }
    Ok(Self::from_sorted(vertex_count, sets.into_iter().map(|s| s.into_iter().collect()).collect()))
  }

  fn from_sorted(vertex_count: usize, mut by_dim: Vec<Vec<Simplex>>) -> Self {
    while by_dim.last().is_some_and(|l| l.is_empty()) {
      by_dim.pop();
    }
    let index = by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    Self { vertex_count, by_dim, index }
  }

  pub fn vertex_count(&self) -> usize {
    self.vertex_count
  }

  pub fn is_empty(&self) -> bool {
    self.vertex_count == 0
  }

  /// Dimension of the complex; `-1` for the empty complex.
  pub fn dim(&self) -> isize {
    self.by_dim.len() as isize - 1
  }

  /// Simplices of dimension `d` in canonical order.
  pub fn simplices(&self, d: usize) -> &[Simplex] {
    self.by_dim.get(d).map_or(&[], |v| v.as_slice())
  }

  pub fn count(&self, d: usize) -> usize {
    self.simplices(d).len()
  }

  pub fn total_count(&self) -> usize {
    self.by_dim.iter().map(Vec::len).sum()
  }

  /// Iterates over all simplices, lowest dimension first.
  pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
    self.by_dim.iter().flatten()
  }

  pub fn contains(&self, s: &[usize]) -> bool {
    if s.is_empty() {
      return true;
    }
    self.index.get(s.len() - 1).is_some_and(|m| m.contains_key(s))
  }

  /// Position of `s` within `simplices(s.len() - 1)`.
  pub fn position(&self, s: &[usize]) -> Option<usize> {
    if s.is_empty() {
      return None;
    }
    self.index.get(s.len() - 1)?.get(s).copied()
  }

  /// Index of `s` in [`iter`](Self::iter) order, which is also the vertex numbering of the
  /// barycentric subdivision.
  pub fn flat_index(&self, s: &[usize]) -> Option<usize> {
    let d = s.len().checked_sub(1)?;
    let offset: usize = self.by_dim.iter().take(d).map(Vec::len).sum();
    Some(offset + self.position(s)?)
  }

  /// Simplices that are not a proper face of any other simplex.
  pub fn maximal_simplices(&self) -> Vec<Simplex> {
    let mut out = Vec::new();
    for d in 0..self.by_dim.len() {
      let covered: BTreeSet<&Simplex> = match self.by_dim.get(d + 1) {
        Some(up) => {
          let mut c = BTreeSet::new();
          for s in up {
            for f in facets(s) {
              if let Some(i) = self.position(&f) {
                c.insert(&self.by_dim[d][i]);
              }
            }
          }
          c
        }
        None => BTreeSet::new(),
      };
      out.extend(self.by_dim[d].iter().filter(|s| !covered.contains(s)).cloned());
    }
    out
  }

  /// Euler characteristic from simplex counts.
  pub fn euler_characteristic(&self) -> i64 {
    self
      .by_dim
      .iter()
      .enumerate()
      .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
      .sum()
  }

  /// Checks downward closure, vertex range and uniqueness.
  pub fn validate(&self) -> Result<()> {
    for (d, level) in self.by_dim.iter().enumerate() {
      for w in level.windows(2) {
        if w[0] >= w[1] {
          return Err(Error::InvalidComplex(format!("dimension {d} not strictly sorted")));
        }
      }
      for s in level {
        if s.len() != d + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
          return Err(Error::InvalidComplex(format!("malformed simplex {s:?}")));
        }
        if s.iter().any(|&v| v >= self.vertex_count) {
          return Err(Error::InvalidComplex(format!("vertex out of range in {s:?}")));
        }
        if d > 0 && facets(s).iter().any(|f| !self.contains(f)) {
          return Err(Error::InvalidComplex(format!("missing face of {s:?}")));
        }
      }
    }
    if self.count(0) != self.vertex_count {
      return Err(Error::InvalidComplex("not every vertex is a 0-simplex".into()));
    }
    Ok(())
  }

  /// Combinatorial join: vertices of `other` are shifted past those of `self`.
  pub fn join(&self, other: &Self) -> Self {
    if other.is_empty() {
      return self.clone();
    }
    if self.is_empty() {
      return other.clone();
    }
    let offset = self.vertex_count;
    let left = self.maximal_simplices();
    let right = other.maximal_simplices();
    let mut gens = Vec::with_capacity(left.len() * right.len());
    for a in &left {
      for b in &right {
        let mut s = a.clone();
        s.extend(b.iter().map(|v| v + offset));
        gens.push(s);
      }
    }
    Self::from_generators(offset + other.vertex_count, gens).expect("join of valid complexes is valid")
  }

  /// Barycentric subdivision. Vertex `i` of the result is the barycenter of the `i`-th
  /// simplex in iteration order, which is also returned.
  pub fn barycentric_subdivision(&self) -> (Self, Vec<Simplex>) {
    let barycenters: Vec<Simplex> = self.iter().cloned().collect();
    let mut offsets = Vec::with_capacity(self.by_dim.len());
    let mut acc = 0;
    for l in &self.by_dim {
      offsets.push(acc);
      acc += l.len();
    }
    let id = |s: &[usize]| offsets[s.len() - 1] + self.position(s).expect("face present");
    let mut gens = Vec::new();
    for top in self.maximal_simplices() {
      // every maximal flag = an ordering of the vertices of `top`
      for_each_permutation(&top, |perm| {
        let mut chain = Vec::with_capacity(perm.len());
        let mut face: Vec<usize> = Vec::with_capacity(perm.len());
        for &v in perm {
          let at = face.partition_point(|&x| x < v);
          face.insert(at, v);
          chain.push(id(&face));
        }
        gens.push(chain);
      });
    }
    let sub =
      Self::from_generators(barycenters.len(), gens).expect("subdivision of a valid complex is valid");
    (sub, barycenters)
  }
}

/// Codimension-one faces of a simplex, obtained by dropping one vertex at a time.
pub fn facets(s: &[usize]) -> Vec<Simplex> {
  if s.len() <= 1 {
    return Vec::new();
  }
  (0..s.len())
    .map(|i| {
      let mut f = s.to_vec();
      f.remove(i);
      f
    })
    .collect()
}

pub(crate) fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
  fn rec(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
      f(items);
      return;
    }
    for i in k..items.len() {
      items.swap(k, i);
      rec(items, k + 1, f);
      items.swap(k, i);
    }
  }
  let mut v = items.to_vec();
  rec(&mut v, 0, &mut f);
}

#[cfg(test)]
mod tests {
  use super::*;

  fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_generators(n, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
  }

  #[test]
  fn closure_adds_faces() {
    let c = SimplicialComplex::from_generators(3, vec![vec![2, 0, 1]]).unwrap();
    assert_eq!(c.count(0), 3);
    assert_eq!(c.count(1), 3);
    assert_eq!(c.count(2), 1);
    assert_eq!(c.dim(), 2);
    c.validate().unwrap();
    assert_eq!(c.maximal_simplices(), vec![vec![0, 1, 2]]);
  }

  #[test]
  fn rejects_bad_generators() {
    assert!(SimplicialComplex::from_generators(2, vec![vec![0, 2]]).is_err());
    assert!(SimplicialComplex::from_generators(3, vec![vec![1, 1]]).is_err());
  }

  #[test]
  fn empty_complex() {
    let e = SimplicialComplex::empty();
    assert_eq!(e.dim(), -1);
    assert!(e.maximal_simplices().is_empty());
    assert_eq!(e.euler_characteristic(), 0);
    assert_eq!(cycle(4).join(&e), cycle(4));
    assert_eq!(e.join(&cycle(4)), cycle(4));
  }

  #[test]
  fn subdivide_edge_and_cycle() {
    let edge = SimplicialComplex::from_generators(2, vec![vec![0, 1]]).unwrap();
    let (sub, bary) = edge.barycentric_subdivision();
    assert_eq!(sub.vertex_count(), 3);
    assert_eq!(sub.count(1), 2);
    assert_eq!(bary, vec![vec![0], vec![1], vec![0, 1]]);
    let (c8, _) = cycle(4).barycentric_subdivision();
    assert_eq!(c8.vertex_count(), 8);
    assert_eq!(c8.count(1), 8);
    c8.validate().unwrap();
  }

  #[test]
  fn join_of_points() {
    let two = SimplicialComplex::from_generators(2, Vec::new()).unwrap();
    let j = two.join(&two);
    assert_eq!(j.vertex_count(), 4);
    assert_eq!(j.simplices(1), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    assert_eq!(j.euler_characteristic(), 0);
  }
}
