//! Exhaustive backtracking search for equivariant simplicial maps.
//!
//! One representative per source vertex orbit (its smallest vertex) is assigned a target
//! vertex; the rest of the orbit follows by equivariance. Orbits are visited in breadth-first
//! order over the orbit adjacency graph so that edge constraints prune early, and candidate
//! target vertices are tried in ascending index. Edge constraints are propagated to neighboring
//! orbits (forward checking); every simplex is checked as soon as all of its orbits are assigned.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::simplicial::{subdivide_n, FreeZpComplex};

/// Limits on the search; exceeding them is reported as an error, never as "no map".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
  /// Maximum number of orbit assignments tried.
  pub max_nodes: u64,
}

impl Default for SearchBudget {
  fn default() -> Self {
    Self { max_nodes: 20_000_000 }
  }
}

/// Result of a completed search.
#[derive(Clone, Debug)]
pub struct MapSearch {
  /// The subdivided source actually searched.
  pub source: FreeZpComplex,
  pub depth: usize,
  /// Target vertex for each vertex of `source`, when a map exists.
  pub vertex_map: Option<Vec<usize>>,
  pub nodes: u64,
}

struct Bits(Vec<u64>);

impl Bits {
  fn new(n: usize) -> Self {
    Self(vec![0; n.div_ceil(64)])
  }

  fn set(&mut self, i: usize) {
    self.0[i / 64] |= 1 << (i % 64);
  }

  fn and_with(&mut self, other: &Bits) {
    for (a, b) in self.0.iter_mut().zip(&other.0) {
      *a &= b;
    }
  }

  fn contains(&self, i: usize) -> bool {
    self.0[i / 64] >> (i % 64) & 1 == 1
  }

  fn is_empty(&self) -> bool {
    self.0.iter().all(|&w| w == 0)
  }

  fn iter(&self) -> impl Iterator<Item = usize> + '_ {
    self.0.iter().enumerate().flat_map(|(wi, &w)| {
      let mut w = w;
      std::iter::from_fn(move || {
        if w == 0 {
          return None;
        }
        let b = w.trailing_zeros() as usize;
        w &= w - 1;
        Some(wi * 64 + b)
      })
    })
  }
}

impl Clone for Bits {
  fn clone(&self) -> Self {
    Self(self.0.clone())
  }
}

/// Searches for an equivariant simplicial map from `source` (subdivided `depth` times) to `target`.
pub fn search_equivariant_map(
  source: &FreeZpComplex,
  target: &FreeZpComplex,
  depth: usize,
  budget: SearchBudget,
) -> Result<MapSearch> {
  if source.p() != target.p() {
    return Err(Error::PrimeMismatch { left: source.p(), right: target.p() });
  }
  let src = subdivide_n(source, depth)?;
  let (vertex_map, nodes) = Searcher::new(&src, target).run(budget)?;
  Ok(MapSearch { source: src, depth, vertex_map, nodes })
}

struct Searcher<'a> {
  target: &'a FreeZpComplex,
  /// orbit representatives in visiting order
  reps: Vec<usize>,
  /// (position of orbit, exponent) for each source vertex
  place: Vec<(usize, usize)>,
  /// tpow[a][t] = T^a(t)
  tpow: Vec<Vec<usize>>,
  /// per position: simplices (as (position, exponent) lists) completed at that position
  checks: Vec<Vec<Vec<(usize, usize)>>>,
  /// per position: (later position, offset c) edge constraints
  fwd_edges: Vec<Vec<(usize, usize)>>,
  /// allowed[c][x] = { y : {x, T^c y} is a target simplex }
  allowed: Vec<Vec<Bits>>,
  initial: Vec<Bits>,
}

impl<'a> Searcher<'a> {
  fn new(src: &FreeZpComplex, target: &'a FreeZpComplex) -> Self {
    let p = src.p() as usize;
    let nv = src.vertex_count();
    let orbits = src.action().orbits();
    let mut orbit_of = vec![0usize; nv];
    let mut exp_of = vec![0usize; nv];
    for (o, orbit) in orbits.iter().enumerate() {
      for (a, &v) in orbit.iter().enumerate() {
        orbit_of[v] = o;
        exp_of[v] = a;
      }
    }
    // orbit adjacency and breadth-first visiting order
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); orbits.len()];
    for e in src.complex().simplices(1) {
      let (a, b) = (orbit_of[e[0]], orbit_of[e[1]]);
      if a != b {
        adj[a].insert(b);
        adj[b].insert(a);
      }
    }
    let mut order = Vec::with_capacity(orbits.len());
    let mut pos_of = vec![usize::MAX; orbits.len()];
    for start in 0..orbits.len() {
      if pos_of[start] != usize::MAX {
        continue;
      }
      let mut queue = VecDeque::from([start]);
      pos_of[start] = order.len();
      order.push(start);
      while let Some(o) = queue.pop_front() {
        for &w in &adj[o] {
          if pos_of[w] == usize::MAX {
            pos_of[w] = order.len();
            order.push(w);
            queue.push_back(w);
          }
        }
      }
    }
    let reps: Vec<usize> = order.iter().map(|&o| orbits[o][0]).collect();
    let place: Vec<(usize, usize)> = (0..nv).map(|v| (pos_of[orbit_of[v]], exp_of[v])).collect();

    let tv = target.vertex_count();
    let tpow: Vec<Vec<usize>> =
      (0..p).map(|a| (0..tv).map(|t| target.action().apply_power(t, a as u64)).collect()).collect();

    // one simplex per Z_p-orbit of simplices (the smallest key among its translates)
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut checks = vec![Vec::new(); reps.len()];
    let mut fwd_edges: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); reps.len()];
    let mut self_offsets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); reps.len()];
    for d in 1..=src.dim().max(0) as usize {
      for s in src.complex().simplices(d) {
        let raw: Vec<(usize, usize)> = s.iter().map(|&v| place[v]).collect();
        let key = (0..p)
          .map(|shift| {
            let mut k: Vec<(usize, usize)> = raw.iter().map(|&(o, a)| (o, (a + shift) % p)).collect();
            k.sort_unstable();
            k
          })
          .min()
          .expect("p >= 2");
        if !seen.insert(key.clone()) {
          continue;
        }
        if d == 1 {
          let ((i, a), (j, b)) = (key[0], key[1]);
          if i == j {
            self_offsets[i].insert((b + p - a) % p);
          } else {
            // {T^a x_i, T^b x_j} simplex  <=>  {x_i, T^(b-a) x_j} simplex
            fwd_edges[i].insert((j, (b + p - a) % p));
          }
        }
        let level = key.iter().map(|k| k.0).max().expect("nonempty");
        checks[level].push(key);
      }
    }

    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); tv];
    for e in target.complex().simplices(1) {
      neighbors[e[0]].push(e[1]);
      neighbors[e[1]].push(e[0]);
    }
    let allowed: Vec<Vec<Bits>> = (0..p)
      .map(|c| {
        // T^c y in N[x]  <=>  y in T^(-c) N[x]
        let inv = (p - c) % p;
        (0..tv)
          .map(|x| {
            let mut b = Bits::new(tv);
            b.set(tpow[inv][x]);
            for &n in &neighbors[x] {
              b.set(tpow[inv][n]);
            }
            b
          })
          .collect()
      })
      .collect();
    let initial = (0..reps.len())
      .map(|i| {
        let mut b = Bits::new(tv);
        (0..tv)
          .filter(|&x| self_offsets[i].iter().all(|&c| allowed[c][x].contains(x)))
          .for_each(|x| b.set(x));
        b
      })
      .collect();
    Self {
      target,
      reps,
      place,
      tpow,
      checks,
      fwd_edges: fwd_edges.into_iter().map(|s| s.into_iter().collect()).collect(),
      allowed,
      initial,
    }
  }

  fn run(&self, budget: SearchBudget) -> Result<(Option<Vec<usize>>, u64)> {
    let mut assign = vec![usize::MAX; self.reps.len()];
    let mut domains = self.initial.clone();
    let mut nodes = 0u64;
    let found = self.extend(0, &mut assign, &mut domains, &mut nodes, budget)?;
    if !found {
      return Ok((None, nodes));
    }
    let map = self.place.iter().map(|&(pos, a)| self.tpow[a][assign[pos]]).collect();
    Ok((Some(map), nodes))
  }

  fn extend(
    &self,
    pos: usize,
    assign: &mut [usize],
    domains: &mut [Bits],
    nodes: &mut u64,
    budget: SearchBudget,
  ) -> Result<bool> {
    if pos == self.reps.len() {
      return Ok(true);
    }
    let candidates: Vec<usize> = domains[pos].iter().collect();
    for x in candidates {
      *nodes += 1;
      if *nodes > budget.max_nodes {
        return Err(Error::BudgetExceeded {
          what: "equivariant map search".into(),
          limit: budget.max_nodes,
          reached: *nodes,
        });
      }
      assign[pos] = x;
      if !self.simplices_ok(pos, assign) {
        continue;
      }
      // forward checking on later neighbor orbits
      let mut saved: Vec<(usize, Bits)> = Vec::new();
      let mut wiped = false;
      for &(j, c) in &self.fwd_edges[pos] {
        if !saved.iter().any(|(k, _)| *k == j) {
          saved.push((j, domains[j].clone()));
        }
        domains[j].and_with(&self.allowed[c][x]);
        if domains[j].is_empty() {
          wiped = true;
          break;
        }
      }
      if !wiped && self.extend(pos + 1, assign, domains, nodes, budget)? {
        return Ok(true);
      }
      for (j, d) in saved {
        domains[j] = d;
      }
    }
    assign[pos] = usize::MAX;
    Ok(false)
  }

  fn simplices_ok(&self, pos: usize, assign: &[usize]) -> bool {
    self.checks[pos].iter().all(|key| {
      let mut img: Vec<usize> = key.iter().map(|&(i, a)| self.tpow[a][assign[i]]).collect();
      img.sort_unstable();
      img.dedup();
      self.target.complex().contains(&img)
    })
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::index::verify::check_equivariant_map;
  use crate::simplicial::{e_n_zp, join, make_discrete_zp, ComplexJson};

  fn find(src: &FreeZpComplex, tgt: &FreeZpComplex, depth: usize) -> MapSearch {
    let r = search_equivariant_map(src, tgt, depth, SearchBudget::default()).unwrap();
    if let Some(m) = &r.vertex_map {
      check_equivariant_map(&ComplexJson::from(&r.source), &ComplexJson::from(tgt), m).unwrap();
    }
    r
  }

  #[test]
  fn point_maps_into_circle() {
    let circle = e_n_zp(1, 2).unwrap();
    let r = find(&make_discrete_zp(2).unwrap(), &circle, 0);
    assert_eq!(r.vertex_map, Some(vec![0, 1]));
  }

  #[test]
  fn circle_does_not_map_to_points() {
    let circle = e_n_zp(1, 2).unwrap();
    let pts = make_discrete_zp(2).unwrap();
    for depth in 0..3 {
      assert!(find(&circle, &pts, depth).vertex_map.is_none());
    }
  }

  #[test]
  fn identity_found_first() {
    let z3 = make_discrete_zp(3).unwrap();
    let k33 = join(&z3, &z3).unwrap();
    let r = find(&e_n_zp(1, 3).unwrap(), &k33, 0);
    assert_eq!(r.vertex_map, Some((0..6).collect()));
  }

  #[test]
  fn sphere_to_circle_fails_and_circle_to_sphere_succeeds() {
    // Borsuk-Ulam at desk scale: no Z_2 map S^2 -> S^1
    let s1 = e_n_zp(1, 2).unwrap();
    let s2 = e_n_zp(2, 2).unwrap();
    assert!(find(&s2, &s1, 0).vertex_map.is_none());
    assert!(find(&s2, &s1, 1).vertex_map.is_none());
    assert!(find(&s1, &s2, 1).vertex_map.is_some());
  }

  #[test]
  fn mismatched_primes() {
    let a = make_discrete_zp(2).unwrap();
    let b = make_discrete_zp(3).unwrap();
    assert!(matches!(
      search_equivariant_map(&a, &b, 0, SearchBudget::default()),
      Err(Error::PrimeMismatch { .. })
    ));
  }

  #[test]
  fn budget_is_not_a_negative_answer() {
    let s2 = e_n_zp(2, 2).unwrap();
    let s1 = e_n_zp(1, 2).unwrap();
    let r = search_equivariant_map(&s2, &s1, 2, SearchBudget { max_nodes: 5 });
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
  }
}
