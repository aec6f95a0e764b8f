//! Stand-alone re-validation of equivariant simplicial maps.
//!
//! Works directly on the interchange form (maximal simplices plus permutation) and shares no
//! code with the search or with `SimplicialComplex`: a set of target vertices counts as a
//! simplex iff it lies inside some listed maximal simplex.

use std::collections::BTreeSet;

use crate::simplicial::ComplexJson;

/// Checks simpliciality and equivariance of `vertex_map: source -> target`.
pub fn check_equivariant_map(
  source: &ComplexJson,
  target: &ComplexJson,
  vertex_map: &[usize],
) -> Result<(), String> {
  if source.p != target.p {
    return Err(format!("source p = {} but target p = {}", source.p, target.p));
  }
  if vertex_map.len() != source.vertices {
    return Err(format!("map has {} entries for {} source vertices", vertex_map.len(), source.vertices));
  }
  if source.perm.len() != source.vertices || target.perm.len() != target.vertices {
    return Err("permutation length does not match vertex count".into());
  }
  if let Some(&bad) = vertex_map.iter().find(|&&t| t >= target.vertices) {
    return Err(format!("image vertex {bad} out of range"));
  }
  for v in 0..source.vertices {
    let lhs = vertex_map[source.perm[v]];
    let rhs = target.perm[vertex_map[v]];
    if lhs != rhs {
      return Err(format!("not equivariant at vertex {v}: f(Sv) = {lhs}, T f(v) = {rhs}"));
    }
  }
  // containing[t] = maximal target simplices that contain vertex t
  let mut containing: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); target.vertices];
  for s in &target.simplices {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    for &t in s {
      if t < target.vertices {
        containing[t].push(set.clone());
      }
    }
  }
  let is_target_simplex = |img: &BTreeSet<usize>| -> bool {
    let first = *img.iter().next().expect("nonempty");
    // every vertex in range is a 0-simplex, listed or not
    img.len() == 1 || containing[first].iter().any(|m| img.is_subset(m))
  };
  for s in &source.simplices {
    if s.iter().any(|&v| v >= source.vertices) {
      return Err(format!("source simplex {s:?} out of range"));
    }
    let img: BTreeSet<usize> = s.iter().map(|&v| vertex_map[v]).collect();
    if !img.is_empty() && !is_target_simplex(&img) {
      return Err(format!("source simplex {s:?} maps to non-simplex {img:?}"));
    }
  }
  Ok(())
}

#[cfg(test)]
mod tests {
  use super::*;

  fn square() -> ComplexJson {
    ComplexJson {
      p: 2,
      vertices: 4,
      perm: vec![1, 0, 3, 2],
      simplices: vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
    }
  }

  #[test]
  fn identity_passes() {
    let s = square();
    check_equivariant_map(&s, &s, &[0, 1, 2, 3]).unwrap();
  }

  #[test]
  fn catches_non_equivariant() {
    let s = square();
    let err = check_equivariant_map(&s, &s, &[0, 0, 2, 3]).unwrap_err();
    assert!(err.contains("equivariant"));
  }

  #[test]
  fn catches_non_simplicial() {
    let pts = ComplexJson { p: 2, vertices: 2, perm: vec![1, 0], simplices: vec![vec![0], vec![1]] };
    // square -> two points: the edge {0,2} would have to land on {0} or {1}; 0 -> 0 and 2 -> 1 fails
    let err = check_equivariant_map(&square(), &pts, &[0, 1, 1, 0]).unwrap_err();
    assert!(err.contains("non-simplex"));
  }
}
