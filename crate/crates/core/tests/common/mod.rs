#![allow(dead_code)]

use proptest::prelude::*;
use zpcert::simplicial::{FreeZpComplex, SimplicialComplex, ZpActionMap};

/// A random free Z_p-complex on `orbits` blocks of `cyclic_blocks` layout. Each generator takes
/// at most `p - 1` vertices from every orbit, so no face is a union of whole orbits.
pub fn free_complex(p: u64, orbits: usize, gens: &[Vec<(usize, usize)>]) -> FreeZpComplex {
  let pu = p as usize;
  let mut simplices = Vec::new();
  for g in gens {
    let mut s: Vec<usize> = Vec::new();
    for &(orbit, mask) in g {
      let o = orbit % orbits;
      for i in 0..pu - 1 {
        if mask >> i & 1 == 1 {
          s.push(o * pu + i);
        }
      }
    }
    s.sort_unstable();
    s.dedup();
    // a vertex may appear from two entries of the same orbit; drop generators that fill an orbit
    if (0..orbits).any(|o| s.iter().filter(|v| **v / pu == o).count() == pu) || s.is_empty() {
      continue;
    }
    for a in 0..pu {
      let mut t: Vec<usize> = s.iter().map(|v| v / pu * pu + (v % pu + a) % pu).collect();
      t.sort_unstable();
      simplices.push(t);
    }
  }
  let complex = SimplicialComplex::from_generators(orbits * pu, simplices).unwrap();
  FreeZpComplex::new(complex, ZpActionMap::cyclic_blocks(p, orbits).unwrap()).unwrap()
}

pub fn free_complex_strategy(
  primes: Vec<u64>,
  max_orbits: usize,
  max_gens: usize,
) -> impl Strategy<Value = FreeZpComplex> {
  (prop::sample::select(primes), 1..=max_orbits)
    .prop_flat_map(move |(p, orbits)| {
      let entry = (0..orbits, 0usize..(1 << (p as usize - 1)));
      let gen = prop::collection::vec(entry, 1..=3);
      (Just(p), Just(orbits), prop::collection::vec(gen, 0..=max_gens))
    })
    .prop_map(|(p, orbits, gens)| free_complex(p, orbits, &gens))
}
