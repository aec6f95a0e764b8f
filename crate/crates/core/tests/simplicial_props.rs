mod common;

use proptest::prelude::*;
use zpcert::simplicial::{
  barycentric_subdivide, e_n_zp, homology, join, subdivide_n, Connectivity, FreeZpComplex,
};

use common::free_complex_strategy;

fn check_valid(x: &FreeZpComplex) {
  x.complex().validate().unwrap();
  let again = FreeZpComplex::new(x.complex().clone(), x.action().clone()).unwrap();
  assert_eq!((again.complex(), again.action()), (x.complex(), x.action()));
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(48))]

  #[test]
  fn constructors_keep_closure_and_freeness(
    x in free_complex_strategy(vec![2, 3], 3, 4),
    y in free_complex_strategy(vec![2, 3], 2, 3),
  ) {
    check_valid(&x);
    if x.p() == y.p() {
      check_valid(&join(&x, &y).unwrap());
    } else {
      prop_assert!(join(&x, &y).is_err());
    }
    if x.complex().total_count() <= 40 {
      check_valid(&barycentric_subdivide(&x).unwrap());
    }
  }

  #[test]
  fn subdivision_preserves_betti(x in free_complex_strategy(vec![2, 3], 3, 3)) {
    prop_assume!(x.complex().total_count() <= 40);
    let s = barycentric_subdivide(&x).unwrap();
    for p in [2, 3] {
      prop_assert_eq!(homology(x.complex(), p, false).unwrap().betti, homology(s.complex(), p, false).unwrap().betti);
    }
  }

  #[test]
  fn euler_characteristic_matches_betti(x in free_complex_strategy(vec![2, 3, 5], 3, 5), coeff in prop::sample::select(vec![2u64, 3, 5])) {
    let h = homology(x.complex(), coeff, false).unwrap();
    prop_assert_eq!(h.euler_characteristic(), x.complex().euler_characteristic());
  }

  #[test]
  fn joins_of_standard_models(m in 0usize..3, n in 0usize..3, p in prop::sample::select(vec![2u64, 3])) {
    let a = join(&e_n_zp(m, p).unwrap(), &e_n_zp(n, p).unwrap()).unwrap();
    let b = e_n_zp(m + n + 1, p).unwrap();
    // same block layout, so the canonical isomorphism is the identity on vertices
    prop_assert_eq!(a.action().orbits(), b.action().orbits());
    prop_assert_eq!(a.to_json(), b.to_json());
    prop_assert_eq!(homology(a.complex(), p, true).unwrap(), homology(b.complex(), p, true).unwrap());
  }
}

#[test]
fn standard_model_connectivity() {
  for p in [2u64, 3, 5] {
    for n in 0..=3usize {
      let x = e_n_zp(n, p).unwrap();
      let h = homology(x.complex(), p, true).unwrap();
      assert_eq!(h.homological_connectivity, Connectivity::Finite(n as i64 - 1), "n={n} p={p}");
    }
  }
}

#[test]
fn twice_subdivided_circle() {
  let x = subdivide_n(&e_n_zp(1, 3).unwrap(), 2).unwrap();
  check_valid(&x);
  assert_eq!(homology(x.complex(), 3, false).unwrap().betti, vec![1, 4]);
}
