use proptest::prelude::*;
use zpcert::simplicial::FreeZpComplex;
use zpcert::symbolic::{as_free_zp_complex, join_periodic_sets, make_sigma, make_sigma_m, periodic_points};

fn brute_force_count(m: usize, n: usize) -> usize {
  (0..3usize.pow(n as u32))
    .filter(|&code| {
      let w: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
      (0..n).all(|i| w[i] != w[(i + m) % n])
    })
    .count()
}

#[test]
fn sigma_counts_follow_the_coloring_formula() {
  for n in 2..=12usize {
    let got = periodic_points(&make_sigma(), n, 1 << 20).unwrap().count() as i64;
    assert_eq!(got, (1i64 << n) + 2 * if n % 2 == 0 { 1 } else { -1 }, "n={n}");
    if n <= 8 {
      assert_eq!(got as usize, brute_force_count(1, n));
    }
  }
}

#[test]
fn offset_subshifts() {
  for m in 1..=5usize {
    let s = make_sigma_m(m).unwrap();
    assert!(periodic_points(&s, m, 1000).unwrap().is_empty(), "P_{m}(Σ_{m})");
    for p in [2usize, 3, 5, 7, 11, 13].into_iter().filter(|&p| p > m) {
      let set = periodic_points(&s, p, 1 << 20).unwrap();
      assert!(!set.is_empty(), "P_{p}(Σ_{m}) is empty");
      if p <= 11 {
        assert_eq!(set.count(), brute_force_count(m, p));
      }
    }
  }
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(32))]

  #[test]
  fn prime_periods_are_rotation_free(m in 1usize..=3, p in prop::sample::select(vec![2usize, 3, 5, 7])) {
    let set = periodic_points(&make_sigma_m(m).unwrap(), p, 1 << 16).unwrap();
    prop_assert!(set.rotation_free());
    prop_assert!(set.orbits.iter().all(|o| o.len() == p));
    let x = as_free_zp_complex(&set).unwrap();
    prop_assert_eq!(x.vertex_count(), set.count());
  }

  #[test]
  fn joined_periodic_sets_are_free(m1 in 1usize..=2, m2 in 1usize..=2, p in prop::sample::select(vec![3usize, 5])) {
    let a = periodic_points(&make_sigma_m(m1).unwrap(), p, 1 << 12).unwrap();
    let b = periodic_points(&make_sigma_m(m2).unwrap(), p, 1 << 12).unwrap();
    let j = join_periodic_sets(&a, &b).unwrap();
    let again = FreeZpComplex::new(j.complex().clone(), j.action().clone()).unwrap();
    prop_assert_eq!(again.complex(), j.complex());
    prop_assert_eq!(j.complex().count(1), a.count() * b.count());
  }
}
