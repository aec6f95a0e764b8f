//! Lindenstrauss' marker function `φ` and its defect set `E` on finite systems.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::system::{check_marker, FiniteDynSys};
use crate::arith::rational_vec;
use crate::error::{Error, Result};

/// Marker data used to test the lemma's conclusion: `U` and the return horizon `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkerHypothesis {
  pub u: BTreeSet<usize>,
  pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
  #[serde(rename = "M")]
  pub m: usize,
  #[serde(with = "rational_vec")]
  pub phi: Vec<BigRational>,
  /// `E = {x : φ(Tx) != φ(x) + 1}`.
  #[serde(rename = "E")]
  pub e: Vec<usize>,
  /// `φ(Tx) = φ(x) + 1` for every `x` outside `E` (always true; kept as a self-test).
  pub additive_off_e: bool,
  /// `X = ∪_{n=0}^M T^n K` with `K = {w = 1}`.
  pub k_covers: bool,
  /// The stopping probabilities sum to 1 at every point; `None` unless `k_covers`.
  pub normalized: Option<bool>,
  /// `supp w ⊆ U` and `U ∩ T^{-n}U = ∅` for `1 <= n <= N`, together with `k_covers`.
  pub hypotheses_hold: Option<bool>,
  /// `E ⊆ T^{-1}U`.
  pub e_in_preimage_of_u: Option<bool>,
  /// `E ∩ T^{-n}E = ∅` for `1 <= n <= N`.
  pub e_return_free: Option<bool>,
}

/// Stopping probabilities `w(x), (1-w(x)) w(T^{-1}x), ...` for steps `0..=M`.
fn stop_probabilities(sys: &FiniteDynSys, w: &[BigRational], m: usize, x: usize) -> Vec<BigRational> {
  let mut out = Vec::with_capacity(m + 1);
  let mut survive = BigRational::one();
  let mut y = x;
  for _ in 0..=m {
    out.push(&survive * &w[y]);
    survive *= BigRational::one() - &w[y];
    y = sys.t_inv(y);
  }
  out
}

/// `φ(x) = Σ_{n=1}^M n (∏_{k<n} (1 - w(T^{-k}x))) w(T^{-n}x)` in exact arithmetic.
pub fn phi(sys: &FiniteDynSys, w: &[BigRational], m: usize) -> Result<Vec<BigRational>> {
  if w.len() != sys.len() {
    return Err(Error::InvalidInput(format!("w has {} values for {} points", w.len(), sys.len())));
  }
  if let Some(x) = w.iter().position(|v| v.is_negative() || *v > BigRational::one()) {
    return Err(Error::InvalidInput(format!("w({x}) is outside [0,1]")));
  }
  if m == 0 {
    return Err(Error::InvalidInput("M must be at least 1".into()));
  }
  Ok(
    (0..sys.len())
      .map(|x| {
        stop_probabilities(sys, w, m, x)
          .into_iter()
          .enumerate()
          .fold(BigRational::zero(), |acc, (n, p)| acc + BigRational::from_integer(n.into()) * p)
      })
      .collect(),
  )
}

pub fn lindenstrauss_phi(
  sys: &FiniteDynSys,
  w: &[BigRational],
  m: usize,
  hyp: Option<&MarkerHypothesis>,
) -> Result<PhiReport> {
  let phi = phi(sys, w, m)?;
  let one = BigRational::one();
  let e: BTreeSet<usize> = (0..sys.len()).filter(|&x| phi[sys.t(x)] != &phi[x] + &one).collect();
  let additive_off_e = (0..sys.len()).filter(|x| !e.contains(x)).all(|x| phi[sys.t(x)] == &phi[x] + &one);

  let k: BTreeSet<usize> = (0..sys.len()).filter(|&x| w[x].is_one()).collect();
  let mut covered = BTreeSet::new();
  for n in 0..=m as i64 {
    covered.extend(sys.preimage(&k, -n));
  }
  let k_covers = covered.len() == sys.len();
  let normalized = k_covers.then(|| {
    (0..sys.len())
      .all(|x| stop_probabilities(sys, w, m, x).into_iter().fold(BigRational::zero(), |a, b| a + b).is_one())
  });

  let (mut hypotheses_hold, mut e_in_preimage_of_u, mut e_return_free) = (None, None, None);
  if let Some(h) = hyp {
    let marker = check_marker(sys, h.n, &h.u)?;
    let supp_ok = (0..sys.len()).all(|x| w[x].is_zero() || h.u.contains(&x));
    let holds = k_covers && supp_ok && marker.return_times_ok;
    let inside = e.is_subset(&sys.preimage(&h.u, 1));
    let free = (1..=h.n as i64).all(|n| e.is_disjoint(&sys.preimage(&e, n)));
    if holds && !(inside && free) {
      return Err(Error::Inconsistent("marker lemma conclusion fails although its hypotheses hold".into()));
    }
    hypotheses_hold = Some(holds);
    e_in_preimage_of_u = Some(inside);
    e_return_free = Some(free);
  }
  if normalized == Some(false) || !additive_off_e {
    return Err(Error::Inconsistent("marker function self-test failed".into()));
  }
  Ok(PhiReport {
    m,
    phi,
    e: e.into_iter().collect(),
    additive_off_e,
    k_covers,
    normalized,
    hypotheses_hold,
    e_in_preimage_of_u,
    e_return_free,
  })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::arith::parse_rational;

  fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
  }

  fn indicator(n: usize, on: &[usize]) -> Vec<BigRational> {
    (0..n).map(|x| if on.contains(&x) { q("1") } else { q("0") }).collect()
  }

  #[test]
  fn twelve_cycle() {
    let s = FiniteDynSys::cyclic(12).unwrap();
    let hyp = MarkerHypothesis { u: [0, 1].into_iter().collect(), n: 2 };
    let r = lindenstrauss_phi(&s, &indicator(12, &[0]), 11, Some(&hyp)).unwrap();
    // walk from x reaches 0 after x steps
    let expected: Vec<BigRational> = (0..12).map(|x| BigRational::from_integer(x.into())).collect();
    assert_eq!(r.phi, expected);
    assert_eq!(r.e, vec![11]);
    assert_eq!(r.e_in_preimage_of_u, Some(true));
    assert_eq!(r.e_return_free, Some(true));
    assert_eq!(r.normalized, Some(true));
    // U meets T^{-1}U at 0, so the lemma's hypotheses are not met here
    assert_eq!(r.hypotheses_hold, Some(false));
  }

  #[test]
  fn closed_forms_for_small_m() {
    // Z/4Z with K = {0, 2} covers in one step; fractional weights on the rest
    let s = FiniteDynSys::cyclic(4).unwrap();
    let w = vec![q("1"), q("1/3"), q("1"), q("0")];
    let p1 = phi(&s, &w, 1).unwrap();
    for x in 0..4 {
      assert_eq!(p1[x], q("1") - &w[x]);
    }
    let p2 = phi(&s, &w, 2).unwrap();
    for x in 0..4 {
      let (a, b, c) = (&w[x], &w[s.t_inv(x)], &w[s.t_pow(x, -2)]);
      let closed = (q("1") - a) * b + q("2") * (q("1") - a) * (q("1") - b) * c;
      assert_eq!(p2[x], closed);
    }
  }

  #[test]
  fn hypotheses_imply_conclusion() {
    // Z/9Z, U = {0}, w = 1 on U, N = 8
    let s = FiniteDynSys::cyclic(9).unwrap();
    let hyp = MarkerHypothesis { u: [0].into_iter().collect(), n: 8 };
    let r = lindenstrauss_phi(&s, &indicator(9, &[0]), 8, Some(&hyp)).unwrap();
    assert_eq!(r.hypotheses_hold, Some(true));
    assert_eq!(r.e, vec![8]);
  }

  #[test]
  fn rejects_bad_weights() {
    let s = FiniteDynSys::cyclic(3).unwrap();
    assert!(phi(&s, &[q("2"), q("0"), q("0")], 2).is_err());
    assert!(phi(&s, &[q("0"), q("0")], 2).is_err());
    assert!(phi(&s, &[q("0"), q("0"), q("0")], 0).is_err());
  }
}
