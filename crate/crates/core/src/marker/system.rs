//! Finite dynamical systems with an exact rational metric.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Points `0..n`, a metric and a bijection `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDynSys {
  metric: Vec<Vec<BigRational>>,
  t: Vec<usize>,
  t_inv: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SysJson {
  points: usize,
  metric: Vec<Vec<String>>,
  #[serde(rename = "T")]
  t: Vec<usize>,
}

impl FiniteDynSys {
  /// Checks that `metric` is a metric and `t` a bijection.
  pub fn new(metric: Vec<Vec<BigRational>>, t: Vec<usize>) -> Result<Self> {
    let n = t.len();
    if metric.len() != n || metric.iter().any(|r| r.len() != n) {
      return Err(Error::InvalidInput(format!("metric must be {n}x{n}")));
    }
    let mut t_inv = vec![usize::MAX; n];
    for (x, &y) in t.iter().enumerate() {
      if y >= n || t_inv[y] != usize::MAX {
        return Err(Error::InvalidInput("T is not a bijection".into()));
      }
      t_inv[y] = x;
    }
    for i in 0..n {
      for j in 0..n {
        let d = &metric[i][j];
        if d.is_negative() || (i == j) != d.is_zero() || *d != metric[j][i] {
          return Err(Error::InvalidInput(format!("metric fails positivity or symmetry at ({i}, {j})")));
        }
        if let Some(k) = (0..n).find(|&k| metric[i][k] > d + &metric[j][k]) {
          return Err(Error::InvalidInput(format!("triangle inequality fails at ({i}, {j}, {k})")));
        }
      }
    }
    Ok(Self { metric, t, t_inv })
  }

  /// `Z/nZ` with `T = +1` and the arc metric scaled to diameter 1.
  pub fn cyclic(n: usize) -> Result<Self> {
    if n == 0 {
      return Err(Error::InvalidInput("need at least one point".into()));
    }
    let half = (n / 2).max(1) as i64;
    let metric = (0..n)
      .map(|i| {
        (0..n)
          .map(|j| {
            let k = i.abs_diff(j);
            BigRational::new((k.min(n - k) as i64).into(), half.into())
          })
          .collect()
      })
      .collect();
    Self::new(metric, (0..n).map(|i| (i + 1) % n).collect())
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let j: SysJson = serde_json::from_str(s)?;
    if j.metric.len() != j.points {
      return Err(Error::InvalidInput(format!(
        "declared {} points, metric has {} rows",
        j.points,
        j.metric.len()
      )));
    }
    let metric =
      j.metric.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect::<Result<_>>()?;
    Self::new(metric, j.t)
  }

  pub fn to_json(&self) -> String {
    let j = SysJson {
      points: self.len(),
      metric: self.metric.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
      t: self.t.clone(),
    };
    serde_json::to_string(&j).expect("serializable")
  }

  pub fn len(&self) -> usize {
    self.t.len()
  }

  pub fn is_empty(&self) -> bool {
    self.t.is_empty()
  }

  pub fn d(&self, x: usize, y: usize) -> &BigRational {
    &self.metric[x][y]
  }

  pub fn metric(&self) -> &[Vec<BigRational>] {
    &self.metric
  }

  pub fn t(&self, x: usize) -> usize {
    self.t[x]
  }

  pub fn t_inv(&self, x: usize) -> usize {
    self.t_inv[x]
  }

  /// `T^k x` for any integer `k`.
  pub fn t_pow(&self, mut x: usize, k: i64) -> usize {
    for _ in 0..k.unsigned_abs() {
      x = if k >= 0 { self.t[x] } else { self.t_inv[x] };
    }
    x
  }

  pub fn diameter(&self) -> BigRational {
    self.metric.iter().flatten().max().cloned().unwrap_or_else(BigRational::zero)
  }

  /// Orbits of `T`, each starting at its smallest point.
  pub fn orbits(&self) -> Vec<Vec<usize>> {
    let mut seen = vec![false; self.len()];
    let mut out = Vec::new();
    for s in 0..self.len() {
      if seen[s] {
        continue;
      }
      let mut orbit = vec![s];
      seen[s] = true;
      let mut x = self.t[s];
      while x != s {
        seen[x] = true;
        orbit.push(x);
        x = self.t[x];
      }
      out.push(orbit);
    }
    out
  }

  /// `T^{-n} A = {x : T^n x ∈ A}`.
  pub fn preimage(&self, a: &BTreeSet<usize>, n: i64) -> BTreeSet<usize> {
    a.iter().map(|&y| self.t_pow(y, -n)).collect()
  }

  pub fn fixed_points(&self) -> Vec<usize> {
    (0..self.len()).filter(|&x| self.t[x] == x).collect()
  }
}

/// Marker-property data for one `N` and one `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerWitness {
  #[serde(rename = "N")]
  pub n: usize,
  #[serde(rename = "U")]
  pub u: Vec<usize>,
  /// `U ∩ T^{-n}U = ∅` for `1 <= n <= N`.
  pub return_times_ok: bool,
  /// Every orbit meets `U`.
  pub covering_ok: bool,
}

impl MarkerWitness {
  pub fn holds(&self) -> bool {
    self.return_times_ok && self.covering_ok
  }
}

pub fn check_marker(sys: &FiniteDynSys, n: usize, u: &BTreeSet<usize>) -> Result<MarkerWitness> {
  if let Some(&x) = u.iter().find(|&&x| x >= sys.len()) {
    return Err(Error::InvalidInput(format!("point {x} not in the system")));
  }
  let return_times_ok = u.iter().all(|&x| {
    let mut y = x;
    (1..=n).all(|_| {
      y = sys.t(y);
      !u.contains(&y)
    })
  });
  let covering_ok = sys.orbits().iter().all(|o| o.iter().any(|x| u.contains(x)));
  Ok(MarkerWitness { n, u: u.iter().copied().collect(), return_times_ok, covering_ok })
}

#[cfg(test)]
mod tests {
  use super::*;

  fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
  }

  #[test]
  fn cyclic_markers() {
    let s = FiniteDynSys::cyclic(10).unwrap();
    let w = check_marker(&s, 3, &set(&[0])).unwrap();
    assert!(w.return_times_ok && w.covering_ok);
    let w = check_marker(&s, 10, &set(&[0])).unwrap();
    assert!(!w.return_times_ok && w.covering_ok);
    let w = check_marker(&s, 3, &set(&[])).unwrap();
    assert!(w.return_times_ok && !w.covering_ok);
    assert!(check_marker(&s, 3, &set(&[10])).is_err());
  }

  #[test]
  fn json_round_trip() {
    let s = FiniteDynSys::cyclic(5).unwrap();
    let j = s.to_json();
    assert!(j.starts_with(r#"{"points":5,"metric":[["0","1/2","1","1","1/2"]"#));
    assert_eq!(FiniteDynSys::from_json(&j).unwrap(), s);
  }

  #[test]
  fn rejects_non_metrics() {
    let q = |s: &str| parse_rational(s).unwrap();
    let bad = vec![vec![q("0"), q("1"), q("3")], vec![q("1"), q("0"), q("1")], vec![q("3"), q("1"), q("0")]];
    assert!(FiniteDynSys::new(bad, vec![1, 2, 0]).is_err());
    let asym = vec![vec![q("0"), q("1")], vec![q("2"), q("0")]];
    assert!(FiniteDynSys::new(asym, vec![1, 0]).is_err());
    let ok = vec![vec![q("0"), q("1")], vec![q("1"), q("0")]];
    assert!(FiniteDynSys::new(ok.clone(), vec![0, 0]).is_err());
    assert!(FiniteDynSys::new(ok, vec![1, 0]).is_ok());
  }

  #[test]
  fn powers_and_preimages() {
    let s = FiniteDynSys::cyclic(12).unwrap();
    assert_eq!(s.t_pow(3, -5), 10);
    assert_eq!(s.preimage(&set(&[0, 1]), 1), set(&[11, 0]));
    assert_eq!(s.orbits().len(), 1);
  }
}
