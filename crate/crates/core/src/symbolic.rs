//! Shifts of finite type given by forbidden symbol pairs at a fixed offset, and their
//! periodic points as free Z_p-sets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::simplicial::{join, FreeZpComplex, SimplicialComplex, ZpActionMap};

/// A word over the alphabet `1..=alphabet_size`.
pub type Word = Vec<u8>;

/// Sequences `(x_n)` over `1..=alphabet_size` such that no `(x_n, x_{n+window})` is forbidden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subshift {
  alphabet_size: u8,
  window: usize,
  forbidden: BTreeSet<(u8, u8)>,
}

impl Subshift {
  pub fn new(
    alphabet_size: u8,
    window: usize,
    forbidden: impl IntoIterator<Item = (u8, u8)>,
  ) -> Result<Self> {
    if alphabet_size == 0 || window == 0 {
      return Err(Error::InvalidInput("alphabet size and window must be at least 1".into()));
    }
    let forbidden: BTreeSet<(u8, u8)> = forbidden.into_iter().collect();
    if let Some(bad) =
      forbidden.iter().find(|(a, b)| !(1..=alphabet_size).contains(a) || !(1..=alphabet_size).contains(b))
    {
      return Err(Error::InvalidInput(format!("forbidden pair {bad:?} outside alphabet")));
    }
    Ok(Self { alphabet_size, window, forbidden })
  }

  /// Proper colorings at offset `window`: equal symbols `window` apart are forbidden.
  pub fn coloring(alphabet_size: u8, window: usize) -> Result<Self> {
    Self::new(alphabet_size, window, (1..=alphabet_size).map(|a| (a, a)))
  }

  pub fn alphabet_size(&self) -> u8 {
    self.alphabet_size
  }

  pub fn window(&self) -> usize {
    self.window
  }

  pub fn is_forbidden(&self, a: u8, b: u8) -> bool {
    self.forbidden.contains(&(a, b))
  }

  /// Whether `w`, read as a periodic sequence, avoids every forbidden pair.
  pub fn accepts_cyclic(&self, w: &[u8]) -> bool {
    let n = w.len();
    n > 0 && (0..n).all(|i| !self.is_forbidden(w[i], w[(i + self.window) % n]))
  }
}

/// `Σ`: three symbols, neighbors distinct.
pub fn make_sigma() -> Subshift {
  make_sigma_m(1).expect("window 1 is valid")
}

/// `Σ_m`: three symbols, `x_n != x_{n+m}`.
pub fn make_sigma_m(m: usize) -> Result<Subshift> {
  Subshift::coloring(3, m)
}

/// The `n`-periodic points of a subshift, grouped into shift orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicOrbitSet {
  pub period: usize,
  /// Each orbit starts at its lexicographically smallest word and continues by the shift
  /// `(σw)_i = w_{i+1}`. Orbits are sorted by that smallest word.
  pub orbits: Vec<Vec<Word>>,
}

impl PeriodicOrbitSet {
  pub fn count(&self) -> usize {
    self.orbits.iter().map(Vec::len).sum()
  }

  pub fn orbit_count(&self) -> usize {
    self.orbits.len()
  }

  pub fn is_empty(&self) -> bool {
    self.orbits.is_empty()
  }

  /// All points, orbit by orbit.
  pub fn points(&self) -> impl Iterator<Item = &Word> {
    self.orbits.iter().flatten()
  }

  /// True when every orbit has exactly `period` points.
  pub fn rotation_free(&self) -> bool {
    self.orbits.iter().all(|o| o.len() == self.period)
  }
}

pub fn rotate(w: &[u8]) -> Word {
  let mut r = w[1..].to_vec();
  r.push(w[0]);
  r
}

/// All cyclic words of length `n` accepted by `shift`, by depth-first search with the window
/// constraint checked as soon as both ends are placed (indices mod `n`).
pub fn periodic_points(shift: &Subshift, n: usize, max_points: usize) -> Result<PeriodicOrbitSet> {
  if n == 0 {
    return Err(Error::InvalidInput("period must be at least 1".into()));
  }
  let mut words = Vec::new();
  let mut w = vec![0u8; n];
  enumerate(shift, &mut w, 0, &mut words, max_points)?;
  let mut seen = BTreeSet::new();
  let mut orbits = Vec::new();
  // words come out in lexicographic order, so the first unseen word of an orbit is its minimum
  for word in words {
    if seen.contains(&word) {
      continue;
    }
    let mut orbit = vec![word.clone()];
    seen.insert(word.clone());
    let mut next = rotate(&word);
    while next != word {
      seen.insert(next.clone());
      orbit.push(next.clone());
      next = rotate(&next);
    }
    orbits.push(orbit);
  }
  Ok(PeriodicOrbitSet { period: n, orbits })
}

fn enumerate(shift: &Subshift, w: &mut Word, i: usize, out: &mut Vec<Word>, max: usize) -> Result<()> {
  let n = w.len();
  if i == n {
    if out.len() == max {
      return Err(Error::BudgetExceeded {
        what: "periodic point enumeration".into(),
        limit: max as u64,
        reached: max as u64 + 1,
      });
    }
    out.push(w.clone());
    return Ok(());
  }
  let m = shift.window % n;
  for a in 1..=shift.alphabet_size {
    w[i] = a;
    // pairs (j, j+m mod n) whose later index is i
    let back = (i + n - m) % n;
    let ok = (back > i || !shift.is_forbidden(w[back], a))
      && (m == 0 || (i + m) % n > i || !shift.is_forbidden(a, w[(i + m) % n]));
    if ok {
      enumerate(shift, w, i + 1, out, max)?;
    }
  }
  w[i] = 0;
  Ok(())
}

/// The explicit period-`m` point `(12)^l 3` of `Σ` for odd `m = 2l + 1 >= 3`.
pub fn odd_period_witness(m: usize) -> Result<Word> {
  if m < 3 || m.is_multiple_of(2) {
    return Err(Error::InvalidInput(format!("period {m} must be odd and at least 3")));
  }
  let mut w: Word = std::iter::repeat_n([1u8, 2], (m - 1) / 2).flatten().collect();
  w.push(3);
  if !make_sigma().accepts_cyclic(&w) {
    return Err(Error::Inconsistent("constructed word is not a periodic point".into()));
  }
  Ok(w)
}

pub fn format_word(w: &[u8]) -> String {
  w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// The periodic points as a 0-dimensional free Z_p-complex with the shift as the action.
pub fn as_free_zp_complex(a: &PeriodicOrbitSet) -> Result<FreeZpComplex> {
  let p = a.period as u64;
  if !is_prime(p) {
    return Err(Error::InvalidInput(format!("period {p} is not a prime, so there is no Z_p-action")));
  }
  if !a.rotation_free() {
    return Err(Error::NotFree(format!("some orbit of period-{p} points is shorter than {p}")));
  }
  let complex = SimplicialComplex::from_generators(a.count(), Vec::new())?;
  FreeZpComplex::new(complex, ZpActionMap::cyclic_blocks(p, a.orbit_count())?)
}

/// `P_p(X * Y) = P_p(X) * P_p(Y)` for two free sets of `p`-periodic points.
pub fn join_periodic_sets(a: &PeriodicOrbitSet, b: &PeriodicOrbitSet) -> Result<FreeZpComplex> {
  if a.period != b.period {
    return Err(Error::InvalidInput(format!("periods differ: {} and {}", a.period, b.period)));
  }
  join(&as_free_zp_complex(a)?, &as_free_zp_complex(b)?)
}

/// The join of `copies` copies of `P_p(shift)`.
pub fn join_power(shift: &Subshift, p: usize, copies: usize, max_points: usize) -> Result<FreeZpComplex> {
  let set = as_free_zp_complex(&periodic_points(shift, p, max_points)?)?;
  let mut acc = FreeZpComplex::empty(p as u64)?;
  for _ in 0..copies {
    acc = join(&acc, &set)?;
  }
  Ok(acc)
}

/// One CSV row per period: `period,count,orbit_count`.
pub fn periodic_table_csv(
  shift: &Subshift,
  periods: impl IntoIterator<Item = usize>,
  max_points: usize,
) -> Result<String> {
  let mut out = String::from("period,count,orbit_count\n");
  for n in periods {
    let s = periodic_points(shift, n, max_points)?;
    out.push_str(&format!("{},{},{}\n", n, s.count(), s.orbit_count()));
  }
  Ok(out)
}

#[cfg(test)]
mod tests {
  use super::*;

  const BIG: usize = 1 << 20;

  fn brute_force(shift: &Subshift, n: usize) -> usize {
    let k = shift.alphabet_size() as usize;
    (0..k.pow(n as u32))
      .filter(|&code| {
        let mut c = code;
        let w: Word = (0..n)
          .map(|_| {
            let d = (c % k) as u8 + 1;
            c /= k;
            d
          })
          .collect();
        (0..n).all(|i| !shift.is_forbidden(w[i], w[(i + shift.window()) % n]))
      })
      .count()
  }

  #[test]
  fn sigma_small_periods() {
    let s = make_sigma();
    assert!(periodic_points(&s, 1, BIG).unwrap().is_empty());
    let p2 = periodic_points(&s, 2, BIG).unwrap();
    assert_eq!(p2.count(), 6);
    assert_eq!(p2.count(), brute_force(&s, 2));
    let p5 = periodic_points(&s, 5, BIG).unwrap();
    assert_eq!(p5.count(), 30);
    assert_eq!(brute_force(&s, 5), 30);
  }

  #[test]
  fn matches_brute_force_for_other_shifts() {
    for (k, m) in [(2u8, 1usize), (3, 2), (4, 1), (3, 3)] {
      let s = Subshift::coloring(k, m).unwrap();
      for n in 1..=7 {
        assert_eq!(periodic_points(&s, n, BIG).unwrap().count(), brute_force(&s, n), "k={k} m={m} n={n}");
      }
    }
    let asym = Subshift::new(2, 1, [(1, 1)]).unwrap();
    for n in 1..=8 {
      assert_eq!(periodic_points(&asym, n, BIG).unwrap().count(), brute_force(&asym, n));
    }
  }

  #[test]
  fn sigma_m() {
    assert_eq!(make_sigma_m(1).unwrap(), make_sigma());
    assert!(periodic_points(&make_sigma_m(4).unwrap(), 4, BIG).unwrap().is_empty());
    assert!(!periodic_points(&make_sigma_m(2).unwrap(), 5, BIG).unwrap().is_empty());
  }

  #[test]
  fn odd_witnesses() {
    assert_eq!(format_word(&odd_period_witness(3).unwrap()), "123");
    assert_eq!(format_word(&odd_period_witness(5).unwrap()), "12123");
    assert_eq!(format_word(&odd_period_witness(7).unwrap()), "1212123");
    assert!(odd_period_witness(4).is_err());
    assert!(odd_period_witness(1).is_err());
  }

  #[test]
  fn orbit_structure() {
    let p3 = periodic_points(&make_sigma(), 3, BIG).unwrap();
    assert_eq!(p3.count(), 6);
    assert_eq!(p3.orbit_count(), 2);
    assert_eq!(p3.orbits[0], vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]);
    let c = as_free_zp_complex(&p3).unwrap();
    assert_eq!(c.vertex_count(), 6);
    let p2 = as_free_zp_complex(&periodic_points(&make_sigma(), 2, BIG).unwrap()).unwrap();
    assert_eq!(p2.action().orbits().len(), 3);
    assert!(as_free_zp_complex(&periodic_points(&make_sigma(), 1, BIG).unwrap()).is_err());
  }

  #[test]
  fn joins() {
    let p3 = periodic_points(&make_sigma(), 3, BIG).unwrap();
    let j = join_periodic_sets(&p3, &p3).unwrap();
    assert_eq!(j.vertex_count(), 12);
    assert_eq!(j.complex().count(1), 36);
    assert_eq!(j.dim(), 1);
    let empty = PeriodicOrbitSet { period: 3, orbits: Vec::new() };
    assert_eq!(join_periodic_sets(&p3, &empty).unwrap(), as_free_zp_complex(&p3).unwrap());
    let p2 = periodic_points(&make_sigma(), 2, BIG).unwrap();
    assert!(join_periodic_sets(&p3, &p2).is_err());
  }

  #[test]
  fn budget_guard() {
    assert!(matches!(periodic_points(&make_sigma(), 10, 5), Err(Error::BudgetExceeded { .. })));
  }

  #[test]
  fn csv_table() {
    let csv = periodic_table_csv(&make_sigma(), 1..=3, BIG).unwrap();
    assert_eq!(csv, "period,count,orbit_count\n1,0,0\n2,6,3\n3,6,2\n");
  }
}
