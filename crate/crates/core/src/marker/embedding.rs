//! Distance-to-centers embeddings into `[0,1]^N` and trajectory maps into `X(N, δ)`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::system::FiniteDynSys;
use crate::arith::{rational_string, rational_vec};
use crate::error::{Error, Result};

/// `f(x) = (d'(x, c_1), ..., d'(x, c_N))` where `d' = d / scale` has diameter at most 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsEmbedding {
  #[serde(with = "rational_string")]
  pub eps: BigRational,
  #[serde(with = "rational_string")]
  pub scale: BigRational,
  pub centers: Vec<usize>,
  pub coords: Vec<Coord>,
  /// `δ²`: `|f(x) - f(y)|² < δ²` implies `d(x, y) < ε`, checked over all pairs.
  #[serde(with = "rational_string")]
  pub delta_sq: BigRational,
  /// Every fiber `f^{-1}(y)` has diameter below `ε`.
  pub fiber_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(#[serde(with = "rational_vec")] pub Vec<BigRational>);

impl EpsEmbedding {
  pub fn dimension(&self) -> usize {
    self.centers.len()
  }
}

pub(crate) fn dist_sq(a: &[BigRational], b: &[BigRational]) -> BigRational {
  a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| {
    let d = x - y;
    acc + &d * &d
  })
}

/// Greedy farthest-point centers until the open `ε/2`-balls (in the original metric) cover,
/// or a single center when the diameter is below `ε`.
pub fn epsilon_embedding(sys: &FiniteDynSys, eps: &BigRational) -> Result<EpsEmbedding> {
  if !eps.is_positive() {
    return Err(Error::InvalidInput("eps must be positive".into()));
  }
  if sys.is_empty() {
    return Err(Error::InvalidInput("empty system".into()));
  }
  let n = sys.len();
  let diam = sys.diameter();
  let scale = if diam > BigRational::one() { diam.clone() } else { BigRational::one() };
  let radius = eps / BigRational::from_integer(2.into());
  let mut centers = vec![0usize];
  let mut nearest: Vec<BigRational> = (0..n).map(|x| sys.d(x, 0).clone()).collect();
  // if every distance is below ε a single center is already an ε-embedding
  if diam >= *eps {
    loop {
      let (far, gap) =
        nearest.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).expect("nonempty");
      if *gap < radius {
        break;
      }
      centers.push(far);
      for (x, best) in nearest.iter_mut().enumerate() {
        if sys.d(x, far) < best {
          *best = sys.d(x, far).clone();
        }
      }
    }
  }
  let coords: Vec<Coord> =
    (0..n).map(|x| Coord(centers.iter().map(|&c| sys.d(x, c) / &scale).collect())).collect();
  let mut delta_sq: Option<BigRational> = None;
  let mut fiber_ok = true;
  for x in 0..n {
    for y in x + 1..n {
      if sys.d(x, y) < eps {
        continue;
      }
      let g = dist_sq(&coords[x].0, &coords[y].0);
      if g.is_zero() {
        fiber_ok = false;
      }
      if delta_sq.as_ref().is_none_or(|d| g < *d) {
        delta_sq = Some(g);
      }
    }
  }
  // with no ε-separated pairs any δ works; N bounds every squared distance in [0,1]^N
  let delta_sq = delta_sq.unwrap_or_else(|| BigRational::from_integer((centers.len() + 1).into()));
  if !fiber_ok || !delta_sq.is_positive() {
    return Err(Error::Inconsistent("distance-to-centers map is not an ε-embedding".into()));
  }
  Ok(EpsEmbedding { eps: eps.clone(), scale, centers, coords, delta_sq, fiber_ok })
}

/// The image `F(x) = (f(T^n x))_n` of one point, stored as one period of the orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
  pub point: usize,
  pub preperiod: usize,
  pub period: usize,
  /// `f(x), f(Tx), ..., f(T^{period-1} x)`.
  pub word: Vec<Coord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityMap {
  #[serde(rename = "N")]
  pub n: usize,
  /// `δ² = min_x |f(x) - f(Tx)|²`.
  #[serde(with = "rational_string")]
  pub delta_sq: BigRational,
  pub embedding: EpsEmbedding,
  pub trajectories: Vec<Trajectory>,
}

/// Equivariant map of a fixed-point free finite system into `X(N, δ)`, with `ε` half the
/// smallest displacement `d(x, Tx)`.
pub fn universality_map(sys: &FiniteDynSys) -> Result<UniversalityMap> {
  if let Some(x) = sys.fixed_points().first() {
    return Err(Error::InvalidInput(format!("point {x} is fixed by T")));
  }
  let min_move = (0..sys.len())
    .map(|x| sys.d(x, sys.t(x)).clone())
    .min()
    .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
  let eps = min_move / BigRational::from_integer(2.into());
  let embedding = epsilon_embedding(sys, &eps)?;
  let f = &embedding.coords;
  let delta_sq = (0..sys.len()).map(|x| dist_sq(&f[x].0, &f[sys.t(x)].0)).min().expect("nonempty");
  if delta_sq < embedding.delta_sq {
    return Err(Error::Inconsistent("a point moves less than the embedding modulus".into()));
  }
  let trajectories: Vec<Trajectory> = (0..sys.len())
    .map(|x| {
      let mut word = vec![f[x].clone()];
      let mut y = sys.t(x);
      while y != x {
        word.push(f[y].clone());
        y = sys.t(y);
      }
      Trajectory { point: x, preperiod: 0, period: word.len(), word }
    })
    .collect();
  let out = UniversalityMap { n: embedding.dimension(), delta_sq, embedding, trajectories };
  verify_universality(sys, &out)?;
  Ok(out)
}

/// Checks that every trajectory lies in `X(N, δ)` and that `F(Tx)` is the shift of `F(x)`.
pub fn verify_universality(sys: &FiniteDynSys, u: &UniversalityMap) -> Result<()> {
  for tr in &u.trajectories {
    let k = tr.period;
    for i in 0..k {
      let (a, b) = (&tr.word[i].0, &tr.word[(i + 1) % k].0);
      if a.len() != u.n || a.iter().any(|c| c.is_negative() || *c > BigRational::one()) {
        return Err(Error::Inconsistent(format!("coordinate of point {} leaves [0,1]^N", tr.point)));
      }
      if dist_sq(a, b) < u.delta_sq {
        return Err(Error::Inconsistent(format!(
          "trajectory of {} has a gap below δ at index {i}",
          tr.point
        )));
      }
    }
    let next = &u.trajectories[sys.t(tr.point)];
    let shifted: Vec<&Coord> = tr.word.iter().cycle().skip(1).take(k).collect();
    if next.period != k || next.word.iter().collect::<Vec<_>>() != shifted {
      return Err(Error::Inconsistent(format!("F(T{0}) is not the shift of F({0})", tr.point)));
    }
  }
  Ok(())
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::arith::parse_rational;

  fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
  }

  fn two_points() -> FiniteDynSys {
    FiniteDynSys::new(vec![vec![q("0"), q("1")], vec![q("1"), q("0")]], vec![1, 0]).unwrap()
  }

  // oracle: |f(x) - f(y)|² < δ² ⇒ d(x, y) < ε over all pairs, and fibers have small diameter
  fn all_pairs_ok(sys: &FiniteDynSys, e: &EpsEmbedding) -> bool {
    (0..sys.len()).all(|x| {
      (0..sys.len()).all(|y| {
        let g = dist_sq(&e.coords[x].0, &e.coords[y].0);
        (g >= e.delta_sq || *sys.d(x, y) < e.eps) && (!g.is_zero() || *sys.d(x, y) < e.eps)
      })
    })
  }

  #[test]
  fn two_point_space() {
    let s = two_points();
    let e = epsilon_embedding(&s, &q("1/2")).unwrap();
    assert_eq!(e.dimension(), 2);
    assert_ne!(e.coords[0], e.coords[1]);
    assert!(all_pairs_ok(&s, &e));
  }

  #[test]
  fn one_center_when_eps_exceeds_the_diameter() {
    let s = FiniteDynSys::cyclic(7).unwrap();
    let e = epsilon_embedding(&s, &q("11/10")).unwrap();
    assert_eq!(e.dimension(), 1);
    assert!(all_pairs_ok(&s, &e));
  }

  #[test]
  fn five_cycle() {
    let s = FiniteDynSys::cyclic(5).unwrap();
    let e = epsilon_embedding(&s, &q("2/5")).unwrap();
    assert!(e.fiber_ok);
    assert!(all_pairs_ok(&s, &e));
    assert!(epsilon_embedding(&s, &q("0")).is_err());
  }

  #[test]
  fn rescales_large_metrics() {
    let s = FiniteDynSys::new(vec![vec![q("0"), q("4")], vec![q("4"), q("0")]], vec![1, 0]).unwrap();
    let e = epsilon_embedding(&s, &q("1")).unwrap();
    assert_eq!(e.scale, q("4"));
    assert!(e.coords.iter().flat_map(|c| &c.0).all(|v| *v <= q("1")));
  }

  #[test]
  fn universality_of_rotation() {
    let s = FiniteDynSys::cyclic(6).unwrap();
    let u = universality_map(&s).unwrap();
    assert_eq!(u.trajectories.len(), 6);
    for tr in &u.trajectories {
      for i in 0..tr.period {
        assert!(dist_sq(&tr.word[i].0, &tr.word[(i + 1) % tr.period].0) >= u.delta_sq);
      }
    }
    assert!(u.delta_sq.is_positive());
  }

  #[test]
  fn universality_of_swap() {
    let u = universality_map(&two_points()).unwrap();
    assert!(u.n <= 2);
    assert_eq!(u.delta_sq, dist_sq(&u.embedding.coords[0].0, &u.embedding.coords[1].0));
  }

  #[test]
  fn fixed_point_rejected() {
    let s = FiniteDynSys::new(vec![vec![q("0"), q("1")], vec![q("1"), q("0")]], vec![0, 1]).unwrap();
    assert!(universality_map(&s).is_err());
  }

  #[test]
  fn tampered_map_fails_verification() {
    let s = FiniteDynSys::cyclic(6).unwrap();
    let mut u = universality_map(&s).unwrap();
    u.trajectories[2].word.swap(0, 1);
    assert!(verify_universality(&s, &u).is_err());
  }
}
