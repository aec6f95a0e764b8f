//! Inner cubical approximations of periodic-point spaces, built cell by cell with exact
//! integer comparisons.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cubical::{Cell, CubicalComplex};
use crate::arith::{format_rational, require_prime};
use crate::error::{Error, Result};
use crate::simplicial::{FreeZpComplex, HomologyProfile, ZpActionMap};

/// Default cap on the number of included cells.
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// Discretization of `([0,1]^N)^{Z_p}` (or of `(R/2Z)^{Z_p}` when `circle_valued`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
  /// `N`, the dimension of each coordinate.
  pub cube_dim: usize,
  /// `G`: grid step `1/G`. Circle coordinates use `2G` arcs of length `1/G`.
  pub subdivisions: u16,
  pub circle_valued: bool,
}

impl GridSpec {
  pub fn cube(cube_dim: usize, subdivisions: u16) -> Self {
    Self { cube_dim, subdivisions, circle_valued: false }
  }

  pub fn circle(subdivisions: u16) -> Self {
    Self { cube_dim: 1, subdivisions, circle_valued: true }
  }

  fn validate(&self) -> Result<()> {
    if self.cube_dim == 0 || self.subdivisions == 0 {
      return Err(Error::InvalidInput("grid needs N >= 1 and G >= 1".into()));
    }
    if self.circle_valued && self.subdivisions < 2 {
      return Err(Error::InvalidInput("circle grids need G >= 2".into()));
    }
    Ok(())
  }
}

/// Which constraint a complex approximates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceKind {
  /// `|x_n - x_{n+m}| >= delta` for all `n` (Euclidean norm on `[0,1]^N`).
  Xm { m: usize, delta: String },
  /// `max(ρ(x_n, x_{n+1}), ρ(x_{n+1}, x_{n+2})) = 1`, exact-antipode cells only.
  Y,
  /// `max(ρ(x_n, x_{n+1}), ρ(x_{n+1}, x_{n+2})) >= 1/2`.
  Z,
}

/// A cubical complex in `(grid)^p`, closed under faces and under the cyclic shift
/// `(x_0, ..., x_{p-1}) -> (x_1, ..., x_{p-1}, x_0)`, which acts freely on cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalZpComplex {
  p: u64,
  grid: GridSpec,
  kind: SpaceKind,
  complex: CubicalComplex,
}

impl CubicalZpComplex {
  pub fn p(&self) -> u64 {
    self.p
  }

  pub fn grid(&self) -> GridSpec {
    self.grid
  }

  pub fn kind(&self) -> &SpaceKind {
    &self.kind
  }

  pub fn complex(&self) -> &CubicalComplex {
    &self.complex
  }

  pub fn is_empty(&self) -> bool {
    self.complex.is_empty()
  }

  /// Applies the shift `a` times to a cell: coordinate `n` of the result is coordinate `n + a`.
  pub fn shift(&self, c: &Cell, a: u64) -> Cell {
    permute_coordinates(c, self.p as usize, self.grid.cube_dim, |n| n + a as usize)
  }

  /// Checks face closure, shift closure and freeness.
  pub fn validate(&self) -> Result<()> {
    self.complex.validate()?;
    for c in self.complex.cells() {
      if !self.complex.contains(&self.shift(c, 1)) {
        return Err(Error::InvalidComplex(format!("shift of {c:?} missing")));
      }
      for a in 1..self.p {
        if self.shift(c, a) == *c {
          return Err(Error::NotFree(format!("cell {c:?} fixed by shift^{a}")));
        }
      }
    }
    Ok(())
  }

  /// F_p homology from the cubical chain complex.
  pub fn homology(&self, p_coeff: u64, reduced: bool) -> Result<HomologyProfile> {
    self.complex.homology(p_coeff, reduced)
  }

  pub(crate) fn from_parts(p: u64, grid: GridSpec, kind: SpaceKind, complex: CubicalComplex) -> Self {
    Self { p, grid, kind, complex }
  }
}

/// Cell whose coordinate block `n` is the block `source(n) mod p` of `c`.
pub(crate) fn permute_coordinates(
  c: &Cell,
  p: usize,
  cube_dim: usize,
  source: impl Fn(usize) -> usize,
) -> Cell {
  let mut lo = vec![0u16; c.lo.len()];
  let mut free = 0u32;
  for n in 0..p {
    let from = source(n) % p;
    for i in 0..cube_dim {
      lo[n * cube_dim + i] = c.lo[from * cube_dim + i];
      if c.is_free(from * cube_dim + i) {
        free |= 1 << (n * cube_dim + i);
      }
    }
  }
  Cell { lo, free }
}

/// One coordinate's box: per axis `(lo, spans_unit)`.
type Box_ = Vec<(u16, bool)>;

fn all_boxes(grid: &GridSpec) -> Vec<Box_> {
  let g = grid.subdivisions;
  let axis: Vec<(u16, bool)> = if grid.circle_valued {
    (0..2 * g).flat_map(|v| [(v, false), (v, true)]).collect()
  } else {
    (0..=g).map(|v| (v, false)).chain((0..g).map(|v| (v, true))).collect()
  };
  let mut boxes: Vec<Box_> = vec![Vec::new()];
  for _ in 0..grid.cube_dim {
    boxes =
      boxes.into_iter().flat_map(|b| axis.iter().map(move |&a| [b.clone(), vec![a]].concat())).collect();
  }
  boxes.sort();
  boxes
}

/// Squared Euclidean gap between two boxes, in grid units.
fn gap_sq(a: &Box_, b: &Box_) -> u64 {
  a.iter()
    .zip(b)
    .map(|(&(la, fa), &(lb, fb))| {
      let (ha, hb) = (la + u16::from(fa), lb + u16::from(fb));
      let gap = la.saturating_sub(hb).max(lb.saturating_sub(ha));
      u64::from(gap).pow(2)
    })
    .sum()
}

/// Minimum circle distance between two arcs, in units of `1/G` on a circle of `2G` units.
fn arc_gap(a: (u16, bool), b: (u16, bool), g: u16) -> u16 {
  let period = 2 * g;
  let ends = |(v, f): (u16, bool)| if f { vec![v, (v + 1) % period] } else { vec![v] };
  let mut best = u16::MAX;
  for x in ends(a) {
    for y in ends(b) {
      let d = (x + period - y) % period;
      best = best.min(d.min(period - d));
    }
  }
  best
}

/// A constraint on the boxes at a few coordinates, checked once all of them are assigned.
type ClauseTest = Box<dyn Fn(&[usize]) -> bool>;

struct Clause {
  coords: Vec<usize>,
  test: ClauseTest,
}

fn search_cells(
  p: usize,
  n_boxes: usize,
  clauses: &[Clause],
  budget: usize,
  mut emit: impl FnMut(&[usize]),
) -> Result<usize> {
  // clauses grouped by the largest coordinate they mention
  let mut at: Vec<Vec<&Clause>> = (0..p).map(|_| Vec::new()).collect();
  for c in clauses {
    at[*c.coords.iter().max().expect("nonempty clause")].push(c);
  }
  let mut chosen = vec![0usize; p];
  let mut count = 0usize;
  fn rec(
    n: usize,
    chosen: &mut [usize],
    at: &[Vec<&Clause>],
    n_boxes: usize,
    budget: usize,
    count: &mut usize,
    emit: &mut dyn FnMut(&[usize]),
  ) -> Result<()> {
    if n == chosen.len() {
      *count += 1;
      if *count > budget {
        return Err(Error::BudgetExceeded {
          what: "cubical cell construction".into(),
          limit: budget as u64,
          reached: *count as u64,
        });
      }
      emit(chosen);
      return Ok(());
    }
    for b in 0..n_boxes {
      chosen[n] = b;
      if at[n].iter().all(|c| (c.test)(chosen)) {
        rec(n + 1, chosen, at, n_boxes, budget, count, emit)?;
      }
    }
    Ok(())
  }
  rec(0, &mut chosen, &at, n_boxes, budget, &mut count, &mut emit)?;
  Ok(count)
}

fn assemble(
  p: u64,
  grid: GridSpec,
  kind: SpaceKind,
  boxes: &[Box_],
  clauses: &[Clause],
  budget: usize,
) -> Result<CubicalZpComplex> {
  let axes = p as usize * grid.cube_dim;
  let extent = if grid.circle_valued { 2 * grid.subdivisions } else { grid.subdivisions };
  let mut complex = CubicalComplex::new(axes, extent, grid.circle_valued)?;
  search_cells(p as usize, boxes.len(), clauses, budget, |choice| {
    let mut lo = Vec::with_capacity(axes);
    let mut free = 0u32;
    for &b in choice {
      for &(v, f) in &boxes[b] {
        if f {
          free |= 1 << lo.len();
        }
        lo.push(v);
      }
    }
    complex.insert_raw(Cell { lo, free });
  })?;
  // every face of a certified cell is certified, so the set is already closed
  let out = CubicalZpComplex::from_parts(p, grid, kind, complex);
  out.validate()?;
  Ok(out)
}

/// Inner approximation of `P_p(X_m(N, δ))`: a product cell is kept iff the Euclidean distance
/// between the boxes at coordinates `n` and `n + m` is at least `δ` for every `n`.
pub fn build_pp_xm(
  cube_dim: usize,
  delta: &BigRational,
  m: usize,
  p: u64,
  subdivisions: u16,
  budget: usize,
) -> Result<CubicalZpComplex> {
  require_prime(p)?;
  let grid = GridSpec::cube(cube_dim, subdivisions);
  grid.validate()?;
  if m == 0 {
    return Err(Error::InvalidInput("offset m must be at least 1".into()));
  }
  if !delta.is_positive() {
    return Err(Error::InvalidInput("delta must be positive".into()));
  }
  let boxes = all_boxes(&grid);
  // gap/G >= num/den  <=>  gap^2 * den^2 >= num^2 * G^2
  let lhs_scale = delta.denom() * delta.denom();
  let rhs = delta.numer() * delta.numer() * BigInt::from(subdivisions) * BigInt::from(subdivisions);
  let far: Vec<Vec<bool>> = boxes
    .iter()
    .map(|a| boxes.iter().map(|b| BigInt::from(gap_sq(a, b)) * &lhs_scale >= rhs).collect())
    .collect();
  let far = std::rc::Rc::new(far);
  let pu = p as usize;
  let clauses: Vec<Clause> = (0..pu)
    .map(|n| {
      let (i, j) = (n, (n + m) % pu);
      let far = far.clone();
      Clause { coords: vec![i, j], test: Box::new(move |ch: &[usize]| far[ch[i]][ch[j]]) }
    })
    .collect();
  let kind = SpaceKind::Xm { m, delta: format_rational(delta) };
  assemble(p, grid, kind, &boxes, &clauses, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircleSpace {
  Y,
  Z,
}

/// Inner approximation of `P_p(Y)` or `P_p(Z)` on `2G` arcs of `R/2Z`.
///
/// For `Z` a cell is kept iff for every `n` one of the arc-distance lower bounds
/// `ρ(B_n, B_{n+1})`, `ρ(B_{n+1}, B_{n+2})` is at least `1/2`. For `Y` the equality is only
/// certified when one of the two pairs is a pair of antipodal grid points, so the result is a
/// very thin subset of `P_p(Y)`.
pub fn build_pp_yz(which: CircleSpace, p: u64, subdivisions: u16, budget: usize) -> Result<CubicalZpComplex> {
  require_prime(p)?;
  let grid = GridSpec::circle(subdivisions);
  grid.validate()?;
  let g = subdivisions;
  let boxes = all_boxes(&grid);
  let pair_ok: Vec<Vec<bool>> = boxes
    .iter()
    .map(|a| {
      boxes
        .iter()
        .map(|b| match which {
          CircleSpace::Z => 2 * arc_gap(a[0], b[0], g) >= g,
          CircleSpace::Y => !a[0].1 && !b[0].1 && arc_gap(a[0], b[0], g) == g,
        })
        .collect()
    })
    .collect();
  let pair_ok = std::rc::Rc::new(pair_ok);
  let pu = p as usize;
  let clauses: Vec<Clause> = (0..pu)
    .map(|n| {
      let (i, j, k) = (n, (n + 1) % pu, (n + 2) % pu);
      let ok = pair_ok.clone();
      Clause {
        coords: vec![i, j, k],
        test: Box::new(move |ch: &[usize]| ok[ch[i]][ch[j]] || ok[ch[j]][ch[k]]),
      }
    })
    .collect();
  let kind = match which {
    CircleSpace::Y => SpaceKind::Y,
    CircleSpace::Z => SpaceKind::Z,
  };
  assemble(p, grid, kind, &boxes, &clauses, budget)
}

/// Triangulated complex with the shift as a free simplicial action, plus the grid point of each
/// vertex.
pub fn cubical_to_simplicial(c: &CubicalZpComplex) -> Result<(FreeZpComplex, Vec<Vec<u16>>)> {
  let (complex, points) = c.complex.triangulate();
  let index: HashMap<&[u16], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
  let perm = points
    .iter()
    .map(|v| {
      let shifted = c.shift(&Cell::vertex(v.clone()), 1);
      index[shifted.lo.as_slice()]
    })
    .collect();
  let x = FreeZpComplex::new(complex, ZpActionMap::new(c.p, perm)?)?;
  Ok((x, points))
}

/// Exact check that a rational point lies in `P_p(X_m(N, δ))`; coordinates are grouped by `N`.
pub fn point_in_xm(point: &[BigRational], cube_dim: usize, m: usize, delta: &BigRational) -> bool {
  let p = point.len() / cube_dim;
  let zero = BigRational::zero();
  let one = BigRational::from_integer(1.into());
  point.iter().all(|x| *x >= zero && *x <= one)
    && (0..p).all(|n| {
      let j = (n + m) % p;
      let d2: BigRational = (0..cube_dim)
        .map(|i| {
          let d = &point[n * cube_dim + i] - &point[j * cube_dim + i];
          &d * &d
        })
        .fold(BigRational::zero(), |a, b| a + b);
      d2 >= delta * delta
    })
}

/// `ρ(x, y) = min_k |x - y - 2k|` on `R/2Z`.
pub fn circle_distance(x: &BigRational, y: &BigRational) -> BigRational {
  let two = BigRational::from_integer(2.into());
  let mut d = (x - y).abs();
  d = &d - (&d / &two).floor() * &two;
  let other = &two - &d;
  if other < d {
    other
  } else {
    d
  }
}

/// Exact check of the `Z` constraint for a rational point of `(R/2Z)^p`.
pub fn point_in_z(point: &[BigRational]) -> bool {
  let p = point.len();
  let half = BigRational::new(1.into(), 2.into());
  (0..p).all(|n| {
    let a = circle_distance(&point[n], &point[(n + 1) % p]);
    let b = circle_distance(&point[(n + 1) % p], &point[(n + 2) % p]);
    a.max(b) >= half
  })
}
