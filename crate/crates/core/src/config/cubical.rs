//! Cubical complexes on a finite (optionally periodic) integer grid: homology and the
//! canonical simplicial triangulation.

use std::collections::{BTreeSet, HashMap};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::simplicial::homology::{rank_mod_p, Column};
use crate::simplicial::{HomologyProfile, Simplex, SimplicialComplex};

/// An axis-aligned unit cell: on axis `i` it spans `[lo[i], lo[i] + 1]` if bit `i` of `free` is
/// set and the single point `lo[i]` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
  pub lo: Vec<u16>,
  pub free: u32,
}

impl Cell {
  pub fn vertex(lo: Vec<u16>) -> Self {
    Self { lo, free: 0 }
  }

  pub fn dim(&self) -> usize {
    self.free.count_ones() as usize
  }

  pub fn is_free(&self, axis: usize) -> bool {
    self.free >> axis & 1 == 1
  }

  pub fn free_axes(&self) -> Vec<usize> {
    (0..self.lo.len()).filter(|&i| self.is_free(i)).collect()
  }
}

/// A cubical complex on the grid `{0..=extent}^axes`, or `(Z/extent)^axes` when `periodic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
  axes: usize,
  extent: u16,
  periodic: bool,
  cells: BTreeSet<Cell>,
}

impl CubicalComplex {
  pub fn new(axes: usize, extent: u16, periodic: bool) -> Result<Self> {
    if axes > 32 {
      return Err(Error::InvalidInput(format!("{axes} axes exceeds the supported 32")));
    }
    if extent == 0 || (periodic && extent < 3) {
      return Err(Error::InvalidInput(format!("grid extent {extent} too small")));
    }
    Ok(Self { axes, extent, periodic, cells: BTreeSet::new() })
  }

  pub fn axes(&self) -> usize {
    self.axes
  }

  pub fn extent(&self) -> u16 {
    self.extent
  }

  pub fn periodic(&self) -> bool {
    self.periodic
  }

  pub fn cells(&self) -> &BTreeSet<Cell> {
    &self.cells
  }

  pub fn len(&self) -> usize {
    self.cells.len()
  }

  pub fn is_empty(&self) -> bool {
    self.cells.is_empty()
  }

  pub fn contains(&self, c: &Cell) -> bool {
    self.cells.contains(c)
  }

  pub fn dim(&self) -> isize {
    self.cells.iter().map(|c| c.dim() as isize).max().unwrap_or(-1)
  }

  pub fn count(&self, d: usize) -> usize {
    self.cells.iter().filter(|c| c.dim() == d).count()
  }

  fn step(&self, v: u16) -> u16 {
    if self.periodic {
      (v + 1) % self.extent
    } else {
      v + 1
    }
  }

  fn in_range(&self, c: &Cell) -> bool {
    c.lo.len() == self.axes
      && (self.axes == 32 || c.free >> self.axes == 0)
      && c.lo.iter().enumerate().all(|(i, &v)| {
        if self.periodic {
          v < self.extent
        } else {
          v + u16::from(c.is_free(i)) <= self.extent
        }
      })
  }

  /// Inserts `c` and all of its faces.
  pub fn insert_closed(&mut self, c: Cell) -> Result<()> {
    if !self.in_range(&c) {
      return Err(Error::InvalidInput(format!("cell {c:?} outside the grid")));
    }
    let mut stack = vec![c];
    while let Some(c) = stack.pop() {
      if self.cells.contains(&c) {
        continue;
      }
      stack.extend(self.faces(&c).into_iter().map(|(f, _)| f));
      self.cells.insert(c);
    }
    Ok(())
  }

  /// Inserts a cell whose faces the caller guarantees to insert as well.
  pub(crate) fn insert_raw(&mut self, c: Cell) {
    self.cells.insert(c);
  }

  /// Codimension-one faces with the boundary sign `(-1)^k` (upper) / `-(-1)^k` (lower) for the
  /// `k`-th free axis.
  pub fn faces(&self, c: &Cell) -> Vec<(Cell, bool)> {
    let mut out = Vec::with_capacity(2 * c.dim());
    for (k, axis) in c.free_axes().into_iter().enumerate() {
      let free = c.free & !(1 << axis);
      let lower = Cell { lo: c.lo.clone(), free };
      let mut upper = lower.clone();
      upper.lo[axis] = self.step(upper.lo[axis]);
      let positive = k % 2 == 0;
      out.push((upper, positive));
      out.push((lower, !positive));
    }
    out
  }

  /// Checks closure under faces.
  pub fn validate(&self) -> Result<()> {
    for c in &self.cells {
      if !self.in_range(c) {
        return Err(Error::InvalidComplex(format!("cell {c:?} outside the grid")));
      }
      if let Some((f, _)) = self.faces(c).into_iter().find(|(f, _)| !self.cells.contains(f)) {
        return Err(Error::InvalidComplex(format!("face {f:?} of {c:?} missing")));
      }
    }
    Ok(())
  }

  /// Cells that are not a face of another cell.
  pub fn maximal_cells(&self) -> Vec<&Cell> {
    self
      .cells
      .iter()
      .filter(|c| {
        (0..self.axes).filter(|&a| !c.is_free(a)).all(|a| {
          let mut up = (*c).clone();
          up.free |= 1 << a;
          if self.cells.contains(&up) {
            return false;
          }
          let prev = if self.periodic {
            Some((c.lo[a] + self.extent - 1) % self.extent)
          } else {
            c.lo[a].checked_sub(1)
          };
          match prev {
            Some(v) => {
              up.lo[a] = v;
              !self.cells.contains(&up)
            }
            None => true,
          }
        })
      })
      .collect()
  }

  /// Betti numbers over F_p from the cubical boundary operator.
  pub fn homology(&self, p: u64, reduced: bool) -> Result<HomologyProfile> {
    require_prime(p)?;
    let top = self.dim();
    if top < 0 {
      return Ok(HomologyProfile::from_unreduced(p, Vec::new(), reduced));
    }
    let top = top as usize;
    let mut by_dim: Vec<Vec<&Cell>> = vec![Vec::new(); top + 1];
    for c in &self.cells {
      by_dim[c.dim()].push(c);
    }
    let index: Vec<HashMap<&Cell, usize>> =
      by_dim.iter().map(|l| l.iter().enumerate().map(|(i, c)| (*c, i)).collect()).collect();
    let mut ranks = vec![0usize; top + 2];
    for d in 1..=top {
      let cols: Vec<Column> = by_dim[d]
        .iter()
        .map(|c| {
          let mut col: Column = self
            .faces(c)
            .into_iter()
            .map(|(f, pos)| (index[d - 1][&f], if pos { 1 } else { p - 1 }))
            .collect();
          col.sort_unstable();
          col
        })
        .collect();
      ranks[d] = rank_mod_p(cols, p);
    }
    let betti = (0..=top).map(|d| by_dim[d].len() - ranks[d] - ranks[d + 1]).collect();
    Ok(HomologyProfile::from_unreduced(p, betti, reduced))
  }

  /// Triangulates every cell by its Freudenthal (Kuhn) subdivision: one simplex per ordering of
  /// the free axes, walking from `lo` one axis at a time. The subdivision depends only on the
  /// cell itself and is invariant under permutations of the axes.
  ///
  /// Returns the simplicial complex and the grid point of each vertex.
  pub fn triangulate(&self) -> (SimplicialComplex, Vec<Vec<u16>>) {
    let points: Vec<Vec<u16>> = self.cells.iter().filter(|c| c.free == 0).map(|c| c.lo.clone()).collect();
    let index: HashMap<&[u16], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut gens: Vec<Simplex> = Vec::new();
    for c in self.maximal_cells() {
      crate::simplicial::complex::for_each_permutation(&c.free_axes(), |order| {
        let mut v = c.lo.clone();
        let mut s = Vec::with_capacity(order.len() + 1);
        s.push(index[v.as_slice()]);
        for &axis in order {
          v[axis] = self.step(v[axis]);
          s.push(index[v.as_slice()]);
        }
        gens.push(s);
      });
    }
    let complex = SimplicialComplex::from_generators(points.len(), gens).expect("closed cubical complex");
    (complex, points)
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::simplicial::homology;

  #[test]
  fn square_triangulates_into_two_triangles() {
    let mut c = CubicalComplex::new(2, 1, false).unwrap();
    c.insert_closed(Cell { lo: vec![0, 0], free: 0b11 }).unwrap();
    assert_eq!(c.len(), 9);
    c.validate().unwrap();
    let (t, pts) = c.triangulate();
    assert_eq!(pts.len(), 4);
    assert_eq!(t.count(2), 2);
    assert_eq!(t.count(1), 5);
    assert_eq!(homology(&t, 2, false).unwrap().betti, vec![1, 0, 0]);
    assert_eq!(c.homology(2, false).unwrap().betti, vec![1, 0, 0]);
  }

  #[test]
  fn two_points() {
    let mut c = CubicalComplex::new(1, 3, false).unwrap();
    c.insert_closed(Cell::vertex(vec![0])).unwrap();
    c.insert_closed(Cell::vertex(vec![3])).unwrap();
    assert_eq!(c.homology(3, false).unwrap().betti, vec![2]);
  }

  #[test]
  fn annulus() {
    // 3x3 block of squares with the center removed
    let mut c = CubicalComplex::new(2, 3, false).unwrap();
    for x in 0..3u16 {
      for y in 0..3u16 {
        if (x, y) != (1, 1) {
          c.insert_closed(Cell { lo: vec![x, y], free: 0b11 }).unwrap();
        }
      }
    }
    let h = c.homology(2, false).unwrap();
    assert_eq!(h.betti, vec![1, 1, 0]);
    let (t, _) = c.triangulate();
    assert_eq!(homology(&t, 2, false).unwrap().betti, vec![1, 1, 0]);
    assert_eq!(homology(&t, 2, false).unwrap().euler_characteristic(), t.euler_characteristic());
  }

  #[test]
  fn periodic_torus() {
    let mut c = CubicalComplex::new(2, 3, true).unwrap();
    for x in 0..3u16 {
      for y in 0..3u16 {
        c.insert_closed(Cell { lo: vec![x, y], free: 0b11 }).unwrap();
      }
    }
    assert_eq!(c.homology(2, false).unwrap().betti, vec![1, 2, 1]);
    let (t, _) = c.triangulate();
    assert_eq!(homology(&t, 2, false).unwrap().betti, vec![1, 2, 1]);
  }

  #[test]
  fn empty_and_range() {
    let c = CubicalComplex::new(2, 2, false).unwrap();
    assert_eq!(c.homology(2, true).unwrap().betti, Vec::<usize>::new());
    let (t, _) = c.triangulate();
    assert!(t.is_empty());
    let mut c = c;
    assert!(c.insert_closed(Cell { lo: vec![2, 0], free: 0b01 }).is_err());
    assert!(CubicalComplex::new(1, 2, true).is_err());
  }
}
