//! Coordinate relabelings `f(x)_n = x_{ln}` and `g(y)_n = y_{mn}` between offset-1 and offset-m
//! complexes when `lm ≡ 1 (mod p)`.

use std::collections::BTreeMap;

use super::cubical::{Cell, CubicalComplex};
use super::space::{build_pp_xm, permute_coordinates, CubicalZpComplex, SpaceKind, DEFAULT_CELL_BUDGET};
use crate::arith::parse_rational;
use crate::error::{Error, Result};

/// The offset-1 complex and the two verified cell maps.
#[derive(Clone, Debug)]
pub struct Relabeling {
  pub offset_one: CubicalZpComplex,
  /// `f`: offset-1 cells to offset-m cells.
  pub f: BTreeMap<Cell, Cell>,
  /// `g`: offset-m cells to offset-1 cells.
  pub g: BTreeMap<Cell, Cell>,
  pub l: u64,
  pub m: u64,
}

/// Builds the offset-1 twin of an offset-m complex and checks that `f` and `g` are mutually
/// inverse bijections with `f∘σ = σ^m∘f`. The image of `g` is compared against an
/// independent offset-1 build on the same grid.
pub fn relabel_isomorphism(c: &CubicalZpComplex, l: u64) -> Result<Relabeling> {
  let (m, delta) = match c.kind() {
    SpaceKind::Xm { m, delta } => (*m as u64, parse_rational(delta)?),
    other => return Err(Error::InvalidInput(format!("relabeling needs an X_m complex, got {other:?}"))),
  };
  let p = c.p();
  if m % p == 0 {
    return Err(Error::InvalidInput(format!("offset {m} is divisible by p = {p}")));
  }
  if (l % p) * (m % p) % p != 1 {
    return Err(Error::InvalidInput(format!("l = {l} is not the inverse of m = {m} mod {p}")));
  }
  let (pu, nd) = (p as usize, c.grid().cube_dim);
  let f_cell = |x: &Cell| permute_coordinates(x, pu, nd, |n| n * l as usize);
  let g_cell = |y: &Cell| permute_coordinates(y, pu, nd, |n| n * m as usize);

  let src = c.complex();
  let mut image = CubicalComplex::new(src.axes(), src.extent(), src.periodic())?;
  let mut g = BTreeMap::new();
  for y in src.cells() {
    let x = g_cell(y);
    if f_cell(&x) != *y {
      return Err(Error::Inconsistent(format!("f(g(y)) != y for {y:?}")));
    }
    image.insert_raw(x.clone());
    g.insert(y.clone(), x);
  }
  let twin = build_pp_xm(nd, &delta, 1, p, c.grid().subdivisions, DEFAULT_CELL_BUDGET)?;
  if image != *twin.complex() {
    return Err(Error::Inconsistent("g(C_m) differs from the offset-1 complex".into()));
  }
  let mut f = BTreeMap::new();
  for x in twin.complex().cells() {
    let y = f_cell(x);
    if !src.contains(&y) {
      return Err(Error::Inconsistent(format!("f({x:?}) leaves C_m")));
    }
    if g_cell(&y) != *x {
      return Err(Error::Inconsistent(format!("g(f(x)) != x for {x:?}")));
    }
    if f_cell(&twin.shift(x, 1)) != c.shift(&y, m) {
      return Err(Error::Inconsistent(format!("f does not intertwine the shifts at {x:?}")));
    }
    f.insert(x.clone(), y);
  }
  Ok(Relabeling { offset_one: twin, f, g, l, m })
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn p5_m2_l3() {
    let delta = parse_rational("1/3").unwrap();
    let c = build_pp_xm(1, &delta, 2, 5, 3, DEFAULT_CELL_BUDGET).unwrap();
    let r = relabel_isomorphism(&c, 3).unwrap();
    assert_eq!(r.f.len(), c.complex().len());
    assert_eq!(r.g.len(), c.complex().len());
    assert!(!c.is_empty());
  }

  #[test]
  fn identity_when_m_is_one() {
    let delta = parse_rational("1/2").unwrap();
    let c = build_pp_xm(1, &delta, 1, 3, 3, DEFAULT_CELL_BUDGET).unwrap();
    let r = relabel_isomorphism(&c, 1).unwrap();
    assert!(r.f.iter().all(|(a, b)| a == b));
    assert_eq!(r.offset_one, c);
  }

  #[test]
  fn rejects_bad_multipliers() {
    let delta = parse_rational("1/2").unwrap();
    let c = build_pp_xm(1, &delta, 3, 3, 2, DEFAULT_CELL_BUDGET).unwrap();
    assert!(relabel_isomorphism(&c, 1).is_err());
    let c = build_pp_xm(1, &delta, 2, 3, 2, DEFAULT_CELL_BUDGET).unwrap();
    assert!(relabel_isomorphism(&c, 1).is_err());
    assert!(relabel_isomorphism(&c, 2).is_ok());
  }
}
