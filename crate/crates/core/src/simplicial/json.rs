//! JSON interchange: `{"p": int, "vertices": int, "perm": [int], "simplices": [[int]]}`,
//! listing maximal simplices only.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::action::{FreeZpComplex, ZpActionMap};
use super::complex::SimplicialComplex;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
  pub p: u64,
  pub vertices: usize,
  pub perm: Vec<usize>,
  pub simplices: Vec<Vec<usize>>,
}

impl From<&FreeZpComplex> for ComplexJson {
  fn from(x: &FreeZpComplex) -> Self {
    Self {
      p: x.p(),
      vertices: x.vertex_count(),
      perm: x.action().perm().to_vec(),
      simplices: x.complex().maximal_simplices(),
    }
  }
}

impl TryFrom<ComplexJson> for FreeZpComplex {
  type Error = crate::error::Error;

  fn try_from(j: ComplexJson) -> Result<Self> {
    let complex = SimplicialComplex::from_generators(j.vertices, j.simplices)?;
    FreeZpComplex::new(complex, ZpActionMap::new(j.p, j.perm)?)
  }
}

impl FreeZpComplex {
  pub fn to_json(&self) -> String {
    serde_json::to_string(&ComplexJson::from(self)).expect("serializable")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    serde_json::from_str::<ComplexJson>(s)?.try_into()
  }

  /// SHA-256 of the canonical JSON form; identifies a space with its action.
  pub fn fingerprint(&self) -> String {
    hex::encode(Sha256::digest(self.to_json().as_bytes()))
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::simplicial::action::e_n_zp;

  #[test]
  fn exact_keys() {
    let x = e_n_zp(1, 2).unwrap();
    let s = x.to_json();
    assert_eq!(s, r#"{"p":2,"vertices":4,"perm":[1,0,3,2],"simplices":[[0,2],[0,3],[1,2],[1,3]]}"#);
    assert_eq!(FreeZpComplex::from_json(&s).unwrap(), x);
  }

  #[test]
  fn closure_recomputed_on_load() {
    let s = r#"{"p":3,"vertices":6,"perm":[1,2,0,4,5,3],"simplices":[[0,3],[1,4],[2,5]]}"#;
    let x = FreeZpComplex::from_json(s).unwrap();
    assert_eq!(x.complex().count(0), 6);
    assert_eq!(x.complex().count(1), 3);
  }

  #[test]
  fn load_rejects_non_free() {
    let s = r#"{"p":2,"vertices":2,"perm":[1,0],"simplices":[[0,1]]}"#;
    assert!(FreeZpComplex::from_json(s).is_err());
  }
}
