//! Index and coindex certificates and their re-validation.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::verify::check_equivariant_map;
use crate::error::{Error, Result};
use crate::simplicial::{e_n_zp, join, subdivide_n, ComplexJson, FreeZpComplex, HomologyProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
  MapWitness,
  Exhaustion,
  ConnectivityBound,
  DimensionBound,
  AmbientBound,
  Combined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundType {
  IndUpper,
  IndLower,
  CoindLower,
  CoindUpper,
}

/// Recipe for the canonical E_n Z_p side of a map witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
  /// `depth`-fold subdivision of the join of `n + 1` copies of `Z_p`, with generator `S^power`.
  Standard { n: usize, depth: usize, power: u64 },
  /// Join of two models with the simultaneous action.
  Join { left: Box<Model>, right: Box<Model> },
}

impl Model {
  pub fn standard(n: usize, depth: usize) -> Self {
    Model::Standard { n, depth, power: 1 }
  }

  /// E-dimension: `E_m * E_n` is an `E_{m+n+1}`.
  pub fn dimension(&self) -> usize {
    match self {
      Model::Standard { n, .. } => *n,
      Model::Join { left, right } => left.dimension() + right.dimension() + 1,
    }
  }

  pub fn build(&self, p: u64) -> Result<FreeZpComplex> {
    match self {
      Model::Standard { n, depth, power } => {
        let x = subdivide_n(&e_n_zp(*n, p)?, *depth)?;
        if *power % p == 1 {
          Ok(x)
        } else {
          x.with_action_power(*power)
        }
      }
      Model::Join { left, right } => join(&left.build(p)?, &right.build(p)?),
    }
  }

  /// Join, collapsing to a standard model when both sides are undivided with the same generator
  /// (then the vertex numberings agree exactly).
  pub fn join(left: Model, right: Model) -> Model {
    match (&left, &right) {
      (Model::Standard { n: m, depth: 0, power: a }, Model::Standard { n, depth: 0, power: b }) if a == b => {
        Model::Standard { n: m + n + 1, depth: 0, power: *a }
      }
      _ => Model::Join { left: Box::new(left), right: Box::new(right) },
    }
  }

  /// The model with generator replaced by its `a`-th power.
  pub fn with_power(&self, a: u64, p: u64) -> Model {
    match self {
      Model::Standard { n, depth, power } => Model::Standard { n: *n, depth: *depth, power: power * a % p },
      Model::Join { left, right } => {
        Model::Join { left: Box::new(left.with_power(a, p)), right: Box::new(right.with_power(a, p)) }
      }
    }
  }
}

/// An explicit equivariant simplicial map together with the recipe of its canonical side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEvidence {
  pub source: ComplexJson,
  pub target: ComplexJson,
  pub vertex_map: Vec<usize>,
  /// Describes `source` for coindex witnesses and `target` for index witnesses.
  pub model: Model,
}

impl MapEvidence {
  /// Re-checks the map and that the canonical side matches its recipe.
  pub fn revalidate(&self, canonical_is_source: bool) -> Result<()> {
    check_equivariant_map(&self.source, &self.target, &self.vertex_map).map_err(Error::Inconsistent)?;
    let built = ComplexJson::from(&self.model.build(self.source.p)?);
    let side = if canonical_is_source { &self.source } else { &self.target };
    if &built != side {
      return Err(Error::Inconsistent("canonical side does not match its model".into()));
    }
    Ok(())
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
  Map(MapEvidence),
  Homology {
    profile: HomologyProfile,
    simply_connected_verified: bool,
  },
  /// The search finished without a map. One-sided: not a disproof for continuous maps.
  Exhaustion {
    nodes: u64,
    attempted: usize,
  },
  Dimension {
    dim: i64,
  },
  Ambient {
    cube_dim: u64,
    p: u64,
  },
  Combined {
    rule: String,
    children: Vec<IndexCertificate>,
    maps: Vec<MapEvidence>,
  },
}

/// A checkable witness for one index or coindex bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCertificate {
  pub kind: CertificateKind,
  pub bound_type: BoundType,
  pub value: i64,
  pub depth: usize,
  pub evidence: Evidence,
  /// Fingerprint of the space the bound is about; `None` for bounds valid on a whole family.
  pub space: Option<String>,
  pub p: u64,
}

impl IndexCertificate {
  /// Whether the certificate establishes its bound (exhaustion records do not).
  pub fn is_established(&self) -> bool {
    self.kind != CertificateKind::Exhaustion
  }

  pub fn map_evidence(&self) -> Option<&MapEvidence> {
    match &self.evidence {
      Evidence::Map(m) => Some(m),
      _ => None,
    }
  }

  /// Re-checks every piece of evidence, recursively for combined certificates.
  pub fn revalidate(&self) -> Result<()> {
    let fail = |msg: &str| Err(Error::Inconsistent(format!("{:?} certificate: {msg}", self.kind)));
    match (&self.kind, &self.evidence) {
      (CertificateKind::MapWitness, Evidence::Map(m)) => {
        let coind = match self.bound_type {
          BoundType::CoindLower => true,
          BoundType::IndUpper => false,
          _ => return fail("map witnesses bound coind from below or ind from above"),
        };
        m.revalidate(coind)?;
        if m.model.dimension() as i64 != self.value {
          return fail("value differs from model dimension");
        }
        if coind {
          let target_fp = fingerprint_json(&m.target);
          if self.space.as_deref() != Some(target_fp.as_str()) {
            return fail("space fingerprint differs from map target");
          }
        }
        Ok(())
      }
      (CertificateKind::Exhaustion, Evidence::Exhaustion { attempted, .. }) => {
        if *attempted as i64 != self.value {
          return fail("attempted dimension differs from value");
        }
        Ok(())
      }
      (CertificateKind::ConnectivityBound, Evidence::Homology { profile, .. }) => {
        match profile.homological_connectivity.finite() {
          Some(c) if c + 1 == self.value && self.bound_type == BoundType::IndLower => Ok(()),
          _ => fail("value is not homological connectivity + 1"),
        }
      }
      (CertificateKind::DimensionBound, Evidence::Dimension { dim }) => {
        if *dim == self.value {
          Ok(())
        } else {
          fail("value differs from dimension")
        }
      }
      (CertificateKind::AmbientBound, Evidence::Ambient { cube_dim, p }) => {
        if (*cube_dim * *p) as i64 - *cube_dim as i64 - 1 == self.value && *p == self.p {
          Ok(())
        } else {
          fail("value differs from N p - N - 1")
        }
      }
      (CertificateKind::Combined, Evidence::Combined { children, maps, .. }) => {
        for c in children {
          c.revalidate()?;
        }
        for m in maps {
          m.revalidate(self.bound_type == BoundType::CoindLower)?;
        }
        Ok(())
      }
      _ => fail("evidence does not match kind"),
    }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(self).expect("serializable")
  }

  /// Parses and re-validates.
  pub fn from_json(s: &str) -> Result<Self> {
    let c: Self = serde_json::from_str(s)?;
    c.revalidate()?;
    Ok(c)
  }

  /// SHA-256 of the JSON form.
  pub fn hash(&self) -> String {
    hex::encode(Sha256::digest(self.to_json().as_bytes()))
  }
}

pub fn fingerprint_json(j: &ComplexJson) -> String {
  hex::encode(Sha256::digest(serde_json::to_string(j).expect("serializable").as_bytes()))
}
