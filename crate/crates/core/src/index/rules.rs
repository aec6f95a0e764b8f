//! Producing and combining index/coindex certificates.

use sha2::{Digest, Sha256};

use super::certificate::{BoundType, CertificateKind, Evidence, IndexCertificate, MapEvidence, Model};
use super::search::{search_equivariant_map, SearchBudget};
use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::simplicial::{
  e_n_zp, join, subdivide_n, ComplexJson, Connectivity, FreeZpComplex, SimplicialComplex,
};

/// `coind_p X >= n` by an explicit map from `E_n Z_p` (subdivided `depth` times) into `x`,
/// or an exhaustion record when none exists at that depth.
pub fn coindex_lower(
  x: &FreeZpComplex,
  n: usize,
  depth: usize,
  budget: SearchBudget,
) -> Result<IndexCertificate> {
  let p = x.p();
  let en = e_n_zp(n, p)?;
  let r = search_equivariant_map(&en, x, depth, budget)?;
  let space = Some(x.fingerprint());
  Ok(match r.vertex_map {
    Some(vertex_map) => IndexCertificate {
      kind: CertificateKind::MapWitness,
      bound_type: BoundType::CoindLower,
      value: n as i64,
      depth,
      evidence: Evidence::Map(MapEvidence {
        source: ComplexJson::from(&r.source),
        target: ComplexJson::from(x),
        vertex_map,
        model: Model::standard(n, depth),
      }),
      space,
      p,
    },
    None => exhaustion(BoundType::CoindLower, n, depth, r.nodes, space, p),
  })
}

/// `ind_p X <= n` by an explicit map from `x` (subdivided `depth` times) into `E_n Z_p`.
pub fn index_upper(
  x: &FreeZpComplex,
  n: usize,
  depth: usize,
  budget: SearchBudget,
) -> Result<IndexCertificate> {
  let p = x.p();
  let en = e_n_zp(n, p)?;
  let r = search_equivariant_map(x, &en, depth, budget)?;
  let space = Some(x.fingerprint());
  Ok(match r.vertex_map {
    Some(vertex_map) => IndexCertificate {
      kind: CertificateKind::MapWitness,
      bound_type: BoundType::IndUpper,
      value: n as i64,
      depth,
      evidence: Evidence::Map(MapEvidence {
        source: ComplexJson::from(&r.source),
        target: ComplexJson::from(&en),
        vertex_map,
        model: Model::standard(n, 0),
      }),
      space,
      p,
    },
    None => exhaustion(BoundType::IndUpper, n, depth, r.nodes, space, p),
  })
}

fn exhaustion(
  bound_type: BoundType,
  n: usize,
  depth: usize,
  nodes: u64,
  space: Option<String>,
  p: u64,
) -> IndexCertificate {
  IndexCertificate {
    kind: CertificateKind::Exhaustion,
    bound_type,
    value: n as i64,
    depth,
    evidence: Evidence::Exhaustion { nodes, attempted: n },
    space,
    p,
  }
}

/// `ind_p X <= dim X`.
pub fn index_upper_from_dimension(x: &FreeZpComplex) -> IndexCertificate {
  IndexCertificate {
    kind: CertificateKind::DimensionBound,
    bound_type: BoundType::IndUpper,
    value: x.dim() as i64,
    depth: 0,
    evidence: Evidence::Dimension { dim: x.dim() as i64 },
    space: Some(x.fingerprint()),
    p: x.p(),
  }
}

/// `coind_p ∅ = -1`.
pub fn coindex_of_empty(p: u64) -> IndexCertificate {
  IndexCertificate {
    kind: CertificateKind::DimensionBound,
    bound_type: BoundType::CoindLower,
    value: -1,
    depth: 0,
    evidence: Evidence::Dimension { dim: -1 },
    space: Some(FreeZpComplex::empty(p).expect("prime checked by caller").fingerprint()),
    p,
  }
}

/// `ind_p X >= conn X + 1`, with connectivity computed from F_p homology.
///
/// The bound is homotopy-theoretic only when the complex is simply connected; the evidence
/// records whether that is verified.
pub fn index_lower_from_connectivity(x: &FreeZpComplex) -> Result<IndexCertificate> {
  let profile = x.homology(x.p(), true)?;
  let conn = match profile.homological_connectivity {
    Connectivity::Finite(c) => c,
    Connectivity::Acyclic => {
      return Err(Error::InvalidInput("acyclic complex cannot carry a free Z_p-action".into()));
    }
  };
  Ok(IndexCertificate {
    kind: CertificateKind::ConnectivityBound,
    bound_type: BoundType::IndLower,
    value: conn + 1,
    depth: 0,
    evidence: Evidence::Homology { profile, simply_connected_verified: x.simply_connected_verified() },
    space: Some(x.fingerprint()),
    p: x.p(),
  })
}

/// `ind_p P_p(X(N, δ)) <= N p - N - 1`, valid for every discretization of that space.
pub fn ambient_sphere_bound(cube_dim: u64, p: u64) -> Result<IndexCertificate> {
  crate::arith::require_prime(p)?;
  if cube_dim == 0 {
    return Err(Error::InvalidInput("cube dimension must be at least 1".into()));
  }
  Ok(IndexCertificate {
    kind: CertificateKind::AmbientBound,
    bound_type: BoundType::IndUpper,
    value: (cube_dim * p - cube_dim - 1) as i64,
    depth: 0,
    evidence: Evidence::Ambient { cube_dim, p },
    space: None,
    p,
  })
}

/// Best established coindex lower bound.
pub fn best_coind_lower(certs: &[IndexCertificate]) -> Option<i64> {
  certs.iter().filter(|c| c.is_established() && c.bound_type == BoundType::CoindLower).map(|c| c.value).max()
}

/// Best established index upper bound.
pub fn best_ind_upper(certs: &[IndexCertificate]) -> Option<i64> {
  certs.iter().filter(|c| c.is_established() && c.bound_type == BoundType::IndUpper).map(|c| c.value).min()
}

/// True iff every established coindex lower bound is at most every established index upper
/// bound. Certificates must concern one space (family-wide bounds are allowed alongside).
pub fn coindex_le_index_check(certs: &[IndexCertificate]) -> Result<bool> {
  let mut spaces = certs.iter().filter_map(|c| c.space.as_deref());
  if let Some(first) = spaces.next() {
    if let Some(other) = spaces.find(|s| *s != first) {
      return Err(Error::InvalidInput(format!(
        "certificates reference different spaces: {first} and {other}"
      )));
    }
  }
  Ok(match (best_coind_lower(certs), best_ind_upper(certs)) {
    (Some(lo), Some(hi)) => lo <= hi,
    _ => true,
  })
}

/// [`coindex_le_index_check`] turned into a hard error.
pub fn ensure_consistent(certs: &[IndexCertificate]) -> Result<()> {
  if coindex_le_index_check(certs)? {
    Ok(())
  } else {
    Err(Error::Inconsistent(format!(
      "coind >= {} but ind <= {}",
      best_coind_lower(certs).unwrap_or_default(),
      best_ind_upper(certs).unwrap_or_default()
    )))
  }
}

fn coind_witness(c: &IndexCertificate) -> Result<&MapEvidence> {
  match (&c.kind, &c.bound_type, &c.evidence) {
    (CertificateKind::MapWitness, BoundType::CoindLower, Evidence::Map(m)) => Ok(m),
    _ => Err(Error::InvalidInput(format!("expected a coindex map witness, got {:?}", c.kind))),
  }
}

/// Vertex inclusion `sd^depth(E_m) -> sd^depth(E_n)` for `m <= n`, induced by `E_m ⊂ E_n`.
fn standard_inclusion(m: usize, n: usize, depth: usize, p: u64) -> Result<Vec<usize>> {
  let small0 = e_n_zp(m, p)?;
  let big0 = e_n_zp(n, p)?;
  let mut incl: Vec<usize> = (0..small0.vertex_count()).collect();
  let (mut small, mut big): (SimplicialComplex, SimplicialComplex) =
    (small0.complex().clone(), big0.complex().clone());
  for _ in 0..depth {
    let next: Vec<usize> = small
      .iter()
      .map(|s| {
        let mut img: Vec<usize> = s.iter().map(|&v| incl[v]).collect();
        img.sort_unstable();
        big.flat_index(&img).expect("subcomplex")
      })
      .collect();
    incl = next;
    small = small.barycentric_subdivision().0;
    big = big.barycentric_subdivision().0;
  }
  Ok(incl)
}

/// Restricts a witness `E_n -> X` along `E_m ⊂ E_n` to a witness `E_m -> X`.
pub fn restrict_coindex_witness(c: &IndexCertificate, m: usize) -> Result<IndexCertificate> {
  let w = coind_witness(c)?;
  let Model::Standard { n, depth, power } = w.model else {
    return Err(Error::InvalidInput("restriction needs a standard source model".into()));
  };
  if m > n {
    return Err(Error::InvalidInput(format!("cannot restrict E_{n} witness to E_{m}")));
  }
  let incl = standard_inclusion(m, n, depth, c.p)?;
  let model = Model::Standard { n: m, depth, power };
  let source = ComplexJson::from(&model.build(c.p)?);
  let vertex_map = incl.iter().map(|&v| w.vertex_map[v]).collect();
  let out = IndexCertificate {
    value: m as i64,
    evidence: Evidence::Map(MapEvidence { source, target: w.target.clone(), vertex_map, model }),
    ..c.clone()
  };
  out.revalidate()?;
  Ok(out)
}

/// `coind(X × Y) >= min(coind X, coind Y)` via `u ↦ (f(h(u)), g(h(u)))` with `h` the
/// inclusion of the smaller E-space. The product is never triangulated; the projections give the
/// matching upper bound symbolically.
pub fn product_coindex_certificate(cx: &IndexCertificate, cy: &IndexCertificate) -> Result<IndexCertificate> {
  if cx.p != cy.p {
    return Err(Error::PrimeMismatch { left: cx.p, right: cy.p });
  }
  let (wx, wy) = (coind_witness(cx)?, coind_witness(cy)?);
  if cx.depth != cy.depth {
    return Err(Error::InvalidInput(format!("witness depths differ ({} vs {})", cx.depth, cy.depth)));
  }
  let k = cx.value.min(cy.value) as usize;
  let fx = restrict_coindex_witness(cx, k)?;
  let gy = restrict_coindex_witness(cy, k)?;
  let (m, n) = (wx.model.dimension(), wy.model.dimension());
  let big = m.max(n);
  let inclusion = MapEvidence {
    source: ComplexJson::from(&Model::standard(k, cx.depth).build(cx.p)?),
    target: ComplexJson::from(&Model::standard(big, cx.depth).build(cx.p)?),
    vertex_map: standard_inclusion(k, big, cx.depth, cx.p)?,
    model: Model::standard(k, cx.depth),
  };
  let maps =
    vec![fx.map_evidence().cloned().expect("map"), gy.map_evidence().cloned().expect("map"), inclusion];
  let space = format!(
    "product:{}",
    hex::encode(Sha256::digest(format!(
      "{}|{}",
      cx.space.clone().unwrap_or_default(),
      cy.space.clone().unwrap_or_default()
    )))
  );
  let out = IndexCertificate {
    kind: CertificateKind::Combined,
    bound_type: BoundType::CoindLower,
    value: k as i64,
    depth: cx.depth,
    evidence: Evidence::Combined {
      rule:
        "coind(X x Y) = min(coind X, coind Y): lower bound by (f o h, g o h); upper bound by the projections"
          .into(),
      children: vec![cx.clone(), cy.clone()],
      maps,
    },
    space: Some(space),
    p: cx.p,
  };
  out.revalidate()?;
  Ok(out)
}

/// `coind(X * Y) >= coind X + coind Y + 1` via the join `f * g` of two witnesses.
///
/// `max_simplices` bounds the number of maximal simplices of the join that gets built.
pub fn join_coindex_certificate(
  cx: &IndexCertificate,
  cy: &IndexCertificate,
  max_simplices: usize,
) -> Result<IndexCertificate> {
  if cx.p != cy.p {
    return Err(Error::PrimeMismatch { left: cx.p, right: cy.p });
  }
  let is_empty_space =
    |c: &IndexCertificate| c.value == -1 && matches!(c.evidence, Evidence::Dimension { dim: -1 });
  if is_empty_space(cy) {
    return Ok(cx.clone());
  }
  if is_empty_space(cx) {
    return Ok(cy.clone());
  }
  let (wx, wy) = (coind_witness(cx)?, coind_witness(cy)?);
  let size = wx.target.simplices.len().saturating_mul(wy.target.simplices.len());
  if size > max_simplices {
    return Err(Error::BudgetExceeded {
      what: "join construction".into(),
      limit: max_simplices as u64,
      reached: size as u64,
    });
  }
  let x = FreeZpComplex::try_from(wx.target.clone())?;
  let y = FreeZpComplex::try_from(wy.target.clone())?;
  let sx = FreeZpComplex::try_from(wx.source.clone())?;
  let sy = FreeZpComplex::try_from(wy.source.clone())?;
  let xy = join(&x, &y)?;
  let source = join(&sx, &sy)?;
  let offset = x.vertex_count();
  let vertex_map = wx.vertex_map.iter().copied().chain(wy.vertex_map.iter().map(|v| v + offset)).collect();
  let model = Model::join(wx.model.clone(), wy.model.clone());
  let out = IndexCertificate {
    kind: CertificateKind::MapWitness,
    bound_type: BoundType::CoindLower,
    value: cx.value + cy.value + 1,
    depth: cx.depth.max(cy.depth),
    evidence: Evidence::Map(MapEvidence {
      source: ComplexJson::from(&source),
      target: ComplexJson::from(&xy),
      vertex_map,
      model,
    }),
    space: Some(xy.fingerprint()),
    p: cx.p,
  };
  out.revalidate()?;
  Ok(out)
}

/// `coind(X, T^a) = coind(X, T)`: the same vertex map is a witness `(E, S^a) -> (X, T^a)`.
///
/// The reverse direction is checked by applying the rule again with `b = a^{-1} mod p`, which
/// must reproduce the original witness.
pub fn iterate_action_coindex(c: &IndexCertificate, a: u64) -> Result<IndexCertificate> {
  let p = c.p;
  if a == 0 || a >= p {
    return Err(Error::InvalidInput(format!("exponent {a} outside 1..{}", p - 1)));
  }
  let forward = power_witness(c, a)?;
  let b = inv_mod(a, p).expect("p prime and 0 < a < p");
  let back = power_witness(&forward, b)?;
  if back.evidence != c.evidence || back.value != c.value {
    return Err(Error::Inconsistent("T^(ab) witness differs from the original".into()));
  }
  Ok(forward)
}

fn power_witness(c: &IndexCertificate, a: u64) -> Result<IndexCertificate> {
  let w = coind_witness(c)?;
  let source = FreeZpComplex::try_from(w.source.clone())?.with_action_power(a)?;
  let target = FreeZpComplex::try_from(w.target.clone())?.with_action_power(a)?;
  let out = IndexCertificate {
    evidence: Evidence::Map(MapEvidence {
      source: ComplexJson::from(&source),
      target: ComplexJson::from(&target),
      vertex_map: w.vertex_map.clone(),
      model: w.model.with_power(a, c.p),
    }),
    space: Some(target.fingerprint()),
    ..c.clone()
  };
  out.revalidate()?;
  Ok(out)
}

/// Depth-`d` subdivision of `E_n Z_p`, exposed for callers assembling their own witnesses.
pub fn standard_source(n: usize, depth: usize, p: u64) -> Result<FreeZpComplex> {
  subdivide_n(&e_n_zp(n, p)?, depth)
}
