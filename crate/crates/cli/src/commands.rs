use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};
use zpcert::arith::parse_rational;
use zpcert::config::{
  build_pp_xm, build_pp_yz, cubical_to_simplicial, relabel_isomorphism, CircleSpace, CubicalZpComplex,
};
use zpcert::index::{
  ambient_sphere_bound, best_coind_lower, best_ind_upper, coindex_lower, ensure_consistent,
  index_lower_from_connectivity, index_upper, index_upper_from_dimension, search_equivariant_map, BoundType,
  IndexCertificate, SearchBudget,
};
use zpcert::marker::{
  check_marker, epsilon_embedding, lindenstrauss_phi, obstruction_report, universality_map, CertificateStore,
  FiniteDynSys, MarkerHypothesis, Side,
};
use zpcert::simplicial::{e_n_zp, homology, join, subdivide_n, ComplexJson, FreeZpComplex};
use zpcert::symbolic::{
  as_free_zp_complex, format_word, join_power, make_sigma, make_sigma_m, periodic_points, periodic_table_csv,
  Subshift,
};
use zpcert::{Error, Result};

use crate::cli::*;

/// Result of one subcommand before it is written out.
pub struct Output {
  pub result: Value,
  pub certificates: Vec<IndexCertificate>,
  pub csv: Option<String>,
}

impl Output {
  fn plain(result: Value) -> Self {
    Self { result, certificates: Vec::new(), csv: None }
  }
}

fn read(path: &Path) -> Result<String> {
  fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<FreeZpComplex> {
  FreeZpComplex::from_json(&read(path)?)
}

fn load_system(path: &Path) -> Result<FiniteDynSys> {
  FiniteDynSys::from_json(&read(path)?)
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
  v.clone().ok_or_else(|| Error::InvalidInput(format!("--{flag} is required for this space")))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
  s.split(',')
    .map(str::trim)
    .filter(|t| !t.is_empty())
    .map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("bad {what} entry {t:?}"))))
    .collect()
}

fn shift(arg: ShiftArg, m: Option<usize>) -> Result<Subshift> {
  match arg {
    ShiftArg::Sigma => Ok(make_sigma()),
    ShiftArg::SigmaM => make_sigma_m(need(&m, "m")?),
  }
}

fn complex_value(x: &FreeZpComplex) -> Value {
  serde_json::to_value(ComplexJson::from(x)).expect("serializable")
}

fn summary(x: &FreeZpComplex) -> Value {
  let counts: Vec<usize> =
    (0..=x.dim().max(-1) as usize).take_while(|_| !x.is_empty()).map(|d| x.complex().count(d)).collect();
  json!({ "vertices": x.vertex_count(), "dim": x.dim(), "simplex_counts": counts, "fingerprint": x.fingerprint() })
}

/// A built space plus the cube dimension when the ambient-sphere bound applies to it.
struct Space {
  complex: FreeZpComplex,
  cube_dim: Option<usize>,
}

fn cubical(a: &SpaceArgs) -> Result<CubicalZpComplex> {
  let p = need(&a.p, "p")?;
  let grid = need(&a.grid, "grid")?;
  match a.space {
    SpaceKindArg::Xm => {
      let delta = parse_rational(&need(&a.delta, "delta")?)?;
      build_pp_xm(need(&a.cube_dim, "N")?, &delta, need(&a.m, "m")?, p, grid, a.max_cells)
    }
    SpaceKindArg::Y => build_pp_yz(CircleSpace::Y, p, grid, a.max_cells),
    SpaceKindArg::Z => build_pp_yz(CircleSpace::Z, p, grid, a.max_cells),
    other => Err(Error::InvalidInput(format!("{other:?} is not a configuration space"))),
  }
}

fn build_space(a: &SpaceArgs) -> Result<Space> {
  Ok(match a.space {
    SpaceKindArg::Enzp => Space { complex: e_n_zp(need(&a.n, "n")?, need(&a.p, "p")?)?, cube_dim: None },
    SpaceKindArg::Complex => Space { complex: load_complex(&need(&a.input, "input")?)?, cube_dim: None },
    SpaceKindArg::Periodic => {
      let p = need(&a.p, "p")?;
      let s = shift(need(&a.shift, "shift")?, a.m)?;
      Space { complex: join_power(&s, p as usize, a.copies.unwrap_or(1), a.max_points)?, cube_dim: None }
    }
    SpaceKindArg::Xm | SpaceKindArg::Y | SpaceKindArg::Z => {
      let c = cubical(a)?;
      // the sphere bound is about the offset-1 space X(N, δ)
      let cube_dim = (a.space == SpaceKindArg::Xm && a.m == Some(1)).then(|| c.grid().cube_dim);
      Space { complex: cubical_to_simplicial(&c)?.0, cube_dim }
    }
  })
}

/// Certificates that hold for every space of this kind, used for the consistency check.
fn background_bounds(s: &Space) -> Result<Vec<IndexCertificate>> {
  let x = &s.complex;
  let mut out = vec![index_upper_from_dimension(x)];
  // acyclic complexes have no connectivity bound
  if let Ok(c) = index_lower_from_connectivity(x) {
    out.push(c);
  }
  if let Some(n) = s.cube_dim {
    out.push(ambient_sphere_bound(n as u64, x.p())?);
  }
  Ok(out)
}

fn bound(a: &BoundArgs, lower: bool) -> Result<Output> {
  let s = build_space(&a.space)?;
  let budget = SearchBudget { max_nodes: a.max_nodes };
  let cert = if lower {
    coindex_lower(&s.complex, a.target, a.depth, budget)?
  } else {
    index_upper(&s.complex, a.target, a.depth, budget)?
  };
  cert.revalidate()?;
  let mut all = background_bounds(&s)?;
  all.push(cert.clone());
  ensure_consistent(&all)?;
  let ind_lower =
    all.iter().filter(|c| c.is_established() && c.bound_type == BoundType::IndLower).map(|c| c.value).max();
  let result = json!({
    "space": summary(&s.complex),
    "established": cert.is_established(),
    "certificate": cert,
    "bounds": { "coind_lower": best_coind_lower(&all), "ind_lower": ind_lower, "ind_upper": best_ind_upper(&all) },
  });
  Ok(Output { result, certificates: all, csv: None })
}

fn obstruction(a: &ObstructionArgs) -> Result<Output> {
  let primes: Vec<u64> = parse_list(&a.primes, "prime")?;
  if primes.is_empty() {
    return Err(Error::InvalidInput("no primes given".into()));
  }
  let store = match &a.store {
    Some(path) => serde_json::from_str::<CertificateStore>(&read(path)?)?,
    None => {
      let delta = parse_rational(&a.delta)?;
      let budget = SearchBudget { max_nodes: a.max_nodes };
      let label = format!("N={},delta={},G={}", a.cube_dim, a.delta, a.grid);
      let mut store = CertificateStore::default();
      for &p in &primes {
        let x = cubical_to_simplicial(&build_pp_xm(a.cube_dim, &delta, 1, p, a.grid, a.max_cells)?)?.0;
        let z = cubical_to_simplicial(&build_pp_yz(CircleSpace::Z, p, a.grid, a.max_cells)?)?.0;
        for (side, space) in [(Side::X, &x), (Side::Z, &z)] {
          for n in 0..=a.max_target {
            let c = coindex_lower(space, n, 0, budget)?;
            let found = c.is_established();
            store.push(side, &label, c);
            if !found {
              break;
            }
          }
        }
        store.push(Side::X, &label, ambient_sphere_bound(a.cube_dim as u64, p)?);
      }
      store
    }
  };
  let report = obstruction_report(&primes, &store)?;
  let certificates = store.entries.iter().map(|e| e.certificate.clone()).collect();
  Ok(Output { result: serde_json::to_value(&report)?, certificates, csv: Some(report.to_csv()) })
}

pub fn run(cmd: &Command) -> Result<Output> {
  Ok(match cmd {
    Command::Enzp(a) => {
      let x = e_n_zp(a.n, a.p)?;
      let mut result = json!({ "complex": complex_value(&x), "summary": summary(&x) });
      if a.homology {
        let coeff = a.coeff.unwrap_or(a.p);
        result["homology"] = serde_json::to_value(homology(x.complex(), coeff, false)?)?;
        result["reduced_homology"] = serde_json::to_value(homology(x.complex(), coeff, true)?)?;
      }
      Output::plain(result)
    }
    Command::Join(a) => {
      let x = join(&load_complex(&a.left)?, &load_complex(&a.right)?)?;
      Output::plain(json!({ "complex": complex_value(&x), "summary": summary(&x) }))
    }
    Command::Subdivide(a) => {
      let x = subdivide_n(&load_complex(&a.input)?, a.depth)?;
      Output::plain(json!({ "complex": complex_value(&x), "summary": summary(&x) }))
    }
    Command::Homology(a) => {
      let x = load_complex(&a.input)?;
      Output::plain(serde_json::to_value(homology(x.complex(), a.coeff, a.reduced)?)?)
    }
    Command::SearchMap(a) => {
      let (src, tgt) = (load_complex(&a.source)?, load_complex(&a.target)?);
      let r = search_equivariant_map(&src, &tgt, a.depth, SearchBudget { max_nodes: a.max_nodes })?;
      Output::plain(json!({
        "found": r.vertex_map.is_some(),
        "nodes": r.nodes,
        "depth": r.depth,
        "source": complex_value(&r.source),
        "vertex_map": r.vertex_map,
      }))
    }
    Command::Coind(a) => bound(a, true)?,
    Command::Ind(a) => bound(a, false)?,
    Command::Periodic(a) => {
      let s = shift(a.shift, a.m)?;
      let set = periodic_points(&s, a.n, a.max_points)?;
      let orbits: Vec<Vec<String>> =
        set.orbits.iter().map(|o| o.iter().map(|w| format_word(w)).collect()).collect();
      let csv = a.table.then(|| periodic_table_csv(&s, 1..=a.n, a.max_points)).transpose()?;
      Output {
        result: json!({ "period": a.n, "count": set.count(), "orbit_count": set.orbit_count(), "orbits": orbits }),
        certificates: Vec::new(),
        csv,
      }
    }
    Command::JoinPeriodic(a) => {
      let s = shift(a.shift, a.m)?;
      let base = as_free_zp_complex(&periodic_points(&s, a.p as usize, a.max_points)?)?;
      let x = join_power(&s, a.p as usize, a.copies, a.max_points)?;
      Output::plain(json!({
        "points": base.vertex_count(),
        "summary": summary(&x),
        "homology": homology(x.complex(), a.p, true)?,
        "complex": complex_value(&x),
      }))
    }
    Command::ConfigSpace(a) => {
      let c = cubical(a)?;
      let (x, points) = cubical_to_simplicial(&c)?;
      let cells: Vec<usize> = (0..=c.complex().dim().max(-1) as usize)
        .take_while(|_| !c.is_empty())
        .map(|d| c.complex().count(d))
        .collect();
      Output::plain(json!({
        "kind": c.kind(),
        "grid": c.grid(),
        "cell_counts": cells,
        "summary": summary(&x),
        "grid_points": points,
        "complex": complex_value(&x),
      }))
    }
    Command::CubicalHomology(a) => {
      let c = cubical(&a.space)?;
      let (x, _) = cubical_to_simplicial(&c)?;
      let cub = c.homology(a.coeff, false)?;
      let simp = homology(x.complex(), a.coeff, false)?;
      if cub != simp {
        return Err(Error::Inconsistent("cubical and simplicial homology differ".into()));
      }
      Output::plain(
        json!({ "homology": cub, "cells": c.complex().len(), "simplices": x.complex().total_count() }),
      )
    }
    Command::Relabel(a) => {
      let delta = parse_rational(&a.delta)?;
      let c = build_pp_xm(a.cube_dim, &delta, a.m, a.p, a.grid, a.max_cells)?;
      let r = relabel_isomorphism(&c, a.l)?;
      let (xm, _) = cubical_to_simplicial(&c)?;
      let (x1, _) = cubical_to_simplicial(&r.offset_one)?;
      Output::plain(json!({
        "p": a.p, "m": a.m, "l": a.l,
        "cells": c.complex().len(),
        "f_verified": r.f.len(),
        "g_verified": r.g.len(),
        "offset_m": summary(&xm),
        "offset_1": summary(&x1),
      }))
    }
    Command::MarkerCheck(a) => {
      let sys = load_system(&a.system.system)?;
      let u: BTreeSet<usize> = parse_list(&a.u, "point")?.into_iter().collect();
      Output::plain(serde_json::to_value(check_marker(&sys, a.horizon, &u)?)?)
    }
    Command::EpsEmbed(a) => {
      let sys = load_system(&a.system.system)?;
      Output::plain(serde_json::to_value(epsilon_embedding(&sys, &parse_rational(&a.eps)?)?)?)
    }
    Command::Universality(a) => {
      Output::plain(serde_json::to_value(universality_map(&load_system(&a.system)?)?)?)
    }
    Command::Phi(a) => {
      let sys = load_system(&a.system.system)?;
      let w: Vec<BigRational> = a.w.split(',').map(|t| parse_rational(t.trim())).collect::<Result<_>>()?;
      let hyp = match (&a.u, a.horizon) {
        (Some(u), Some(n)) => Some(MarkerHypothesis { u: parse_list(u, "point")?.into_iter().collect(), n }),
        (None, None) => None,
        _ => return Err(Error::InvalidInput("--U and --N go together".into())),
      };
      Output::plain(serde_json::to_value(lindenstrauss_phi(&sys, &w, a.steps, hyp.as_ref())?)?)
    }
    Command::ObstructionReport(a) => obstruction(a)?,
    Command::Run(_) => unreachable!("manifests are expanded before dispatch"),
  })
}
