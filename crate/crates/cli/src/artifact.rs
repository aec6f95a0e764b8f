use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::commands::Output;

#[derive(Serialize, Deserialize, Default)]
struct Index {
  artifacts: BTreeMap<String, IndexEntry>,
}

#[derive(Serialize, Deserialize)]
struct IndexEntry {
  subcommand: String,
  sha256: String,
}

pub struct Provenance<'a> {
  pub subcommand: &'a str,
  pub parameters: Value,
  pub seed: Option<u64>,
  pub manifest_sha256: Option<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
  hex::encode(Sha256::digest(bytes))
}

/// The artifact document: result plus provenance, rendered deterministically.
pub fn render(out: &Output, prov: &Provenance) -> String {
  let mut hashes: Vec<String> = out.certificates.iter().map(|c| c.hash()).collect();
  hashes.sort();
  hashes.dedup();
  let mut provenance = json!({
    "tool": "zpcert",
    "cli_version": env!("CARGO_PKG_VERSION"),
    "core_version": zpcert::VERSION,
    "parameters": prov.parameters,
    "certificate_hashes": hashes,
  });
  if let Some(seed) = prov.seed {
    provenance["seed"] = json!(seed);
  }
  if let Some(m) = &prov.manifest_sha256 {
    provenance["manifest_sha256"] = json!(m);
  }
  let doc = json!({ "subcommand": prov.subcommand, "result": out.result, "provenance": provenance });
  let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
  s.push('\n');
  s
}

/// Writes `<subcommand>.json` (and `.csv` when present) and updates `index.json`.
pub fn write(dir: &Path, subcommand: &str, doc: &str, csv: Option<&str>) -> io::Result<()> {
  fs::create_dir_all(dir)?;
  let mut files = vec![(format!("{subcommand}.json"), doc)];
  if let Some(csv) = csv {
    files.push((format!("{subcommand}.csv"), csv));
  }
  let index_path = dir.join("index.json");
  let mut index: Index = match fs::read_to_string(&index_path) {
    Ok(s) => serde_json::from_str(&s).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?,
    Err(e) if e.kind() == io::ErrorKind::NotFound => Index::default(),
    Err(e) => return Err(e),
  };
  for (name, body) in files {
    fs::write(dir.join(&name), body)?;
    index
      .artifacts
      .insert(name, IndexEntry { subcommand: subcommand.to_string(), sha256: sha256_hex(body.as_bytes()) });
  }
  let mut s = serde_json::to_string_pretty(&index).expect("serializable");
  s.push('\n');
  fs::write(index_path, s)
}
