use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};
use zpcert::{Error, Result};

/// A run description: subcommand, flag values, output directory, seed and budgets.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
  pub subcommand: String,
  #[serde(default)]
  pub parameters: Map<String, Value>,
  pub output: Option<PathBuf>,
  pub seed: Option<u64>,
  /// Budget flags such as `max_nodes`, passed through like parameters.
  #[serde(default)]
  pub budget: Map<String, Value>,
}

impl RunManifest {
  pub fn load(path: &Path) -> Result<(Self, String)> {
    let text = std::fs::read_to_string(path)
      .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Ok((serde_json::from_str(&text)?, text))
  }

  /// Equivalent command line, starting with the program name.
  pub fn to_args(&self) -> Result<Vec<String>> {
    if self.subcommand == "run" {
      return Err(Error::InvalidInput("a manifest cannot run another manifest".into()));
    }
    let mut args = vec!["zpcert".to_string(), self.subcommand.clone()];
    for (key, value) in self.parameters.iter().chain(&self.budget) {
      let flag = format!("--{}", key.replace('_', "-"));
      match value {
        Value::Bool(true) => args.push(flag),
        Value::Bool(false) | Value::Null => {}
        Value::String(s) => args.extend([flag, s.clone()]),
        Value::Number(n) => args.extend([flag, n.to_string()]),
        Value::Array(items) => {
          let parts: Vec<String> = items
            .iter()
            .map(|v| match v {
              Value::String(s) => s.clone(),
              other => other.to_string(),
            })
            .collect();
          args.extend([flag, parts.join(",")]);
        }
        Value::Object(_) => return Err(Error::InvalidInput(format!("parameter {key} must be a scalar"))),
      }
    }
    Ok(args)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn expands_to_flags() {
    let m: RunManifest = serde_json::from_str(
      r#"{"subcommand":"coind","parameters":{"space":"Xm","N":1,"delta":"3/10","homology":true,"reduced":false},
          "budget":{"max_nodes":1000},"seed":7}"#,
    )
    .unwrap();
    assert_eq!(
      m.to_args().unwrap(),
      [
        "zpcert",
        "coind",
        "--N",
        "1",
        "--delta",
        "3/10",
        "--homology",
        "--space",
        "Xm",
        "--max-nodes",
        "1000"
      ]
    );
  }

  #[test]
  fn rejects_nested_runs_and_objects() {
    let m: RunManifest = serde_json::from_str(r#"{"subcommand":"run"}"#).unwrap();
    assert!(m.to_args().is_err());
    let m: RunManifest = serde_json::from_str(r#"{"subcommand":"enzp","parameters":{"n":{"a":1}}}"#).unwrap();
    assert!(m.to_args().is_err());
    assert!(serde_json::from_str::<RunManifest>(r#"{"subcommand":"enzp","extra":1}"#).is_err());
  }
}
