//! `zpcert`: batch front-end for certified Z_p-index computations.

mod artifact;
mod cli;
mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zpcert::Error;

use artifact::Provenance;
use cli::{Cli, Command};
use manifest::RunManifest;

const EXIT_VALIDATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
  match e {
    Error::BudgetExceeded { .. } => EXIT_BUDGET,
    Error::Inconsistent(_) => EXIT_INCONSISTENT,
    _ => EXIT_VALIDATION,
  }
}

fn fail(e: &Error) -> ExitCode {
  eprintln!("error: {e}");
  ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  let (cli, seed, manifest_sha, out) = match &cli.command {
    Command::Run(r) => {
      let (m, text) = match RunManifest::load(&r.manifest) {
        Ok(v) => v,
        Err(e) => return fail(&e),
      };
      let args = match m.to_args() {
        Ok(a) => a,
        Err(e) => return fail(&e),
      };
      let inner = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
          eprintln!("error: manifest {}: {e}", r.manifest.display());
          return ExitCode::from(EXIT_VALIDATION);
        }
      };
      let out: Option<PathBuf> = m.output.clone().or(cli.out.clone());
      (inner, m.seed, Some(artifact::sha256_hex(text.as_bytes())), out)
    }
    _ => {
      let out = cli.out.clone();
      (cli, None, None, out)
    }
  };
  let output = match commands::run(&cli.command) {
    Ok(o) => o,
    Err(e) => return fail(&e),
  };
  let name = cli.command.name();
  let prov = Provenance {
    subcommand: name,
    parameters: cli.command.parameters(),
    seed,
    manifest_sha256: manifest_sha,
  };
  let doc = artifact::render(&output, &prov);
  match out {
    Some(dir) => {
      if let Err(e) = artifact::write(&dir, name, &doc, output.csv.as_deref()) {
        eprintln!("error: writing artifacts to {}: {e}", dir.display());
        return ExitCode::FAILURE;
      }
    }
    None => {
      use std::io::Write;
      // A closed pipe (e.g. `| head`) is not an error worth reporting.
      let _ = std::io::stdout().lock().write_all(doc.as_bytes());
    }
  }
  ExitCode::SUCCESS
}
