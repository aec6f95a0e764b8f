use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "zpcert", version, about = "Certified Z_p-index bounds for free simplicial Z_p-complexes")]
pub struct Cli {
  /// Directory for the artifact and index files; without it the artifact goes to stdout.
  #[arg(long, global = true)]
  pub out: Option<PathBuf>,
  #[command(subcommand)]
  pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
  /// The join of n+1 copies of discrete Z_p.
  Enzp(EnzpArgs),
  /// Join of two complexes given as JSON files.
  Join(JoinArgs),
  /// Iterated barycentric subdivision.
  Subdivide(SubdivideArgs),
  /// F_p homology of a complex file.
  Homology(HomologyArgs),
  /// Search for an equivariant simplicial map between two complex files.
  SearchMap(SearchMapArgs),
  /// Certify coind_p >= target by a map from E_target Z_p.
  Coind(BoundArgs),
  /// Certify ind_p <= target by a map into E_target Z_p.
  Ind(BoundArgs),
  /// Periodic points of a three-symbol subshift.
  Periodic(PeriodicArgs),
  /// Join power of the p-periodic points of a subshift.
  JoinPeriodic(JoinPeriodicArgs),
  /// Build a cubical inner approximation and its triangulation.
  ConfigSpace(SpaceArgs),
  /// Cubical F_p homology of a built configuration space.
  CubicalHomology(CubicalHomologyArgs),
  /// Relabeling isomorphism between offset-m and offset-1 complexes.
  Relabel(RelabelArgs),
  /// Marker-property flags of a finite system.
  MarkerCheck(MarkerCheckArgs),
  /// Distance-to-centers embedding of a finite system.
  EpsEmbed(EpsEmbedArgs),
  /// Equivariant map of a finite system into X(N, δ).
  Universality(SystemArgs),
  /// Marker function φ and its defect set E.
  Phi(PhiArgs),
  /// Per-prime comparison of certified coindex bounds for X(N, δ) and Z.
  ObstructionReport(ObstructionArgs),
  /// Run a manifest file.
  Run(RunArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnzpArgs {
  #[arg(long)]
  pub n: usize,
  #[arg(long)]
  pub p: u64,
  /// Also report homology.
  #[arg(long)]
  pub homology: bool,
  /// Coefficient prime for homology (defaults to p).
  #[arg(long)]
  pub coeff: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct JoinArgs {
  #[arg(long)]
  pub left: PathBuf,
  #[arg(long)]
  pub right: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct SubdivideArgs {
  #[arg(long)]
  pub input: PathBuf,
  #[arg(long, default_value_t = 1)]
  pub depth: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct HomologyArgs {
  #[arg(long)]
  pub input: PathBuf,
  #[arg(long)]
  pub coeff: u64,
  #[arg(long)]
  pub reduced: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchMapArgs {
  #[arg(long)]
  pub source: PathBuf,
  #[arg(long)]
  pub target: PathBuf,
  #[arg(long, default_value_t = 0)]
  pub depth: usize,
  #[arg(long, default_value_t = 20_000_000)]
  pub max_nodes: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKindArg {
  /// E_n Z_p (needs --n, --p).
  Enzp,
  /// Discretized P_p(X_m(N, δ)) (needs --N, --delta, --m, --p, --grid).
  #[value(name = "Xm", alias = "xm")]
  Xm,
  /// Discretized P_p(Y) (needs --p, --grid).
  #[value(name = "Y", alias = "y")]
  Y,
  /// Discretized P_p(Z) (needs --p, --grid).
  #[value(name = "Z", alias = "z")]
  Z,
  /// Join power of the p-periodic points of a subshift (needs --p, --shift, --copies).
  Periodic,
  /// A complex JSON file (needs --input).
  Complex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftArg {
  /// Σ: neighbours differ.
  Sigma,
  /// Σ_m: symbols at offset m differ (needs --m).
  SigmaM,
}

#[derive(Args, Debug, Serialize)]
pub struct SpaceArgs {
  #[arg(long, value_enum)]
  pub space: SpaceKindArg,
  #[arg(long)]
  pub p: Option<u64>,
  #[arg(long)]
  pub n: Option<usize>,
  /// Cube dimension.
  #[arg(long = "N")]
  #[serde(rename = "N")]
  pub cube_dim: Option<usize>,
  /// Separation threshold as "a/b".
  #[arg(long)]
  pub delta: Option<String>,
  #[arg(long)]
  pub m: Option<usize>,
  /// Grid subdivisions G.
  #[arg(long)]
  pub grid: Option<u16>,
  #[arg(long, value_enum)]
  pub shift: Option<ShiftArg>,
  #[arg(long)]
  pub copies: Option<usize>,
  #[arg(long)]
  pub input: Option<PathBuf>,
  #[arg(long, default_value_t = 10_000_000)]
  pub max_cells: usize,
  #[arg(long, default_value_t = 1_000_000)]
  pub max_points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
  #[command(flatten)]
  #[serde(flatten)]
  pub space: SpaceArgs,
  #[arg(long)]
  pub target: usize,
  #[arg(long, default_value_t = 0)]
  pub depth: usize,
  #[arg(long, default_value_t = 20_000_000)]
  pub max_nodes: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PeriodicArgs {
  #[arg(long, value_enum)]
  pub shift: ShiftArg,
  #[arg(long)]
  pub m: Option<usize>,
  /// Period.
  #[arg(long)]
  pub n: usize,
  /// Also tabulate all periods 1..=n.
  #[arg(long)]
  pub table: bool,
  #[arg(long, default_value_t = 1_000_000)]
  pub max_points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct JoinPeriodicArgs {
  #[arg(long, value_enum)]
  pub shift: ShiftArg,
  #[arg(long)]
  pub m: Option<usize>,
  #[arg(long)]
  pub p: u64,
  #[arg(long, default_value_t = 2)]
  pub copies: usize,
  #[arg(long, default_value_t = 1_000_000)]
  pub max_points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CubicalHomologyArgs {
  #[command(flatten)]
  #[serde(flatten)]
  pub space: SpaceArgs,
  #[arg(long)]
  pub coeff: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct RelabelArgs {
  #[arg(long = "N", default_value_t = 1)]
  #[serde(rename = "N")]
  pub cube_dim: usize,
  #[arg(long)]
  pub delta: String,
  #[arg(long)]
  pub m: usize,
  #[arg(long)]
  pub p: u64,
  #[arg(long)]
  pub grid: u16,
  #[arg(long)]
  pub l: u64,
  #[arg(long, default_value_t = 10_000_000)]
  pub max_cells: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SystemArgs {
  /// System JSON file: {"points", "metric", "T"}.
  #[arg(long)]
  pub system: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct MarkerCheckArgs {
  #[command(flatten)]
  #[serde(flatten)]
  pub system: SystemArgs,
  #[arg(long = "N")]
  #[serde(rename = "N")]
  pub horizon: usize,
  /// Comma-separated points of U (may be empty).
  #[arg(long = "U", default_value = "")]
  #[serde(rename = "U")]
  pub u: String,
}

#[derive(Args, Debug, Serialize)]
pub struct EpsEmbedArgs {
  #[command(flatten)]
  #[serde(flatten)]
  pub system: SystemArgs,
  #[arg(long)]
  pub eps: String,
}

#[derive(Args, Debug, Serialize)]
pub struct PhiArgs {
  #[command(flatten)]
  #[serde(flatten)]
  pub system: SystemArgs,
  /// Comma-separated weights, one rational per point.
  #[arg(long)]
  pub w: String,
  #[arg(long = "M")]
  #[serde(rename = "M")]
  pub steps: usize,
  /// Marker set U for the hypothesis check (with --N).
  #[arg(long = "U")]
  #[serde(rename = "U")]
  pub u: Option<String>,
  #[arg(long = "N")]
  #[serde(rename = "N")]
  pub horizon: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct ObstructionArgs {
  /// Comma-separated primes.
  #[arg(long)]
  pub primes: String,
  /// Certificate store JSON; when absent the store is built from the grid parameters.
  #[arg(long)]
  pub store: Option<PathBuf>,
  #[arg(long = "N", default_value_t = 1)]
  #[serde(rename = "N")]
  pub cube_dim: usize,
  #[arg(long, default_value = "1/2")]
  pub delta: String,
  #[arg(long, default_value_t = 4)]
  pub grid: u16,
  /// Largest coindex target tried on each side.
  #[arg(long, default_value_t = 1)]
  pub max_target: usize,
  #[arg(long, default_value_t = 2_000_000)]
  pub max_nodes: u64,
  #[arg(long, default_value_t = 10_000_000)]
  pub max_cells: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct RunArgs {
  #[arg(long)]
  pub manifest: PathBuf,
}

impl Command {
  pub fn name(&self) -> &'static str {
    match self {
      Command::Enzp(_) => "enzp",
      Command::Join(_) => "join",
      Command::Subdivide(_) => "subdivide",
      Command::Homology(_) => "homology",
      Command::SearchMap(_) => "search-map",
      Command::Coind(_) => "coind",
      Command::Ind(_) => "ind",
      Command::Periodic(_) => "periodic",
      Command::JoinPeriodic(_) => "join-periodic",
      Command::ConfigSpace(_) => "config-space",
      Command::CubicalHomology(_) => "cubical-homology",
      Command::Relabel(_) => "relabel",
      Command::MarkerCheck(_) => "marker-check",
      Command::EpsEmbed(_) => "eps-embed",
      Command::Universality(_) => "universality",
      Command::Phi(_) => "phi",
      Command::ObstructionReport(_) => "obstruction-report",
      Command::Run(_) => "run",
    }
  }

  /// The subcommand's own flags, for the provenance block.
  pub fn parameters(&self) -> serde_json::Value {
    match serde_json::to_value(self).expect("serializable") {
      serde_json::Value::Object(mut m) => m.remove(self.name()).unwrap_or(serde_json::Value::Null),
      other => other,
    }
  }
}
