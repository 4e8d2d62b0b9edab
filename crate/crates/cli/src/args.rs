use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "nbperc", version, about = "Non-backtracking spectra and site-percolation bounds")]
pub struct Cli {
    /// Seed of every random stream; recorded in all outputs
    #[arg(long, global = true, default_value_t = 0)]
    pub master_seed: u64,
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Generate a graph and export it as an edge list plus JSON descriptor
    Gen(GenArgs),
    /// Spectral radius of the Hashimoto matrix
    Rho(RhoArgs),
    /// Strong ell-connectivity of the oriented line graph
    OlgCheck(OlgArgs),
    /// Walk-norm growth rates from every seed arc
    Growth(GrowthArgs),
    /// Monte Carlo tau, chi and boundary-reach estimates
    Percolate(PercolateArgs),
    /// Connectivity estimates for many pairs, one row per (p, pair)
    TauTable(TauTableArgs),
    /// Lower bounds on p_T, p_c and p_u
    Bounds(BoundsArgs),
    /// Spectral radii along a subgraph sequence
    RhoLimit(RhoLimitArgs),
    /// Explicit connectivity envelope and its Monte Carlo verification
    EnvelopeVerify(EnvelopeArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Gen(_) => "gen",
            Self::Rho(_) => "rho",
            Self::OlgCheck(_) => "olg-check",
            Self::Growth(_) => "growth",
            Self::Percolate(_) => "percolate",
            Self::TauTable(_) => "tau-table",
            Self::Bounds(_) => "bounds",
            Self::RhoLimit(_) => "rho-limit",
            Self::EnvelopeVerify(_) => "envelope-verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Tree,
    Cycle,
    Complete,
    GridBall,
    RandomRegular,
    Petersen,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Generated graph family
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Tree depth
    #[arg(long)]
    pub depth: Option<usize>,
    /// Grid-ball radius
    #[arg(long)]
    pub radius: Option<usize>,
    /// Random-regular generator seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Edge-list file instead of a family
    #[arg(long, conflicts_with = "family")]
    pub edges: Option<PathBuf>,
    /// Minimum vertex count for edge-list input
    #[arg(long)]
    pub vertices: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MonteCarloArgs {
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0.95)]
    pub confidence: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SequenceArgs {
    /// Local rule: treeD (e.g. tree3), zD (e.g. z2), or `ball` for BFS
    /// balls of the graph given by the graph options
    #[arg(long)]
    pub rule: Option<String>,
    /// Root vertex for `--rule ball`
    #[arg(long, default_value_t = 0)]
    pub root: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct RhoArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Iteration cap; defaults to 100 times the arc count
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Omit the Perron vector from the report
    #[arg(long)]
    pub no_vector: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct OlgArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub ell: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 1)]
    pub p_norm: u8,
    #[arg(long, default_value_t = 200)]
    pub m_max: usize,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub max_seeds: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PercolateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Truncation radius for the boundary-reach estimate (needs --rule)
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long)]
    pub v: Option<usize>,
    /// Vertex for the cluster-size estimate
    #[arg(long)]
    pub vertex: Option<usize>,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct TauTableArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    /// Pairs as `i-j,i-j,...`; all pairs i < j when omitted
    #[arg(long)]
    pub pairs: Option<String>,
    /// Add the exact enumeration value (graphs up to 22 vertices)
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 8)]
    pub t_max: usize,
    #[arg(long, default_value_t = 200)]
    pub m_max: usize,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, default_value_t = 0.01)]
    pub plateau_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct RhoLimitArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 10)]
    pub t_max: usize,
    #[arg(long, default_value_t = 0.01)]
    pub plateau_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 64)]
    pub ell_max: usize,
    /// Check an evenly spaced subset of at most this many pairs
    #[arg(long)]
    pub max_pairs: Option<usize>,
    #[command(flatten)]
    pub mc: MonteCarloArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}
