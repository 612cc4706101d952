//! Command-line arguments and the validated run configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualpolar::family::{FamilyParams, FamilyTag};
use dualpolar::geometry::GeometryError;
use dualpolar::scalars::prime_power;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Errors that end a run before any mathematics is checked (exit code 2),
/// plus check failures raised outside a verification report (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot build instance: {0}")]
    Build(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dualpolar", version, about = "Exact verification of dual polar graphs, their Leonard systems and non-symmetric dual q-Krawtchouk polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "DUALPOLAR_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full verification pipeline on one instance.
    Verify(VerifyArgs),
    /// Write a table, graph or report for one instance.
    Emit(EmitArgs),
    /// Verify a list of instances.
    Sweep(SweepArgs),
    /// Write the edge list of a concrete dual polar graph.
    ExportGraph(ExportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// One of C, B, D, 2D, 2A-even, 2A-odd.
    #[arg(long, env = "DUALPOLAR_FAMILY")]
    pub family: FamilyTag,
    /// Prime power; absent means formal q.
    #[arg(long, env = "DUALPOLAR_Q", conflicts_with = "formal")]
    pub q: Option<u64>,
    /// Diameter.
    #[arg(long = "D", env = "DUALPOLAR_D")]
    pub d: usize,
    /// Work over Q(i)(q^{1/4}) with q an indeterminate.
    #[arg(long)]
    pub formal: bool,
    #[arg(long, env = "DUALPOLAR_MAX_VERTICES", default_value_t = 10_000)]
    pub max_vertices: usize,
    /// Seed for a random base vertex and clique instead of the standard ones.
    #[arg(long, env = "DUALPOLAR_SEED")]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, env = "DUALPOLAR_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "DUALPOLAR_FORMAT")]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, env = "DUALPOLAR_WHAT")]
    pub what: What,
    #[arg(long, env = "DUALPOLAR_FORMAT")]
    pub format: Option<Format>,
    #[arg(long, env = "DUALPOLAR_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Comma-separated instances such as `C@2:3` (concrete) or `2A-odd:4` (formal).
    #[arg(long, conflicts_with = "suite")]
    pub instances: Option<String>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, env = "DUALPOLAR_MAX_VERTICES", default_value_t = 10_000)]
    pub max_vertices: usize,
    #[arg(long, env = "DUALPOLAR_FORMAT")]
    pub format: Option<Format>,
    #[arg(long, env = "DUALPOLAR_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, env = "DUALPOLAR_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    EdgeList,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    EllPolys,
    ParamArrays,
    Graph,
    Orthogonality,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// `e` in {0, 1/2, 1, 3/2, 2} and `D` in {3, 4, 5}, formal q.
    Formal,
    /// The seven enumerated graphs.
    Concrete,
}

/// A family and diameter, with a prime power unless formal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub params: FamilyParams,
    pub q0: Option<u64>,
}

impl Instance {
    /// Rejects diameters below 3 and unusable fields.
    pub fn new(tag: FamilyTag, q0: Option<u64>, d: usize) -> Result<Self, CliError> {
        let params = FamilyParams::new(tag, d).map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(q0) = q0 {
            prime_power(q0).ok_or_else(|| CliError::Usage(GeometryError::NotPrimePower(q0).to_string()))?;
            if tag.is_hermitian() && params.q_to_e(q0).is_none() {
                return Err(CliError::Usage(GeometryError::HermitianNeedsSquare(q0).to_string()));
            }
        }
        Ok(Instance { params, q0 })
    }

    pub fn is_formal(&self) -> bool {
        self.q0.is_none()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q0 {
            Some(q0) => write!(f, "{}({},{})", self.params.tag, q0, self.params.d),
            None => write!(f, "{}(q,{})", self.params.tag, self.params.d),
        }
    }
}

impl FromStr for Instance {
    type Err = CliError;

    /// `FAMILY@Q:D` or `FAMILY:D`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::Usage(format!("cannot parse instance '{s}' (expected FAMILY@Q:D or FAMILY:D)"));
        let (head, d) = s.trim().rsplit_once(':').ok_or_else(bad)?;
        let d: usize = d.parse().map_err(|_| bad())?;
        let (tag, q0) = match head.split_once('@') {
            Some((t, q)) => (t, Some(q.parse::<u64>().map_err(|_| bad())?)),
            None => (head, None),
        };
        let tag: FamilyTag = tag.parse().map_err(|e: dualpolar::family::FamilyError| CliError::Usage(e.to_string()))?;
        Instance::new(tag, q0, d)
    }
}

/// Everything a single-instance command needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub instance: Instance,
    pub max_vertices: usize,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn formal(tag: FamilyTag, d: usize) -> Result<Self, CliError> {
        Ok(RunConfig { instance: Instance::new(tag, None, d)?, max_vertices: 10_000, seed: None })
    }

    pub fn concrete(tag: FamilyTag, q0: u64, d: usize) -> Result<Self, CliError> {
        Ok(RunConfig { instance: Instance::new(tag, Some(q0), d)?, max_vertices: 10_000, seed: None })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

impl TryFrom<&InstanceArgs> for RunConfig {
    type Error = CliError;

    fn try_from(a: &InstanceArgs) -> Result<Self, CliError> {
        let instance = Instance::new(a.family, if a.formal { None } else { a.q }, a.d)?;
        if instance.is_formal() && a.seed.is_some() {
            return Err(CliError::Usage("--seed needs a concrete instance (--q)".into()));
        }
        Ok(RunConfig { instance, max_vertices: a.max_vertices, seed: a.seed })
    }
}

/// The default sweep lists.
pub fn suite_instances(suite: Suite) -> Vec<Instance> {
    match suite {
        Suite::Formal => (0..=4u8)
            .flat_map(|e2| (3..=5).map(move |d| (FamilyTag::representative(e2).expect("e2 <= 4"), d)))
            .map(|(t, d)| Instance::new(t, None, d).expect("valid"))
            .collect(),
        Suite::Concrete => [
            (FamilyTag::C, 2, 3),
            (FamilyTag::C, 3, 3),
            (FamilyTag::B, 2, 3),
            (FamilyTag::D, 2, 3),
            (FamilyTag::D, 2, 4),
            (FamilyTag::TwoAOdd, 4, 3),
            (FamilyTag::TwoD, 2, 3),
        ]
        .into_iter()
        .map(|(t, q, d)| Instance::new(t, Some(q), d).expect("valid"))
        .collect(),
    }
}
