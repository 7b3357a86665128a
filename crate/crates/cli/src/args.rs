use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "treepack",
    version,
    about = "Edge-disjoint packings of tree degree sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Options shared by every subcommand. Each may also come from `--config`.
#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// First degree sequence, comma separated (e.g. 2,2,1,1)
    #[arg(long, global = true)]
    pub d: Option<String>,
    /// Second degree sequence, comma separated
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Read the instance from a file, or `-` for stdin
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Vertex limit for exhaustive enumeration
    #[arg(long = "guard-n", global = true)]
    pub guard_n: Option<usize>,
    /// Worker threads for Monte Carlo estimation
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Samples per Monte Carlo batch
    #[arg(long, global = true)]
    pub batch: Option<u64>,
    /// TOML file with defaults for the options above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Erdős–Gallai test of D
    Graphical,
    /// Classify D as path, star, other-tree or not-tree
    Classify,
    /// Number of labeled trees realizing D
    CountTrees,
    /// List every labeled tree realizing D, in Prüfer-code order
    EnumTrees,
    /// Uniformly random tree realizing D
    RandomTree,
    /// Probability that edge (i, j) appears in a uniform realization of D
    EdgeProb {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Two edge-disjoint Hamiltonian paths of the complete graph
    HamPaths {
        #[arg(long)]
        n: usize,
    },
    /// Edge-disjoint caterpillars for D and F without common leaves
    PackCaterpillar,
    /// Decide whether tree sequences D and F pack
    Kundu,
    /// Edge-disjoint trees for D and F when every vertex is a leaf in one
    PackLeaves,
    /// Edge-disjoint trees for several rows with disjoint non-leaf sets
    PackMulti {
        /// A row of the degree matrix; repeat once per row
        #[arg(long = "row")]
        rows: Vec<String>,
    },
    /// Leaf partition, expected overlap and disjointness bound for D and F
    Analyze,
    /// Expected shared edges of independent uniform realizations
    ExpectedCommon,
    /// Monte Carlo sample size for success probability p
    SamplesNeeded {
        /// Probability as a fraction (1/4) or decimal
        #[arg(long)]
        p: String,
    },
    /// Estimate the number of edge-disjoint realization pairs
    Estimate,
    /// Draw an almost uniform edge-disjoint realization pair
    Sample,
    /// Count edge-disjoint realization pairs exhaustively
    ExactCount,
    /// Total variation distance between two distributions
    Tv {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
    },
    /// Bipartite instance to a simple-graph instance
    ReduceBipartite,
    /// Add a vertex dominating in D and isolated in F
    ReduceDominate,
    /// Add the two-vertex pendant gadget
    ReducePendant,
    /// Reduce to an instance whose D is a tree sequence
    ReduceTree,
    /// Exhaustively decide whether D and F have edge-disjoint realizations
    DecideBrute,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    d: Option<String>,
    f: Option<String>,
    input: Option<String>,
    format: Option<Format>,
    seed: Option<u64>,
    epsilon: Option<f64>,
    delta: Option<f64>,
    guard_n: Option<usize>,
    workers: Option<usize>,
    batch: Option<u64>,
}

/// Where the instance comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Flags {
        d: Option<String>,
        f: Option<String>,
    },
    Input(String),
}

/// Flags merged over the config file.
#[derive(Debug)]
pub struct Settings {
    pub source: Source,
    pub format: Format,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub guard_n: Option<usize>,
    pub workers: Option<usize>,
    pub batch: Option<u64>,
}

impl Settings {
    pub fn resolve(flags: CommonArgs) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => load_config(path)?,
            None => ConfigFile::default(),
        };
        let flag_sequences = flags.d.is_some() || flags.f.is_some();
        if flag_sequences && flags.input.is_some() {
            bail!("give either --d/--f or --input, not both");
        }
        let source = if let Some(input) = flags.input {
            Source::Input(input)
        } else if flag_sequences {
            Source::Flags {
                d: flags.d.or(file.d),
                f: flags.f.or(file.f),
            }
        } else if let Some(input) = file.input {
            if file.d.is_some() || file.f.is_some() {
                bail!("config gives both d/f and input");
            }
            Source::Input(input)
        } else {
            Source::Flags {
                d: file.d,
                f: file.f,
            }
        };
        Ok(Settings {
            source,
            format: flags.format.or(file.format).unwrap_or(Format::Text),
            seed: flags.seed.or(file.seed),
            epsilon: flags.epsilon.or(file.epsilon),
            delta: flags.delta.or(file.delta),
            guard_n: flags.guard_n.or(file.guard_n),
            workers: flags.workers.or(file.workers),
            batch: flags.batch.or(file.batch),
        })
    }

    pub fn seed(&self) -> Result<u64> {
        self.seed
            .context("this subcommand is randomized and needs --seed")
    }
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
}
