//! Command-line surface: `validate`, `certify`, `solve`, `generate`.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "ckp",
    version,
    about = "Certify cyclic Kannan-Pata contractive conditions on finite metric spaces, \
             solve for fixed points by Picard iteration, and generate test instances"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Instance file to read.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,

    /// Where to write the run report (for generate: the output directory).
    #[arg(short, long, global = true, alias = "out")]
    pub output: Option<PathBuf>,

    /// Tolerance override: certification tolerance for certify/solve,
    /// metric tolerance for validate. Defaults are scale-relative.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Size of the uniform ε-grid (overrides the instance's grid section).
    #[arg(long, global = true)]
    pub grid: Option<usize>,

    /// Generator seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Iteration cap for solve (default: point count + 1).
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,

    /// Print the machine-readable run report to stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the metric axioms and, when the sections are present, the
    /// cyclic representation. Exit 0 when everything passes.
    Validate,
    /// Exhaustively certify one contractive condition. Exit 0 when it holds.
    Certify {
        /// Which inequality to check.
        #[arg(long, value_enum)]
        condition: ConditionArg,
    },
    /// Certify the cyclic Kannan-Pata condition, run Picard iteration from
    /// every start, and check the fixed-point conclusions. Exit 0 when the
    /// certificate holds and all conclusions do too.
    Solve,
    /// Write seeded instances (and optionally search for instances
    /// separating the Kannan and Banach conditions).
    Generate {
        /// Generator config JSON mirroring the library config; flags
        /// override individual fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of points.
        #[arg(long)]
        n: Option<usize>,
        /// Number of sets in the cover.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long)]
        embed_dim: Option<usize>,
        /// Probability weight for overlapping set memberships, in [0, 1].
        #[arg(long)]
        overlap: Option<f64>,
        /// How many instances to emit (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Classify generated instances by which conditions hold and keep
        /// the separating ones.
        #[arg(long)]
        search_separating: bool,
        /// Instances to draw in search mode.
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
}

/// `--condition` values; these match the serialized certificate tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    /// Kannan inequality over all ordered pairs.
    Kannan,
    /// Kannan inequality over consecutive pairs of the partition.
    CyclicKannan,
    /// Cyclic Kannan-Pata inequality over consecutive pairs and the ε-grid.
    CkPata,
    /// Non-cyclic Kannan-Pata inequality (the m = 1 specialization).
    Cs,
    /// Pata's condition relative to the Banach form (β ≤ α enforced).
    Pata,
}

impl ConditionArg {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Kannan => "kannan",
            Self::CyclicKannan => "cyclic-kannan",
            Self::CkPata => "ck-pata",
            Self::Cs => "cs",
            Self::Pata => "pata",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(name = "euclidean_embed", alias = "euclidean-embed")]
    EuclideanEmbed,
    #[value(name = "random_repair", alias = "random-repair")]
    RandomRepair,
}

impl From<MethodArg> for ckp_core::GenMethod {
    fn from(arg: MethodArg) -> Self {
        match arg {
            MethodArg::EuclideanEmbed => Self::EuclideanEmbed,
            MethodArg::RandomRepair => Self::RandomRepair,
        }
    }
}
