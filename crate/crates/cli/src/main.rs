//! `braidlab` command-line interface.
//!
//! Human-readable results go to stdout; `--out` receives the machine-readable
//! JSON report, written atomically. Exit status: 0 pass, 1 analytic failure,
//! 2 usage or input error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{positive, RunConfig, Tols};

#[derive(Parser, Debug)]
#[command(name = "braidlab", version, about = "Braid group representations, leakage and qudit limits")]
pub struct Cli {
    /// TOML file with defaults; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every randomized search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report here (atomically).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_relation: Option<f64>,
    #[arg(long, global = true)]
    tol_unitarity: Option<f64>,
    /// Max-norm distance for identifying matrices during enumeration.
    #[arg(long, global = true)]
    tol_dedup: Option<f64>,
    /// Residual below which a numeric or closed-form solve counts as solved.
    #[arg(long, global = true)]
    tol_solver: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, check, evaluate and compare representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Bridge solving, θ scans and leakage enumeration.
    #[command(subcommand)]
    Leakage(LeakageCmd),
    /// N(d) bounds, universality classification and image growth.
    #[command(subcommand)]
    Limits(LimitsCmd),
}

/// A representation given either as a spec string or a file.
#[derive(Args, Debug, Clone)]
pub struct RepSource {
    /// Spec such as `eta:1/4pi`, `jones:r=5:-`, `ising6`, `eta:3/10pi+character:3/10pi`.
    #[arg(long = "rep")]
    pub spec: Option<String>,
    /// Representation file written by `rep build`.
    #[arg(long = "in")]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Build a catalog representation and verify its relations.
    Build {
        /// Full spec; alternatively use --family with its parameters.
        #[arg(long, conflicts_with = "family")]
        spec: Option<String>,
        /// eta, jones, character, burau, standard or ising.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        /// Jones sign, + or -.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        /// η on four strands with τ₃ = conj(τ₁).
        #[arg(long)]
        conj: bool,
        /// Burau: take this composition factor (1 = reduced).
        #[arg(long)]
        reduce: Option<usize>,
        /// Burau: unitarize the result.
        #[arg(long)]
        unitary: bool,
    },
    /// Re-verify the relations of a representation file.
    Check {
        #[command(flatten)]
        source: RepSource,
    },
    /// Evaluate a braid word.
    Eval {
        #[command(flatten)]
        source: RepSource,
        /// Signed generator indices, e.g. "1 2 -1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Projective equivalence of two representations.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LeakageCmd {
    /// Solve for the bridge generator of a two-qudit layout.
    Solve {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// closed, numeric or auto (closed form for qubit pairs, else numeric).
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Closed-form bridge residual across θ for η(θ) ⊗ η(θ).
    Scan {
        /// Only eta3x3 is supported.
        #[arg(long, default_value = "eta3x3")]
        family: String,
        /// Minimum number of grid points.
        #[arg(long)]
        grid: Option<usize>,
        /// Explicit comma-separated θ values instead of a grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<String>,
    },
    /// Enumerate a ball of the image and classify leakage.
    Enum {
        #[command(flatten)]
        source: RepSource,
        /// parity-even, parity-odd, left-charge[:K] or block:i,j,...
        #[arg(long)]
        proj: String,
        #[arg(long)]
        maxlen: Option<usize>,
        /// Letters acting inside a single qudit, e.g. 1,2,4,5.
        #[arg(long, value_delimiter = ',')]
        in_qudit: Vec<i32>,
        /// Include every element in the JSON report.
        #[arg(long)]
        entries: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum LimitsCmd {
    /// N(d), or the crude arrangement bound for given multiplicities.
    Bound {
        #[arg(long)]
        d: Option<usize>,
        /// Eigenvalue multiplicities, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
    },
    /// Universality class of η(θ), or of q = e^{iφ} directly.
    Classify {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "q")]
        theta: Option<String>,
        /// Angle φ of q.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Jones level: q = e^{2πi/r}.
        #[arg(long, conflicts_with_all = ["theta", "q"])]
        r: Option<u32>,
    },
    /// Ball growth of the image.
    Growth {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        maxlen: Option<usize>,
        /// Deduplicate exactly instead of up to global phase.
        #[arg(long)]
        linear: bool,
    },
}

/// Flags merged with the config file.
pub struct Ctx {
    pub tols: Tols,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub config: RunConfig,
}

pub enum Failure {
    /// Analytic failure: the computation ran and the answer is negative.
    Analytic,
    Usage(String),
}

impl From<braidlab::Error> for Failure {
    fn from(e: braidlab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

fn context(cli: &Cli) -> Result<Ctx, String> {
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let t = &config.tolerances;
    let tols = Tols {
        relation: positive("--tol-relation", cli.tol_relation.or(t.relation).unwrap_or(1e-9))?,
        unitarity: positive("--tol-unitarity", cli.tol_unitarity.or(t.unitarity).unwrap_or(1e-9))?,
        dedup: positive("--tol-dedup", cli.tol_dedup.or(t.dedup).unwrap_or(braidlab::ball::DEFAULT_EPSILON))?,
        solver: positive("--tol-solver", cli.tol_solver.or(t.solver).unwrap_or(braidlab::leakage::DEFAULT_BRIDGE_TOL))?,
    };
    Ok(Ctx { tols, seed: cli.seed.or(config.seed).unwrap_or(0), out: cli.out.clone().or(config.out.clone()), config })
}

fn init_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("BRAIDLAB_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("BRAIDLAB_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            return Err("BRAIDLAB_THREADS must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<(), Failure> {
        init_threads()?;
        let ctx = context(&cli)?;
        match &cli.command {
            Command::Rep(c) => commands::rep(c, &ctx),
            Command::Leakage(c) => commands::leakage(c, &ctx),
            Command::Limits(c) => commands::limits(c, &ctx),
        }
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Analytic) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
