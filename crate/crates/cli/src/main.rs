//! `kvforge`: compute, check and solve from the command line.
//!
//! Exit status is 0 on success, 1 when a check fails (the degree report is
//! printed), 2 on malformed input.

mod commands;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug, Clone)]
#[command(name = "kvforge", version, about = "Exact KV, KRV and grt computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Opts {
    /// Truncation degree (default 6 when nothing is read from a file).
    #[arg(long = "N", global = true)]
    pub max_degree: Option<usize>,
    /// Number of generators or strands.
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,
    /// Solver gauge: zero or unit.
    #[arg(long, global = true, default_value = "zero")]
    pub gauge: String,
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// bch(x, y) as a Lie series.
    Bch,
    /// Lyndon basis with bracket forms.
    Lyndon,
    /// Divergence of a tangential derivation.
    Div,
    /// Jacobian J(exp u) of a tangential derivation, or of the automorphism in a kvsol, krv or kvgroup file.
    Jac,
    /// Checks both SolKV equations for a kvsol file.
    KvCheck,
    /// Solves the SolKV equations degree by degree.
    KvSolve,
    /// KRV membership of a krv file, or krv_2 membership of a tder file.
    KrvCheck,
    /// Inversion, hexagon and pentagon for a lie n=2 file.
    GrtCheck,
    /// Basis of grt_1 in each degree.
    GrtSolve,
    /// rho(psi) as a tangential derivation.
    Rho,
    /// Theta of automorphism data; `--bar` gives the inverse construction.
    Theta {
        #[arg(long)]
        bar: bool,
    },
    /// Automorphism data of a KRV element.
    ThetaInv,
    /// Bubble identity for a grt element.
    Bubble {
        /// Leave out one factor (1-4) of the product.
        #[arg(long)]
        omit: Option<usize>,
    },
    /// Glues the diagram `--with` into input `--slot` of `--in`.
    WdCompose {
        #[arg(long = "with")]
        with: PathBuf,
        #[arg(long)]
        slot: usize,
    },
    /// Runs a TOML job manifest.
    Job,
}

/// How a command ended, mapped to the exit status.
#[derive(Debug)]
pub enum Failure {
    /// A check failed or a precondition did not hold.
    Check(String),
    /// Unreadable or malformed input, or bad arguments.
    Input(String),
}

impl From<kvforge::Error> for Failure {
    fn from(e: kvforge::Error) -> Self {
        use kvforge::Error as E;
        match e {
            E::Precondition(_) | E::Infeasible { .. } | E::MissingDuflo => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("KVFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| Failure::Input(format!("KVFORGE_THREADS={v:?} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Job => job::run(&cli.opts),
        _ => commands::run(&cli.command, &cli.opts),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("kvforge: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("kvforge: {msg}");
            ExitCode::from(2)
        }
    }
}
