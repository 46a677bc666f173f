use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use splitlab::{commands, CliError};

/// Checks matroid polytope decompositions built from good partitions.
///
/// Exit codes: 0 all checks passed, 1 a check failed (witness in the
/// output), 2 usage, parse or precondition error.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Worker threads for parallel steps; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exchange check on a base family.
    Validate {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a partition, build its pieces and verify the decomposition.
    Decompose {
        #[arg(long, required_unless_present = "geometry", conflicts_with = "geometry")]
        matroid: Option<PathBuf>,
        /// Rank-3 point-line configuration instead of a base list.
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read (P2)(a) with the literal bounds a_1, a_2 at every cut.
        #[arg(long)]
        strict_p2a: bool,
    },
    /// Decompositions of U_{n,r} from partitions of n into t parts.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a decomposition along a direct sum with another matroid.
    Lift {
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate good t-partitions.
    Search {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        t: usize,
        /// Stop after examining this many (partition, split) pairs.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        strict_p2a: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the matroid of a point-line configuration and list the block
    /// partitions passing the geometric conditions.
    Geometry {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build()?;
    pool.install(|| match cli.command {
        Command::Validate { matroid, out } => commands::validate(&matroid, out),
        Command::Decompose { matroid, geometry, candidate, out, strict_p2a } => {
            commands::decompose(matroid.as_deref(), geometry.as_deref(), &candidate, out, strict_p2a)
        }
        Command::Uniform { n, r, t, out } => commands::uniform(n, r, t, out),
        Command::Lift { decomposition, matroid, out } => commands::lift(&decomposition, &matroid, out),
        Command::Search { matroid, t, budget, strict_p2a, out } => commands::search(&matroid, t, budget, strict_p2a, out),
        Command::Geometry { geometry, t, out } => commands::geometry(&geometry, t, out),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
