use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "irv-zones",
    version,
    about = "Instant-runoff voting on trees: elections, Kill, exclusion zones, distortion"
)]
struct Cli {
    /// Output format: human-readable text or a JSON document.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for scans and per-vertex Kill calls (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Seed for sampled configurations (recorded in the manifest).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Doc,
}

/// Where the tree comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TreeSource {
    /// Tree file.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Generator spec such as `path:9` or `bistar:20`.
    #[arg(long = "gen")]
    generator: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one election and print its trace.
    Elect {
        #[command(flatten)]
        source: TreeSource,
        /// Comma-separated candidate vertices.
        #[arg(long)]
        candidates: String,
        #[arg(long, default_value = "default")]
        policy: String,
    },
    /// Decide whether `u` can be forced to lose with opponents from `A`.
    Kill {
        #[command(flatten)]
        source: TreeSource,
        #[arg(short = 'u')]
        u: u32,
        /// Comma-separated allowed opponents (may be empty).
        #[arg(short = 'A', default_value = "", allow_hyphen_values = true)]
        allowed: String,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        check: bool,
    },
    /// Exclusion zones.
    Zone {
        #[command(flatten)]
        source: TreeSource,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        check: bool,
        /// Zone computations only support the default policy.
        #[arg(long, default_value = "default")]
        policy: String,
        #[command(subcommand)]
        op: ZoneOp,
    },
    /// Distortion over a family of candidate configurations.
    Distortion {
        #[command(flatten)]
        source: TreeSource,
        /// all | size:K | upto:K | explicit:1,5,9;2,3 | random:COUNT[:K|any][:SEED]
        #[arg(long, default_value = "all")]
        configs: String,
        #[arg(long, default_value = "default")]
        policy: String,
        /// Also write a tab-separated table with one row per configuration.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Print a generated tree in the tree file format.
    Gen {
        /// Generator spec such as `perfect_binary_tree:3`.
        spec: String,
    },
    /// Re-run the built-in example checks.
    Selftest,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ZoneOp {
    /// Check one candidate zone.
    Verify {
        /// Comma-separated vertices.
        zone: String,
    },
    /// Smallest zone.
    Min,
    /// All nonempty zones, smallest first.
    Enumerate,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Elect {
            source,
            candidates,
            policy,
        } => commands::elect(&ctx, &source, &candidates, &policy),
        Command::Kill {
            source,
            u,
            allowed,
            check,
        } => commands::kill(&ctx, &source, u, &allowed, check),
        Command::Zone {
            source,
            check,
            policy,
            op,
        } => commands::zone(&ctx, &source, &op, &policy, check),
        Command::Distortion {
            source,
            configs,
            policy,
            table,
        } => commands::distortion(&ctx, &source, &configs, &policy, table.as_deref()),
        Command::Gen { spec } => commands::generate(&ctx, &spec),
        Command::Selftest => commands::selftest(&ctx),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(CliError::Disagreement { output, message }) => {
            print!("{output}");
            eprintln!("check failed: {message}");
            ExitCode::from(3)
        }
    }
}
