use std::path::PathBuf;
use std::process::ExitCode;

use agmod_cli::{
    cmd_analyze, cmd_corpus, cmd_graph, cmd_localize, parse_gens, CorpusArgs, LocalizeAt, EXIT_OK, EXIT_USAGE,
};
use agmod_core::{CorpusSpec, Limits};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// Annihilating-submodule graphs of finite modules.
#[derive(Parser)]
#[command(name = "agmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full JSON report for one instance.
    Analyze {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        localize: LocalizeFlags,
    },
    /// DOT text for AG(M), or AG*(M) with --star.
    Graph {
        spec: PathBuf,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Localization summary and AG invariants before and after.
    Localize {
        spec: PathBuf,
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        at_min_primes: bool,
        /// Generators of S, e.g. `3,5` or `(1,0),(0,3)`.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the theorem predicates over a generated corpus.
    Corpus {
        #[arg(long, default_value_t = 36)]
        max_ring: u64,
        #[arg(long, default_value_t = 128)]
        max_module: usize,
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Exit 0 rather than 3 when some predicates were skipped.
        #[arg(long)]
        allow_skips: bool,
    },
}

#[derive(Args)]
struct LocalizeFlags {
    #[arg(long, conflicts_with = "localize_gens")]
    localize_at_min_primes: bool,
    /// Generators of S, e.g. `3,5` or `(1,0),(0,3)`.
    #[arg(long)]
    localize_gens: Option<String>,
}

fn localize_at(at_min_primes: bool, gens: Option<&str>) -> agmod_cli::CliResult<Option<LocalizeAt>> {
    match gens {
        Some(text) => Ok(Some(LocalizeAt::Gens(parse_gens(text)?))),
        None if at_min_primes => Ok(Some(LocalizeAt::MinPrimes)),
        None => Ok(None),
    }
}

fn run(cli: Cli) -> agmod_cli::CliResult<i32> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Analyze { spec, out, localize } => {
            let at = localize_at(localize.localize_at_min_primes, localize.localize_gens.as_deref())?;
            cmd_analyze(&spec, at, out.as_deref(), &limits)
        }
        Command::Graph { spec, star, dot } => cmd_graph(&spec, star, dot.as_deref(), &limits),
        Command::Localize { spec, at_min_primes, gens, out } => {
            let at = localize_at(at_min_primes, gens.as_deref())?.expect("clap requires one of the flags");
            cmd_localize(&spec, at, out.as_deref(), &limits)
        }
        Command::Corpus { max_ring, max_module, theorems, out, jobs, allow_skips } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let spec = CorpusSpec { max_ring_card: max_ring, max_module_card: max_module, ..CorpusSpec::default() };
            cmd_corpus(&CorpusArgs { spec, theorems, out, jobs, allow_skips }, &limits)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
