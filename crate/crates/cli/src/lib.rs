//! Command implementations behind the `agmod` binary.

pub mod error;
pub mod report;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use agmod_core::{build_ag, build_ag_star, generate_corpus, run_suite, to_dot, CorpusSpec, Lattice, Limits};

pub use error::{CliError, CliResult, EXIT_INTERNAL, EXIT_OK, EXIT_SKIP, EXIT_USAGE, EXIT_VIOLATION};
pub use report::{analyze, localize_report, AnalyzeReport, CorpusReport, LocalizeReport};
pub use spec::{parse_gens, AnalysisOptions, InstanceSpec, LocalizeAt};

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

/// Merges command-line localization flags into the spec options.
pub fn apply_localize_flags(spec: &mut InstanceSpec, at: Option<LocalizeAt>) -> CliResult<Option<LocalizeAt>> {
    match at {
        Some(LocalizeAt::MinPrimes) => {
            spec.options.localize_at_min_primes = true;
            spec.options.localize_gens = None;
        }
        Some(LocalizeAt::Gens(gens)) => {
            spec.options.localize_at_min_primes = false;
            spec.options.localize_gens = Some(gens);
        }
        None => {}
    }
    spec.options.localize_at()
}

pub fn cmd_analyze(spec_path: &Path, at: Option<LocalizeAt>, out: Option<&Path>, limits: &Limits) -> CliResult<i32> {
    let mut spec = InstanceSpec::read(spec_path)?;
    let at = apply_localize_flags(&mut spec, at)?;
    let report = analyze(&spec, at.as_ref(), limits)?;
    emit(&to_json(&report), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_graph(spec_path: &Path, star: bool, dot: Option<&Path>, limits: &Limits) -> CliResult<i32> {
    let spec = InstanceSpec::read(spec_path)?;
    let lattice = Lattice::enumerate(spec.to_module()?, limits)?;
    let graph = if star { build_ag_star(&lattice) } else { build_ag(&lattice) };
    emit(&to_dot(&graph, &lattice), dot)?;
    Ok(EXIT_OK)
}

pub fn cmd_localize(spec_path: &Path, at: LocalizeAt, out: Option<&Path>, limits: &Limits) -> CliResult<i32> {
    let mut spec = InstanceSpec::read(spec_path)?;
    let at = apply_localize_flags(&mut spec, Some(at))?.expect("flag given");
    let report = localize_report(&spec, &at, limits)?;
    emit(&to_json(&report), out)?;
    Ok(EXIT_OK)
}

pub struct CorpusArgs {
    pub spec: CorpusSpec,
    pub theorems: Vec<String>,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub allow_skips: bool,
}

/// Runs the suite; violations take precedence over skips in the exit code.
pub fn cmd_corpus(args: &CorpusArgs, limits: &Limits) -> CliResult<i32> {
    let corpus = generate_corpus(&args.spec);
    let theorems: Vec<&str> = if args.theorems.is_empty() {
        agmod_core::theorems::theorem_ids()
    } else {
        args.theorems.iter().map(String::as_str).collect()
    };
    let suite = run_suite(&corpus, &theorems, limits, args.jobs)?;
    eprintln!(
        "{} instances, {} theorems: {} violations, {} skipped",
        suite.instances,
        suite.theorems.len(),
        suite.violations,
        suite.skipped
    );
    for failure in suite.failures() {
        eprintln!("FAIL {} on {}", failure.theorem_id, failure.instance_id);
    }
    let code = if suite.violations > 0 {
        EXIT_VIOLATION
    } else if suite.skipped > 0 && !args.allow_skips {
        EXIT_SKIP
    } else {
        EXIT_OK
    };
    let report = CorpusReport { schema: spec::SCHEMA, corpus: args.spec, suite };
    emit(&to_json(&report), args.out.as_deref())?;
    Ok(code)
}
