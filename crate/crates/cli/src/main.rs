//! `formality`: generate triangulations, analyze them, check cohomology
//! summaries and search for formal discrete metrics.
//!
//! Exit codes: 0 success, 1 an obstruction fired, 2 usage or input error,
//! 3 numerical failure.

mod cache;
mod pipeline;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use formality_core::formality::{search_formal_weights, trace_csv, SearchConfig, SearchInit};
use formality_core::hodge::{MetricWeights, DEFAULT_TOLERANCE};
use formality_core::io::{canonical_json, WeightsFile};
use formality_core::obstruction::{check_obstructions, CohomologySummary, Verdict};
use formality_core::zoo::ZooId;
use formality_core::{Error, SimplicialComplex};
use serde::Serialize;

use crate::cache::Cache;
use crate::pipeline::{error_code, Analysis, Stages};

#[derive(Parser)]
#[command(
    name = "formality",
    version,
    about = "Discrete Hodge theory and formality obstructions on triangulated manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the canonical JSON file of a generated or bundled complex.
    Generate {
        /// sphere:N, torus:N, surface:G, product:A,B, connsum:A,B, data:NAME or file:PATH
        id: String,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the homology, Hodge, cup, formality and obstruction stages.
    Analyze(AnalyzeArgs),
    /// Evaluate the obstruction rules on a cohomology summary file.
    Check {
        summary: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Coordinate search over log-weights for a minimal formality residual.
    Search(SearchArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Complex file, or a generator identifier such as torus:2.
    complex: String,
    /// Weights file; unit weights when omitted.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Betti numbers only (always computed).
    #[arg(long)]
    betti: bool,
    #[arg(long)]
    hodge: bool,
    #[arg(long)]
    formality: bool,
    #[arg(long)]
    obstructions: bool,
    /// Every stage; the default when no stage flag is given.
    #[arg(long)]
    all: bool,
    /// Harmonic nullspace tolerance relative to the largest eigenvalue.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Omit wall-clock timings so the report is byte-stable.
    #[arg(long)]
    no_timings: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Unit,
    Random,
}

#[derive(Args)]
struct SearchArgs {
    /// Complex file, or a generator identifier such as torus:2.
    complex: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of coordinate sweeps.
    #[arg(long, default_value_t = 10)]
    max_iterations: usize,
    /// Stop once a sweep improves the aggregate by less than this.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Initial log-space step.
    #[arg(long, default_value_t = 0.5)]
    step: f64,
    #[arg(long, default_value_t = 1e-3)]
    min_step: f64,
    /// Comma-separated degrees whose weights may move; all when omitted.
    #[arg(long, value_delimiter = ',')]
    free_degrees: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "unit")]
    init: InitArg,
    /// Where to write the best weights.
    #[arg(long)]
    weights_out: Option<PathBuf>,
    /// Where to write the `iteration,aggregate` trace.
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self { code: error_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: 2, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// An existing file is read as a complex file; anything else is parsed as
/// a generator identifier.
fn load_complex(spec: &str) -> Result<SimplicialComplex, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(SimplicialComplex::from_json(&read(path)?)?);
    }
    Ok(spec.parse::<ZooId>()?.build()?)
}

fn generate(id: &str, output: Option<&Path>) -> Result<u8, Failure> {
    let k = id.parse::<ZooId>()?.build()?;
    emit(&k.to_json(), output)?;
    Ok(0)
}

fn analyze(a: &AnalyzeArgs) -> Result<u8, Failure> {
    let k = load_complex(&a.complex)?;
    let (weights, label, unit) = match &a.weights {
        Some(p) => {
            let file = WeightsFile::parse(&read(p)?)?;
            let w = file.to_weights(&k)?;
            let unit = w == MetricWeights::unit(&k);
            (w, format!("file:{}", file.name), unit)
        }
        None => (MetricWeights::unit(&k), "unit".to_owned(), true),
    };
    if !(a.tolerance > 0.0 && a.tolerance < 1.0) {
        return Err(Failure { code: 2, message: format!("tolerance must lie in (0, 1), got {}", a.tolerance) });
    }
    let any = a.hodge || a.formality || a.obstructions || a.betti;
    let all = a.all || !any;
    let stages = Stages { hodge: all || a.hodge, formality: all || a.formality, obstructions: all || a.obstructions };
    let analysis = Analysis {
        complex: &k,
        weights: &weights,
        weights_label: label,
        unit_weights: unit,
        tolerance: a.tolerance,
        stages,
        cache: Cache::from_env(&k),
    };
    let mut report = analysis.run();
    if a.no_timings {
        report.timings.clear();
    }
    for e in &report.errors {
        eprintln!("error in {} stage: {}", e.stage, e.message);
    }
    emit(&canonical_json(&report), a.output.as_deref())?;
    Ok(report.exit_code())
}

fn check(summary: &Path, output: Option<&Path>) -> Result<u8, Failure> {
    let s = CohomologySummary::from_json(&read(summary)?)?;
    let report = check_obstructions(&s)?;
    emit(&canonical_json(&report), output)?;
    Ok(if report.verdict == Verdict::Obstructed { 1 } else { 0 })
}

#[derive(Serialize)]
struct SearchSummary {
    name: String,
    seed: u64,
    initial: f64,
    r#final: f64,
    sweeps: usize,
    evaluations: usize,
}

fn search(a: &SearchArgs) -> Result<u8, Failure> {
    let k = load_complex(&a.complex)?;
    let cfg = SearchConfig {
        max_iterations: a.max_iterations,
        tolerance: a.tolerance,
        step: a.step,
        min_step: a.min_step,
        seed: a.seed,
        free_degrees: a.free_degrees.clone(),
        init: match a.init {
            InitArg::Unit => SearchInit::Unit,
            InitArg::Random => SearchInit::Random,
        },
    };
    cfg.validate(&k).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    let out = search_formal_weights(&k, &cfg)?;
    if let Some(p) = &a.weights_out {
        emit(&WeightsFile::new(k.name(), &out.weights).to_json(), Some(p))?;
    }
    if let Some(p) = &a.trace_out {
        emit(&trace_csv(&out.trace), Some(p))?;
    }
    let summary = SearchSummary {
        name: k.name().to_owned(),
        seed: a.seed,
        initial: out.trace[0],
        r#final: *out.trace.last().expect("trace is never empty"),
        sweeps: out.trace.len() - 1,
        evaluations: out.evaluations,
    };
    emit(&canonical_json(&summary), None)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate { id, output } => generate(id, output.as_deref()),
        Command::Analyze(a) => analyze(a),
        Command::Check { summary, output } => check(summary, output.as_deref()),
        Command::Search(a) => search(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
