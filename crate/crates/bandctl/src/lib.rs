//! `bandctl`: command-line front end for the confidence band solvers.
//!
//! Reads time series from CSV (one series per row), attaches a seed per
//! policy, and emits band or chain documents as JSON. Exit codes: 0 on
//! success, 1 on validation errors, 2 on internal errors.

pub mod ingest;
pub mod report;

use clap::{Args, Parser, Subcommand};
use confband::{
    enumerate_chain, exact_sumband, find_inf, find_sum, peel, resolve_k, solve_regband,
};
use ingest::{ingest_csv, IngestOptions, Ingested, SeedSpec};
use report::{BandDocument, ChainDocument, Normalizer, RunReport};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn from_validation(err: confband::Error) -> Self {
        match err {
            confband::Error::ResidualUnavailable => CliError::Internal(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Internal(msg) => f.write_str(msg),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "bandctl",
    version,
    about = "Confidence bands for sets of time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV, one series per row.
    input: PathBuf,
    /// Skip the first row (column headers).
    #[arg(long)]
    header: bool,
    /// Treat the first column as series labels.
    #[arg(long)]
    labels: bool,
    /// Seed policy: index:<i>, median, mean, or row-label:<name>.
    #[arg(long, default_value = "index:0")]
    seed: SeedSpec,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the full nested chain of regularized bands.
    Enum {
        #[command(flatten)]
        input: InputArgs,
        /// Also write the chain envelopes as CSV for plotting.
        #[arg(long)]
        envelope_csv: Option<PathBuf>,
    },
    /// Solve the regularized problem for a single alpha.
    Regband {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        alpha: f64,
    },
    /// Approximate minimum-area band of k series (sqrt(n)+1 guarantee).
    Sum {
        #[command(flatten)]
        input: InputArgs,
        /// Band size; a value in (0, 1) means floor(k * n).
        #[arg(long)]
        k: f64,
        /// Also run the peeling baseline and keep the smaller area.
        #[arg(long)]
        best_of: bool,
    },
    /// Approximate minimum-width band of k series (2-approximation).
    Inf {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: f64,
    },
    /// Peeling baseline: repeatedly drop the series whose removal
    /// shrinks the envelope area the most.
    Peel {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: f64,
    },
    /// Exact minimum-area band of k series by exhaustive search
    /// (small instances only).
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: f64,
    },
    /// Benchmark the approximations over one or more datasets.
    Bench {
        /// Input CSV files, one report row each.
        inputs: Vec<PathBuf>,
        #[arg(long)]
        header: bool,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value = "index:0")]
        seed: SeedSpec,
        /// Write the machine-readable CSV report here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Seed for any randomized scheduling; algorithms themselves are
        /// deterministic.
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{}", err);
                    0
                }
                _ => {
                    eprint!("{}", err);
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {}", msg);
            1
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {}", msg);
            2
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enum {
            input,
            envelope_csv,
        } => {
            let ing = load(&input)?;
            let chain = enumerate_chain(&ing.matrix).map_err(CliError::from_validation)?;
            let doc = ChainDocument::new(&chain, &ing.matrix, ing.seed_appended);
            emit(&input.output, report::to_json(&doc))?;
            if let Some(path) = envelope_csv {
                write_file(&path, report::envelope_csv(&chain, ing.matrix.position_count()))?;
            }
            Ok(())
        }
        Command::Regband { input, alpha } => {
            let ing = load(&input)?;
            let sol = solve_regband(&ing.matrix, alpha).map_err(CliError::from_validation)?;
            let norm = Normalizer::new(&ing.matrix);
            let mut doc =
                BandDocument::new("regband", &sol.band, &ing.matrix, ing.seed_appended, &norm);
            doc.alpha = Some(sol.alpha);
            doc.objective = Some(sol.objective);
            emit(&input.output, report::to_json(&doc))
        }
        Command::Sum { input, k, best_of } => {
            let ing = load(&input)?;
            let k = effective_k(k, &ing)?;
            let chain = enumerate_chain(&ing.matrix).map_err(CliError::from_validation)?;
            let sum = find_sum(&ing.matrix, k, &chain).map_err(CliError::from_validation)?;
            let (band, name) = if best_of {
                let peeled = peel(&ing.matrix, k).map_err(CliError::from_validation)?;
                if peeled.band.area < sum.band.area {
                    (peeled.band, "peel")
                } else {
                    (sum.band, "findsum")
                }
            } else {
                (sum.band, "findsum")
            };
            let norm = Normalizer::new(&ing.matrix);
            let doc = BandDocument::new(name, &band, &ing.matrix, ing.seed_appended, &norm);
            emit(&input.output, report::to_json(&doc))
        }
        Command::Inf { input, k } => {
            let ing = load(&input)?;
            let k = effective_k(k, &ing)?;
            let res = find_inf(&ing.matrix, k).map_err(CliError::from_validation)?;
            let norm = Normalizer::new(&ing.matrix);
            let doc =
                BandDocument::new("findinf", &res.band, &ing.matrix, ing.seed_appended, &norm);
            emit(&input.output, report::to_json(&doc))
        }
        Command::Peel { input, k } => {
            let ing = load(&input)?;
            let k = effective_k(k, &ing)?;
            let res = peel(&ing.matrix, k).map_err(CliError::from_validation)?;
            let norm = Normalizer::new(&ing.matrix);
            let doc = BandDocument::new("peel", &res.band, &ing.matrix, ing.seed_appended, &norm);
            emit(&input.output, report::to_json(&doc))
        }
        Command::Oracle { input, k } => {
            let ing = load(&input)?;
            let k = effective_k(k, &ing)?;
            let band = exact_sumband(&ing.matrix, k).map_err(CliError::from_validation)?;
            let norm = Normalizer::new(&ing.matrix);
            let doc = BandDocument::new("oracle", &band, &ing.matrix, ing.seed_appended, &norm);
            emit(&input.output, report::to_json(&doc))
        }
        Command::Bench {
            inputs,
            header,
            labels,
            seed,
            output,
            rng_seed: _,
        } => {
            if inputs.is_empty() {
                return Err(CliError::validation("bench needs at least one dataset"));
            }
            let options = IngestOptions {
                header,
                labels,
                seed,
            };
            let rows = bench(&inputs, &options)?;
            print!("{}", report::bench_table(&rows));
            if let Some(path) = output {
                write_file(&path, report::bench_csv(&rows))?;
            }
            Ok(())
        }
    }
}

fn load(input: &InputArgs) -> Result<Ingested, CliError> {
    ingest_csv(
        &input.input,
        &IngestOptions {
            header: input.header,
            labels: input.labels,
            seed: input.seed.clone(),
        },
    )
}

/// Resolves `--k` against the number of series in the file; an appended
/// median/mean seed bumps the count by one so the requested coverage of
/// the original data is preserved.
fn effective_k(k: f64, ing: &Ingested) -> Result<usize, CliError> {
    let base = resolve_k(k, ing.original_count).map_err(CliError::from_validation)?;
    Ok(if ing.seed_appended { base + 1 } else { base })
}

fn emit(output: &Option<PathBuf>, content: String) -> Result<(), CliError> {
    match output {
        Some(path) => write_file(path, content),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: String) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {}", path.display(), e)))
}

/// Runs every dataset on its own thread; rows come back in input order.
fn bench(inputs: &[PathBuf], options: &IngestOptions) -> Result<Vec<RunReport>, CliError> {
    let results: Vec<Result<RunReport, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|path| scope.spawn(move || bench_one(path, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::Internal("benchmark thread panicked".into())))
            })
            .collect()
    });
    results.into_iter().collect()
}

fn bench_one(path: &Path, options: &IngestOptions) -> Result<RunReport, CliError> {
    let ing = ingest_csv(path, options)?;
    let matrix = &ing.matrix;
    let n = matrix.series_count();
    let norm = Normalizer::new(matrix);

    let start = Instant::now();
    let chain = enumerate_chain(matrix).map_err(CliError::from_validation)?;
    let enum_secs = start.elapsed().as_secs_f64();

    let ks = [
        bench_k(0.90, &ing)?,
        bench_k(0.95, &ing)?,
    ];
    let mut row = RunReport {
        dataset: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string()),
        n,
        m: matrix.position_count(),
        chain_len: chain.len(),
        b1: chain
            .bands
            .iter()
            .find(|b| b.members.len() > 1)
            .map(|b| b.members.len())
            .unwrap_or(n),
        enum_secs,
        findsum_secs: 0.0,
        peel_secs: 0.0,
        findinf_secs: 0.0,
        ks,
        findsum_area: [0.0; 2],
        peel_area: [0.0; 2],
        findinf_area: [0.0; 2],
        findsum_width: [0.0; 2],
        peel_width: [0.0; 2],
        findinf_width: [0.0; 2],
    };
    for (slot, &k) in ks.iter().enumerate() {
        let start = Instant::now();
        let sum = find_sum(matrix, k, &chain).map_err(CliError::from_validation)?;
        row.findsum_secs += start.elapsed().as_secs_f64();
        row.findsum_area[slot] = norm.area(sum.band.area);
        row.findsum_width[slot] = norm.width(sum.band.width);

        let start = Instant::now();
        let peeled = peel(matrix, k).map_err(CliError::from_validation)?;
        row.peel_secs += start.elapsed().as_secs_f64();
        row.peel_area[slot] = norm.area(peeled.band.area);
        row.peel_width[slot] = norm.width(peeled.band.width);

        let start = Instant::now();
        let inf = find_inf(matrix, k).map_err(CliError::from_validation)?;
        row.findinf_secs += start.elapsed().as_secs_f64();
        row.findinf_area[slot] = norm.area(inf.band.area);
        row.findinf_width[slot] = norm.width(inf.band.width);
    }
    Ok(row)
}

fn bench_k(fraction: f64, ing: &Ingested) -> Result<usize, CliError> {
    let base = ((fraction * ing.original_count as f64).floor() as usize).max(1);
    let k = if ing.seed_appended { base + 1 } else { base };
    Ok(k.min(ing.matrix.series_count()))
}
