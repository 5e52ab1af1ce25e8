//! Command-line interface: `test`, `table`, `power` and `ingest` subcommands
//! over the goodness-of-fit library. Exit codes: 0 = null not rejected (or
//! non-test command succeeded), 1 = null rejected, 2 = usage or data error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpdgof::gof::{self, NegativeTestOptions, ResampleScheme, Sidedness, TestReport};
use gpdgof::{estimate, montecarlo, AltSpec, Decision, Sample, TailPolicy};
use gpdgof_cli::ingest::{self, Dataset, DatasetBody};
use gpdgof_cli::report::{DatasetSummary, RunReport};
use rand::RngCore;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gpdgof",
    about = "Goodness-of-fit tests for the generalized Pareto distribution",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a goodness-of-fit test on a data set.
    Test(TestArgs),
    /// Simulate a grid of critical values and write it as CSV.
    Table(TableArgs),
    /// Estimate the power of the test against alternative distributions.
    Power(PowerArgs),
    /// Parse a data set and print summary statistics and fitted parameters.
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Auto,
    Negative,
    Positive,
    Censored,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct TestArgs {
    /// Bundled data set name (`ozone`, `bilbao`) or path to a CSV file.
    #[arg(long)]
    data: String,
    /// Keep observations above this threshold and test their excesses.
    #[arg(long)]
    threshold: Option<f64>,
    /// Which branch to run. `auto` runs negative first, then positive, and
    /// rejects overall only when both branches reject.
    #[arg(long, value_enum, default_value = "auto")]
    case: CaseArg,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap replications.
    #[arg(long, short = 'b', default_value_t = 10_000)]
    bootstrap: usize,
    /// Master seed; drawn at random (and reported) when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Tail order statistics for the nonnegative-shape estimator
    /// (default: ceil(0.2 n)).
    #[arg(long)]
    k_upper: Option<usize>,
    /// Resample from the fitted distribution instead of the data.
    #[arg(long)]
    parametric: bool,
    /// Compare absolute statistics against the bootstrap quantiles.
    #[arg(long)]
    two_sided: bool,
    /// Clamp zero censoring weights at 1/(2n) instead of failing.
    #[arg(long)]
    floor_weights: bool,
}

#[derive(Args)]
struct TableArgs {
    /// `negative` or `positive` shape grid.
    #[arg(long, value_enum)]
    case: TableCase,
    /// Comma-separated shape values (default: the published grid).
    #[arg(long, value_delimiter = ',')]
    betas: Option<Vec<f64>>,
    /// Comma-separated sample sizes (default: 20,30,50,70,100).
    #[arg(long, value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Monte Carlo replications per cell.
    #[arg(long, short = 'R', default_value_t = 10_000)]
    replications: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableCase {
    Negative,
    Positive,
}

#[derive(Args)]
struct PowerArgs {
    /// Alternative family: beta, weibull, gamma, gen-gamma, abs-normal,
    /// chi-square, abs-gumbel, gpd. Omit to run the built-in suite.
    #[arg(long)]
    family: Option<String>,
    /// Family parameters, comma separated (for example `5,5`).
    #[arg(long, value_delimiter = ',')]
    params: Option<Vec<f64>>,
    /// Sample size per replication.
    #[arg(long)]
    n: Option<usize>,
    /// Null shape the test is calibrated against (sign picks the branch).
    #[arg(long)]
    beta_case: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, short = 'R', default_value_t = 1000)]
    replications: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Built-in suite: `null-cases` (exponential and uniform columns) or
    /// `extended` (the wider alternative list).
    #[arg(long, conflicts_with_all = ["family", "params"])]
    suite: Option<String>,
}

#[derive(Args)]
struct IngestArgs {
    /// Bundled data set name or path to a CSV file.
    #[arg(long)]
    data: String,
    /// Keep observations above this threshold and summarize their excesses.
    #[arg(long)]
    threshold: Option<f64>,
}

/// Errors that terminate with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Test(args) => cmd_test(args),
        Command::Table(args) => cmd_table(args).map(|_| Decision::FailToReject),
        Command::Power(args) => cmd_power(args).map(|_| Decision::FailToReject),
        Command::Ingest(args) => cmd_ingest(args).map(|_| Decision::FailToReject),
    };
    match result {
        Ok(Decision::FailToReject) => ExitCode::from(0),
        Ok(Decision::Reject) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Cap the worker pool from GPDGOF_THREADS when set.
fn configure_threads() {
    if let Ok(value) = std::env::var("GPDGOF_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> (u64, bool) {
    match seed {
        Some(s) => (s, false),
        None => (rand::thread_rng().next_u64(), true),
    }
}

fn load_complete(
    source: &str,
    threshold: Option<f64>,
) -> Result<(Dataset, Sample), UsageError> {
    let dataset = ingest::load(source).map_err(|e| UsageError(e.to_string()))?;
    let sample = match &dataset.body {
        DatasetBody::Complete(s) => s.clone(),
        DatasetBody::Censored(_) => {
            return Err(UsageError(format!(
                "{source} holds censored records; use --case censored without --threshold"
            )))
        }
    };
    let sample = match threshold {
        Some(t) => ingest::apply_threshold(&sample, t).map_err(|e| UsageError(e.to_string()))?,
        None => sample,
    };
    if sample.len() < 3 {
        return Err(UsageError(format!(
            "need at least 3 observations, have {}",
            sample.len()
        )));
    }
    Ok((dataset, sample))
}

fn cmd_test(args: TestArgs) -> Result<Decision, UsageError> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(UsageError(format!(
            "--alpha must lie in (0,1), got {}",
            args.alpha
        )));
    }
    let (seed, seed_was_drawn) = resolve_seed(args.seed);
    let policy = if args.floor_weights {
        TailPolicy::Floor
    } else {
        TailPolicy::Error
    };

    let mut reports: Vec<TestReport> = Vec::new();
    let summary;

    if args.case == CaseArg::Censored {
        let dataset = ingest::load(&args.data).map_err(|e| UsageError(e.to_string()))?;
        let censored = match &dataset.body {
            DatasetBody::Censored(c) => c.clone(),
            DatasetBody::Complete(_) => {
                return Err(UsageError(format!(
                    "{} holds complete data; the censored case needs a `time,delta` file",
                    args.data
                )))
            }
        };
        if args.threshold.is_some() {
            return Err(UsageError(
                "--threshold applies to complete data only".to_string(),
            ));
        }
        summary = DatasetSummary {
            name: dataset.name.clone(),
            sha256: dataset.digest.clone(),
            n: censored.len(),
            threshold: None,
        };
        reports.push(
            gof::censored_test(&censored, args.alpha, policy)
                .map_err(|e| UsageError(e.to_string()))?,
        );
    } else {
        let (dataset, sample) = load_complete(&args.data, args.threshold)?;
        summary = DatasetSummary {
            name: dataset.name.clone(),
            sha256: dataset.digest.clone(),
            n: sample.len(),
            threshold: args.threshold,
        };
        let negative_opts = NegativeTestOptions {
            scheme: if args.parametric {
                ResampleScheme::Parametric
            } else {
                ResampleScheme::Nonparametric
            },
            sidedness: if args.two_sided {
                Sidedness::TwoSided
            } else {
                Sidedness::UpperTail
            },
        };
        let k_upper = args.k_upper.unwrap_or_else(|| estimate::aml_default_k(sample.len()));
        if args.case == CaseArg::Auto || args.case == CaseArg::Negative {
            reports.push(
                gof::test_negative_with(&sample, args.alpha, args.bootstrap, seed, negative_opts)
                    .map_err(|e| UsageError(e.to_string()))?,
            );
        }
        if args.case == CaseArg::Auto || args.case == CaseArg::Positive {
            reports.push(
                gof::test_positive_with(&sample, args.alpha, args.bootstrap, seed ^ 1, k_upper)
                    .map_err(|e| UsageError(e.to_string()))?,
            );
        }
    }

    let run = RunReport::new(summary, reports);
    match args.format {
        FormatArg::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&run).expect("report serializes")
            );
        }
        FormatArg::Text => print_text_report(&run, seed, seed_was_drawn),
    }
    Ok(run.overall)
}

fn print_text_report(run: &RunReport, seed: u64, seed_was_drawn: bool) {
    println!(
        "dataset {} (n = {}, sha256 {}...)",
        run.dataset.name,
        run.dataset.n,
        &run.dataset.sha256[..12]
    );
    if let Some(t) = run.dataset.threshold {
        println!("threshold {t}: testing excesses above it");
    }
    if seed_was_drawn {
        println!("seed (drawn): {seed}");
    }
    for report in &run.reports {
        let case = match report.case {
            gof::TestCase::NegativeBeta => "negative-shape branch",
            gof::TestCase::PositiveBeta => "nonnegative-shape branch",
            gof::TestCase::CensoredNegativeBeta => "censored negative-shape branch",
        };
        println!("-- {case} --");
        println!(
            "  estimates: theta = {:.5}, beta = {:.5}{}",
            report.estimates.theta,
            report.estimates.beta,
            report
                .estimates
                .kappa
                .map(|k| format!(", kappa = {k:.5}"))
                .unwrap_or_default()
        );
        println!("  statistic: {:.6}", report.statistic);
        if let Some(cv) = report.critical_values {
            println!(
                "  critical values: C1(0.05) = {:.5}, C2(0.01) = {:.5}, at alpha = {:.5}",
                cv.c1, cv.c2, cv.at_alpha
            );
        }
        if let Some(z) = report.z_threshold {
            println!("  z threshold: {z:.4}");
        }
        if let Some(p) = report.p_value {
            println!("  p-value: {p:.4}");
        }
        println!(
            "  decision at alpha = {}: {}",
            report.alpha,
            match report.decision {
                Decision::Reject => "Reject",
                Decision::FailToReject => "FailToReject",
            }
        );
    }
    println!(
        "overall: {}",
        match run.overall {
            Decision::Reject => "Reject",
            Decision::FailToReject => "FailToReject",
        }
    );
}

fn cmd_table(args: TableArgs) -> Result<(), UsageError> {
    let (seed, drawn) = resolve_seed(args.seed);
    let betas = args
        .betas
        .unwrap_or_else(|| montecarlo::table_betas(args.case == TableCase::Negative));
    if args.case == TableCase::Negative && betas.iter().any(|&b| b >= 0.0)
        || args.case == TableCase::Positive && betas.iter().any(|&b| b < 0.0)
    {
        return Err(UsageError(
            "beta values must match the sign of the requested case".to_string(),
        ));
    }
    let ns = args.ns.unwrap_or_else(montecarlo::table_ns);
    let table = montecarlo::build_table(&betas, &ns, args.alpha, args.replications, seed)
        .map_err(|e| UsageError(e.to_string()))?;
    let file = File::create(&args.out)
        .map_err(|e| UsageError(format!("cannot create {}: {e}", args.out.display())))?;
    let mut writer = BufWriter::new(file);
    table
        .write_csv(&mut writer)
        .and_then(|_| writer.flush())
        .map_err(|e| UsageError(format!("cannot write {}: {e}", args.out.display())))?;
    if args.replications < 1000 {
        eprintln!(
            "warning: {} replications is a quick run; published-grade tables use 10000",
            args.replications
        );
    }
    if drawn {
        eprintln!("seed (drawn): {seed}");
    }
    eprintln!(
        "wrote {} cells to {} (excluded replications: {})",
        betas.len() * ns.len(),
        args.out.display(),
        table.excluded
    );
    Ok(())
}

fn parse_family(family: &str, params: &[f64]) -> Result<AltSpec, UsageError> {
    let need = |count: usize| -> Result<(), UsageError> {
        if params.len() != count {
            return Err(UsageError(format!(
                "family {family} needs {count} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    let spec = match family.to_ascii_lowercase().as_str() {
        "beta" => {
            need(2)?;
            AltSpec::Beta { a: params[0], b: params[1] }
        }
        "weibull" => {
            need(2)?;
            AltSpec::Weibull { shape: params[0], scale: params[1] }
        }
        "gamma" => {
            need(2)?;
            AltSpec::Gamma { shape: params[0], scale: params[1] }
        }
        "gen-gamma" | "gengamma" => {
            need(2)?;
            AltSpec::GenGamma { shape: params[0], power: params[1] }
        }
        "abs-normal" | "absnormal" => {
            need(2)?;
            AltSpec::AbsNormal { mean: params[0], sd: params[1] }
        }
        "chi-square" | "chisquare" => {
            need(1)?;
            AltSpec::ChiSquare { df: params[0] }
        }
        "abs-gumbel" | "absgumbel" => {
            need(2)?;
            AltSpec::AbsGumbel { loc: params[0], scale: params[1] }
        }
        "gpd" => {
            need(2)?;
            AltSpec::Gpd { theta: params[0], beta: params[1] }
        }
        other => return Err(UsageError(format!("unknown family `{other}`"))),
    };
    spec.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(spec)
}

fn cmd_power(args: PowerArgs) -> Result<(), UsageError> {
    let (seed, drawn) = resolve_seed(args.seed);

    // (alternative, n, beta_case) rows to run
    let mut rows: Vec<(AltSpec, usize, f64)> = Vec::new();
    match (&args.suite, &args.family) {
        (Some(suite), None) => {
            let (alts, cases): (Vec<AltSpec>, Vec<(usize, f64)>) = match suite.as_str() {
                "null-cases" => (
                    montecarlo::power_alternatives_null_cases(),
                    [20, 30, 50]
                        .iter()
                        .flat_map(|&n| [(n, 0.0), (n, -1.0)])
                        .collect(),
                ),
                "extended" => (
                    montecarlo::power_alternatives_extended(),
                    vec![
                        (20, 0.1),
                        (20, 0.2),
                        (20, 1.0),
                        (30, 0.1),
                        (30, 0.2),
                        (50, 0.5),
                        (30, -0.5),
                        (50, -0.5),
                    ],
                ),
                other => {
                    return Err(UsageError(format!(
                        "unknown suite `{other}`; use null-cases or extended"
                    )))
                }
            };
            for alt in alts {
                for &(n, beta_case) in &cases {
                    rows.push((alt, n, beta_case));
                }
            }
        }
        (None, Some(family)) => {
            let params = args.params.clone().unwrap_or_default();
            let alt = parse_family(family, &params)?;
            let n = args
                .n
                .ok_or_else(|| UsageError("--n is required with --family".to_string()))?;
            let beta_case = args.beta_case.ok_or_else(|| {
                UsageError("--beta-case is required with --family".to_string())
            })?;
            rows.push((alt, n, beta_case));
        }
        _ => {
            return Err(UsageError(
                "pass either --family (with --params, --n, --beta-case) or --suite".to_string(),
            ))
        }
    }

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            UsageError(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "{}", montecarlo::PowerResult::CSV_HEADER)
        .map_err(|e| UsageError(e.to_string()))?;
    for (index, (alt, n, beta_case)) in rows.iter().enumerate() {
        let row_seed = gpdgof::rng::derive(seed, index as u64);
        let result =
            montecarlo::power_study(*alt, *n, *beta_case, args.alpha, args.replications, row_seed)
                .map_err(|e| UsageError(e.to_string()))?;
        writeln!(out, "{}", result.csv_row()).map_err(|e| UsageError(e.to_string()))?;
    }
    out.flush().map_err(|e| UsageError(e.to_string()))?;
    if drawn {
        eprintln!("seed (drawn): {seed}");
    }
    Ok(())
}

fn cmd_ingest(args: IngestArgs) -> Result<(), UsageError> {
    let dataset = ingest::load(&args.data).map_err(|e| UsageError(e.to_string()))?;
    match &dataset.body {
        DatasetBody::Censored(c) => {
            if args.threshold.is_some() {
                return Err(UsageError(
                    "--threshold applies to complete data only".to_string(),
                ));
            }
            let events = c.records().iter().filter(|r| r.observed).count();
            println!("dataset {} (censored)", dataset.name);
            println!("  sha256: {}", dataset.digest);
            println!("  n = {}, events = {}, censored = {}", c.len(), events, c.len() - events);
        }
        DatasetBody::Complete(s) => {
            let sample = match args.threshold {
                Some(t) => {
                    ingest::apply_threshold(s, t).map_err(|e| UsageError(e.to_string()))?
                }
                None => s.clone(),
            };
            println!("dataset {} (complete)", dataset.name);
            println!("  sha256: {}", dataset.digest);
            if let Some(t) = args.threshold {
                println!("  threshold {t}: {} of {} values kept (as excesses)", sample.len(), s.len());
            }
            println!(
                "  n = {}, min = {:.5}, max = {:.5}, mean = {:.5}",
                sample.len(),
                sample.min(),
                sample.max(),
                sample.mean()
            );
            match estimate::cmm(&sample) {
                Ok(fit) => println!(
                    "  combined estimator: theta = {:.5}, beta = {:.5}",
                    fit.theta(),
                    fit.beta()
                ),
                Err(e) => println!("  combined estimator: unavailable ({e})"),
            }
            if sample.len() >= 2 {
                let k = estimate::aml_default_k(sample.len());
                match estimate::aml(&sample, k) {
                    Ok(fit) => println!(
                        "  asymptotic ML (k = {k}): theta = {:.5}, beta = {:.5}",
                        fit.theta(),
                        fit.beta()
                    ),
                    Err(e) => println!("  asymptotic ML (k = {k}): unavailable ({e})"),
                }
            }
        }
    }
    Ok(())
}
