use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hankel_core::bounds::DecayMode;
use hankel_dirichlet::error::EXIT_USAGE;
use hankel_dirichlet::records::{write_records, write_report};
use hankel_dirichlet::run::{
    compute, max_bits_from_env, parse_engine, parse_precision, parse_range, verify_asymptotics, verify_decay,
    verify_envelope, verify_ratio_limit, verify_rationality,
};
use hankel_dirichlet::selftest::{run_selftest, SelftestOptions};
use hankel_dirichlet::series_file::{load_series, parse_rational};
use hankel_dirichlet::{CliError, OutputFormat, Report, RunConfig};

/// Certified Hankel determinants of Dirichlet series values.
#[derive(Parser, Debug)]
#[command(name = "hankel-dirichlet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute H_n^(r) over a grid of sizes and offsets.
    Compute(ComputeArgs),
    /// Run one of the verification pipelines and write a report.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Catalog name (zeta, zeta_ap(a,b), zeta_minus_1, pow2, geo2, factorial_seq) or a series JSON file.
    #[arg(long)]
    series: String,
}

#[derive(Args, Debug)]
struct PrecisionArgs {
    /// `auto` or a fixed number of bits.
    #[arg(long, default_value = "auto")]
    precision: String,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Size, or an inclusive range such as 2..6.
    #[arg(long)]
    n: String,
    /// Offset, or an inclusive range.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    /// auto, lu, dodgson, monien or exact.
    #[arg(long, default_value = "auto")]
    engine: String,
    #[command(flatten)]
    precision: PrecisionArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// log H_n^(r) < -c n^2, with c = log(2 - epsilon) or given directly.
    Decay {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value = "4..10")]
        n: String,
        #[arg(long, default_value = "0")]
        r: String,
        /// Margin below 2, so that c = log(2 - epsilon) [default: 0.1].
        #[arg(long, conflicts_with = "c")]
        epsilon: Option<String>,
        /// Explicit decay constant c > 0.
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Determinants against the ratio-envelope bound.
    Envelope {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value = "2..8")]
        n: String,
        #[arg(long, default_value = "0..4")]
        r: String,
        /// Calibration window for the envelope constant, e.g. 2..30.
        #[arg(long)]
        window: Option<String>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Denominator ledger, integrality of scaled determinants and lcm growth.
    Rationality {
        #[command(flatten)]
        series: SeriesArgs,
        /// Largest ledger index m.
        #[arg(long, default_value_t = 16)]
        m: usize,
        /// Ledger offset R.
        #[arg(long = "offset", default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
        #[arg(long, default_value = "1..6")]
        n: String,
        #[arg(long, default_value = "0..3")]
        r: String,
        /// Growth base for D_m > base^m.
        #[arg(long, default_value = "1.9")]
        base: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The ratio statistic that tends to 1.
    RatioLimit {
        #[command(flatten)]
        series: SeriesArgs,
        /// Argument, or an inclusive range.
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "1e-3")]
        tolerance: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Leading-constant and ratio-expansion reproductions for zeta (reported only).
    Asymptotics {
        #[arg(long, default_value = "8..14")]
        n: String,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, hide = true, num_args = 0..=1, default_missing_value = "1/1000")]
    tamper_zeta: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

fn format_of(f: Format) -> OutputFormat {
    match f {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    }
}

fn sink(out: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(report: &Report, out: &OutputArgs) -> Result<i32, CliError> {
    write_report(report, format_of(out.output), sink(out)?)?;
    Ok(report.exit_code())
}

fn config(series: &str, n: &str, r: &str, precision: &str, engine: &str) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        series: load_series(series)?,
        n: parse_range(n)?,
        r: parse_range(r)?,
        precision: parse_precision(precision, max_bits_from_env()?)?,
        engine: parse_engine(engine)?,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(a) => {
            let cfg = config(&a.series.series, &a.n, &a.r, &a.precision.precision, &a.engine)?;
            let out = compute(&cfg)?;
            write_records(&out.records, format_of(a.output.output), sink(&a.output)?)?;
            Ok(if out.exhausted { hankel_dirichlet::error::EXIT_PRECISION_EXHAUSTED } else { 0 })
        }
        Command::Verify { check } => match check {
            VerifyCommand::Decay { series, n, r, epsilon, c, precision, output } => {
                let cfg = config(&series.series, &n, &r, &precision.precision, "auto")?;
                let mode = match (epsilon, c) {
                    (_, Some(c)) => DecayMode::GeneralC(parse_rational(&c)?),
                    (e, None) => DecayMode::ZetaEpsilon(parse_rational(e.as_deref().unwrap_or("0.1"))?),
                };
                emit(&verify_decay(&cfg, &mode)?, &output)
            }
            VerifyCommand::Envelope { series, n, r, window, precision, output } => {
                let cfg = config(&series.series, &n, &r, &precision.precision, "auto")?;
                let window = window.map(|w| parse_range::<i64>(&w)).transpose()?.map(|w| (*w.start(), *w.end()));
                emit(&verify_envelope(&cfg, window)?, &output)
            }
            VerifyCommand::Rationality { series, m, offset, n, r, base, output } => {
                let cfg = config(&series.series, &n, &r, "auto", "exact")?;
                emit(&verify_rationality(&cfg, offset, m, &parse_rational(&base)?)?, &output)
            }
            VerifyCommand::RatioLimit { series, s, tolerance, output } => {
                let spec = load_series(&series.series)?;
                emit(&verify_ratio_limit(&spec, parse_range(&s)?, &parse_rational(&tolerance)?)?, &output)
            }
            VerifyCommand::Asymptotics { n, precision, output } => {
                let precision = parse_precision(&precision.precision, max_bits_from_env()?)?;
                emit(&verify_asymptotics(parse_range(&n)?, precision)?, &output)
            }
        },
        Command::Selftest(a) => {
            let opts = SelftestOptions {
                seed: a.seed,
                tamper_zeta: a.tamper_zeta.as_deref().map(parse_rational).transpose()?,
            };
            let report = run_selftest(&opts);
            let mut w = sink(&a.output)?;
            match format_of(a.output.output) {
                OutputFormat::Json => {
                    serde_json::to_writer_pretty(&mut w, &report)?;
                    w.write_all(b"\n")?;
                }
                OutputFormat::Csv => {
                    let mut c = csv::Writer::from_writer(w);
                    c.write_record(["suite", "passed", "failed"])?;
                    for s in &report.suites {
                        c.write_record([s.suite.clone(), s.passed.to_string(), s.failed.to_string()])?;
                    }
                    c.flush()?;
                    return Ok(if report.ok() { 0 } else { 1 });
                }
            }
            w.flush()?;
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
