use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use tdpair::io::{leonard_csv, leonard_json, parse_pair_input, system_json};
use tdpair::krawtchouk::{construct_krawtchouk, KrawtchoukParams};
use tdpair::leonard::construct_leonard;
use tdpair::{verify_input, CheckId, Error, Field, SuiteOptions};

/// Construct and verify tridiagonal systems in exact arithmetic.
#[derive(Parser)]
#[command(name = "tdpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Leonard system and write it with its scalar table.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the axioms and run every identity check on a matrix pair.
    Verify {
        #[command(flatten)]
        common: CheckArgs,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Render rank tables and scalar tables for a matrix pair.
    Report {
        #[command(flatten)]
        common: CheckArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Construct {
    Krawtchouk {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "rational")]
        field: Field,
        /// Directory for system.json, leonard.json and leonard.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Leonard {
        /// Comma-separated θ_0..θ_d.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Comma-separated θ*_0..θ*_d.
        #[arg(long, allow_hyphen_values = true)]
        thetastar: String,
        /// Comma-separated φ_1..φ_d.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, default_value = "rational")]
        field: Field,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Input JSON file, or - for stdin.
    path: PathBuf,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Value of β for systems with d ≤ 2.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated check ids to run (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<CheckId>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Inconsistent(_) | Error::Rejected(_) | Error::TypeMismatch(_) => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure(2, format!("{}: {e}", path.display()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn parse_list(field: Field, text: &str) -> Result<Vec<tdpair::Scalar>, Failure> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(|t| Ok(field.parse(t)?)).collect()
}

fn construct(cmd: Construct) -> Result<u8, Failure> {
    let (sys, data, out) = match cmd {
        Construct::Krawtchouk { d, p, field, out } => {
            let params = KrawtchoukParams::new(d, field.parse(&p)?)?;
            let (sys, data) = construct_krawtchouk(&params)?;
            (sys, data, out)
        }
        Construct::Leonard { theta, thetastar, phi, field, out } => {
            let (sys, data) = construct_leonard(
                field,
                &parse_list(field, &theta)?,
                &parse_list(field, &thetastar)?,
                &parse_list(field, &phi)?,
            )?;
            (sys, data, out)
        }
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
            emit(Some(&dir.join("system.json")), &pretty(&system_json(&sys)))?;
            emit(Some(&dir.join("leonard.json")), &pretty(&leonard_json(&data)))?;
            emit(Some(&dir.join("leonard.csv")), &leonard_csv(&data))?;
        }
        None => {
            let mut v = system_json(&sys);
            v["leonard"] = leonard_json(&data);
            emit(None, &pretty(&v))?;
        }
    }
    Ok(0)
}

fn check(common: CheckArgs, render: impl FnOnce(&tdpair::VerificationReport) -> String) -> Result<u8, Failure> {
    let text = read_input(&common.path)?;
    let pair = parse_pair_input(&text)?;
    let beta = common.beta.as_deref().map(|b| pair.field.parse(b)).transpose()?;
    let checks: BTreeSet<CheckId> =
        if common.checks.is_empty() { CheckId::ALL.into_iter().collect() } else { common.checks.into_iter().collect() };
    let opts = SuiteOptions { checks, beta };
    let report = verify_input(&common.path.display().to_string(), &pair, &opts)?;
    emit(common.out.as_deref(), &render(&report))?;
    if let Some(r) = &report.rejection {
        eprintln!("not a tridiagonal pair: {r}");
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("TDPAIR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure(2, format!("TDPAIR_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure(2, e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Construct(c) => construct(c),
        Command::Verify { common, timings } => check(common, |r| pretty(&r.to_json(timings))),
        Command::Report { common, format } => check(common, |r| match format {
            Format::Json => pretty(&r.tables_json()),
            Format::Csv => r.tables_csv(),
        }),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
