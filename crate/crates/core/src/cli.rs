//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generate::{random_kcnf, to_dimacs, CnfParams};
use crate::instance::Instance;
use crate::marco::marco_enumerate;
use crate::oracle::parse_dimacs;
use crate::remus::{remus_enumerate, RemusConfig, Report, DEFAULT_REDUCTION_FACTOR};
use crate::shrink::ShrinkConfig;
use crate::stats::{CheckStats, MusRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SATISFIABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "remus",
    version,
    about = "Online enumeration of minimal unsatisfiable subsets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the MUSes of a DIMACS CNF file.
    Run(RunArgs),
    /// Write a seeded random k-CNF instance in DIMACS format.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Remus,
    Marco,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// DIMACS CNF input; each clause is one constraint.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Remus)]
    algorithm: Algorithm,
    /// Wall-clock budget in seconds.
    #[arg(long, value_parser = parse_time_limit)]
    time_limit: Option<f64>,
    /// Stop after this many MUSes.
    #[arg(long)]
    mus_limit: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_REDUCTION_FACTOR, value_parser = parse_factor)]
    reduction_factor: f64,
    /// Do not block satisfiable sets met while shrinking.
    #[arg(long)]
    no_shrink_feed: bool,
    /// Write per-MUS statistics as CSV.
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,
    /// Print only the summary line.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    clauses: usize,
    #[arg(long, default_value_t = 3)]
    width: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn parse_factor(text: &str) -> std::result::Result<f64, String> {
    let f: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(format!("{f} is not in (0, 1)"))
    }
}

fn parse_time_limit(text: &str) -> std::result::Result<f64, String> {
    let t: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if t >= 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("{t} is not a non-negative number of seconds"))
    }
}

/// Formats a MUS as printed on standard output.
pub fn mus_line(record: &MusRecord) -> String {
    let members: Vec<String> = record
        .mus
        .to_one_based()
        .iter()
        .map(|k| k.to_string())
        .collect();
    format!("MUS {}: {}", record.ordinal, members.join(" "))
}

pub fn summary_line(report: &Report) -> String {
    format!(
        "found={} oracle_checks={} map_calls={} elapsed={:.3}s complete={}",
        report.stats.muses_emitted,
        report.stats.oracle_checks,
        report.stats.map_solver_calls,
        report.stats.elapsed().as_secs_f64(),
        if report.complete { "yes" } else { "no" }
    )
}

/// Writes one CSV row per emitted MUS, in emission order.
pub fn write_stats_csv(stats: &CheckStats, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record([
        "mus_index",
        "elapsed_s",
        "oracle_checks",
        "map_solver_calls",
        "depth",
    ])
    .map_err(csv_error)?;
    for e in &stats.per_mus {
        w.write_record([
            e.ordinal.to_string(),
            format!("{:.6}", e.elapsed_s),
            e.oracle_checks.to_string(),
            e.map_solver_calls.to_string(),
            e.depth.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Parses `args` (including the program name) and runs the chosen command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match cli.command {
        Command::Run(args) => run_enumeration(&args, out, err),
        Command::Gen(args) => run_gen(&args, out, err),
    }
}

fn run_enumeration(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let oracle = match File::open(&args.input)
        .map_err(Error::from)
        .and_then(parse_dimacs)
    {
        Ok(oracle) => oracle,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.input.display());
            return EXIT_USAGE;
        }
    };
    let instance = match Instance::new(oracle) {
        Ok(i) => i,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.input.display());
            return EXIT_USAGE;
        }
    };
    let cfg = RemusConfig {
        reduction_factor: args.reduction_factor,
        mus_limit: args.mus_limit,
        time_limit: args.time_limit,
        shrink_cfg: ShrinkConfig {
            feed_map: !args.no_shrink_feed,
            ..ShrinkConfig::default()
        },
        record_trace: false,
    };

    let mut write_failed = None;
    let quiet = args.quiet;
    let sink = |record: &MusRecord| {
        if quiet || write_failed.is_some() {
            return;
        }
        // Flushed before the enumerator issues its next check.
        if let Err(e) = writeln!(out, "{}", mus_line(record)).and_then(|_| out.flush()) {
            write_failed = Some(e);
        }
    };
    let result = match args.algorithm {
        Algorithm::Remus => remus_enumerate(instance, &cfg, sink),
        Algorithm::Marco => marco_enumerate(instance, &cfg, sink),
    };
    let report = match result {
        Ok(report) => report,
        Err(Error::InstanceSatisfiable) => {
            let _ = writeln!(err, "instance is satisfiable");
            return EXIT_SATISFIABLE;
        }
        Err(Error::Precondition(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    };
    if let Some(e) = write_failed {
        let _ = writeln!(err, "error: writing output: {e}");
        return EXIT_FAILURE;
    }
    if writeln!(out, "{}", summary_line(&report))
        .and_then(|_| out.flush())
        .is_err()
    {
        return EXIT_FAILURE;
    }
    if let Some(path) = &args.stats {
        if let Err(e) = write_stats_csv(&report.stats, path) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_FAILURE;
        }
    }
    EXIT_OK
}

fn run_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let params = CnfParams {
        vars: args.vars,
        clauses: args.clauses,
        width: args.width,
        seed: args.seed,
    };
    let clauses = match random_kcnf(&params) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let comment = format!(
        "random {}-CNF vars={} clauses={} seed={}",
        params.width, params.vars, params.clauses, params.seed
    );
    let text = to_dimacs(params.vars, &clauses, Some(&comment));
    let written = match &args.out {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()).and_then(|_| out.flush()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
