//! Command-line front end: configuration parsing, pipeline orchestration,
//! report serialization and rendering.
//!
//! Exit codes: 0 on success, 1 on precondition or invariant violations
//! (with a machine-readable error object on stderr), 2 when a certification
//! came back inconclusive — raise the precision or depth and retry.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{
    accumulation_clusters, certified_separation, make_special_point, orbit_digits, SpecialPoint,
};
use crate::render::{render_svg, RenderOptions};
use crate::report::{
    orbit_csv, to_json_pretty, AccumulationReportJson, OrbitDumpJson, OrbitReportJson,
    PeriodicPointJson,
};
use crate::sequence::parse_sequence_spec;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CHAMANARA_OUT_DIR";

const PRECISION_RANGE: (i64, i64) = (2, 4096);
const DEPTH_RANGE: (i64, i64) = (0, 4);
const WINDOW_RANGE: (i64, i64) = (-512, 512);
const TOL_EXP_RANGE: (i64, i64) = (4, 120);
const EDGE_RANGE: (i64, i64) = (0, 64);

#[derive(Parser, Debug)]
#[command(
    name = "chamanara",
    version,
    about = "Exact dynamics on the Chamanara surface"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump an orbit window as CSV and JSON
    Orbit(OrbitArgs),
    /// Certify pairwise orbit separation over a window
    Separation(SeparationArgs),
    /// Cluster forward-orbit points against the removed-point families
    Accumulation(AccumulationArgs),
    /// Enumerate the fixed points of the n-th power of the map
    Periodic(PeriodicArgs),
    /// Run the verification suite and print pass/fail per property
    Verify(VerifyArgs),
    /// Render the square, its gluings and an orbit as SVG
    Render(RenderArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SeqArgs {
    /// Sequence family for both coordinates: `exponential`, `squares`,
    /// inline JSON, or `@path` to a JSON file
    #[arg(long, default_value = "exponential")]
    pub seq: String,
    /// Override the x-coordinate sequence
    #[arg(long)]
    pub x_seq: Option<String>,
    /// Override the y-coordinate sequence
    #[arg(long)]
    pub y_seq: Option<String>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Index window `min:max`, e.g. `-5:5`
    #[arg(long, default_value = "-5:5", allow_hyphen_values = true)]
    pub window: String,
    /// Digits per coordinate
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SeparationArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, default_value = "-50:50", allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    /// Unfolding depth for the distance certificates
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AccumulationArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, default_value_t = 200)]
    pub n_max: i64,
    /// Cluster tolerance is `2^-tol_exp`
    #[arg(long, default_value_t = 20)]
    pub tol_exp: u32,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PeriodicArgs {
    /// Power of the map whose fixed points to enumerate
    #[arg(long)]
    pub n: u32,
    /// Also certify pairwise isolation of the family
    #[arg(long)]
    pub isolation: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Draw edges with index up to this bound
    #[arg(long, default_value_t = 6)]
    pub edges: u32,
    /// Orbit window to overlay, `min:max`
    #[arg(long, default_value = "0:100", allow_hyphen_values = true)]
    pub orbit_window: String,
    /// Square side in pixels
    #[arg(long, default_value_t = 512)]
    pub scale: u32,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    /// Output file (default `render.svg` in the output directory)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn check_range(name: &'static str, value: i64, range: (i64, i64)) -> Result<()> {
    if value < range.0 || value > range.1 {
        return Err(Error::ParameterRange {
            name,
            value,
            min: range.0,
            max: range.1,
        });
    }
    Ok(())
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let parse = |s: &str| -> Result<i64> {
        s.parse()
            .map_err(|_| Error::InvalidSequence(format!("bad window bound: {s}")))
    };
    let (a, b) = text
        .rsplit_once(':')
        .ok_or_else(|| Error::InvalidSequence(format!("window must be min:max, got {text}")))?;
    let (lo, hi) = (parse(a)?, parse(b)?);
    check_range("window_min", lo, WINDOW_RANGE)?;
    check_range("window_max", hi, WINDOW_RANGE)?;
    if lo > hi {
        return Err(Error::InvalidSequence(format!("empty window {text}")));
    }
    Ok((lo, hi))
}

fn resolve_seq_text(text: &str) -> Result<String> {
    match text {
        "exponential" => Ok(r#"{"kind":"exponential","base":2,"offset":-1}"#.into()),
        "squares" => Ok(r#"{"kind":"polynomial","coefficients":[0,0,1]}"#.into()),
        other if other.starts_with('@') => Ok(fs::read_to_string(&other[1..])?),
        other if other.trim_start().starts_with('{') => Ok(other.into()),
        other => Err(Error::InvalidSequence(format!(
            "unknown sequence shorthand `{other}` (use `exponential`, `squares`, inline JSON, or @file)"
        ))),
    }
}

fn special_point(seq: &SeqArgs) -> Result<SpecialPoint> {
    let x_text = resolve_seq_text(seq.x_seq.as_deref().unwrap_or(&seq.seq))?;
    let y_text = resolve_seq_text(seq.y_seq.as_deref().unwrap_or(&seq.seq))?;
    let x = parse_sequence_spec(&x_text)?;
    let y = parse_sequence_spec(&y_text)?;
    make_special_point(x, y)
}

fn out_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Prints a line to stdout; a closed pipe downstream ends the process
/// quietly instead of panicking.
fn emit(line: &str) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    emit(&path.display().to_string());
    Ok(path)
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

/// Runs one parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            let obj = ErrorObject {
                error: ErrorBody {
                    code: err.code(),
                    message: err.to_string(),
                },
            };
            let rendered = serde_json::to_string(&obj).expect("error object serializes");
            use std::io::Write;
            let _ = writeln!(std::io::stderr(), "{rendered}");
            if err.is_inconclusive() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Orbit(args) => {
            check_range("precision", args.precision as i64, PRECISION_RANGE)?;
            let (lo, hi) = parse_window(&args.window)?;
            let zeta = special_point(&args.seq)?;
            let points: Vec<_> = (lo..=hi)
                .map(|n| orbit_digits(&zeta, n, args.precision as u64))
                .collect();
            let dir = out_dir(&args.out_dir);
            write_artifact(&dir, "orbit.csv", &orbit_csv(&points, args.precision))?;
            let dump = OrbitDumpJson::new((lo, hi), args.precision, &points);
            write_artifact(&dir, "orbit.json", &to_json_pretty(&dump)?)?;
            Ok(0)
        }
        Command::Separation(args) => {
            check_range("precision", args.precision as i64, PRECISION_RANGE)?;
            check_range("depth", args.depth as i64, DEPTH_RANGE)?;
            let (lo, hi) = parse_window(&args.window)?;
            let zeta = special_point(&args.seq)?;
            let report = certified_separation(&zeta, lo, hi, args.precision, args.depth)?;
            let inconclusive = !report.inconclusive_pairs.is_empty();
            let json = OrbitReportJson::from(&report);
            let dir = out_dir(&args.out_dir);
            write_artifact(&dir, "separation.json", &to_json_pretty(&json)?)?;
            Ok(if inconclusive { 2 } else { 0 })
        }
        Command::Accumulation(args) => {
            check_range("tol_exp", args.tol_exp as i64, TOL_EXP_RANGE)?;
            check_range("n_max", args.n_max, (0, 4096))?;
            let zeta = special_point(&args.seq)?;
            let report = accumulation_clusters(&zeta, args.n_max, args.tol_exp)?;
            let flagged = !report.flagged.is_empty();
            let json = AccumulationReportJson::from(&report);
            let dir = out_dir(&args.out_dir);
            write_artifact(&dir, "accumulation.json", &to_json_pretty(&json)?)?;
            Ok(if flagged { 2 } else { 0 })
        }
        Command::Periodic(args) => {
            let points = crate::dynamics::periodic_points(args.n)?;
            let json: Vec<PeriodicPointJson> = points.iter().map(Into::into).collect();
            if args.isolation {
                let report = crate::dynamics::verify_isolation(&points, 1);
                #[derive(Serialize)]
                struct WithIsolation {
                    points: Vec<PeriodicPointJson>,
                    isolation_positive: bool,
                    min_separation: Option<crate::report::RationalJson>,
                }
                let out = WithIsolation {
                    points: json,
                    isolation_positive: report.min_separation.is_positive()
                        && report.inconclusive_pairs.is_empty(),
                    min_separation: report.min_separation.lower().map(Into::into),
                };
                emit(&to_json_pretty(&out)?);
            } else {
                emit(&to_json_pretty(&json)?);
            }
            Ok(0)
        }
        Command::Verify(_) => {
            let outcomes = crate::verify::run_all();
            let mut failed = 0;
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                emit(&format!(
                    "{status} {} — {} ({} ms)",
                    o.name, o.detail, o.millis
                ));
                if !o.passed {
                    failed += 1;
                }
            }
            emit(&format!(
                "{} of {} checks passed",
                outcomes.len() - failed,
                outcomes.len()
            ));
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Render(args) => {
            check_range("edges", args.edges as i64, EDGE_RANGE)?;
            check_range("precision", args.precision as i64, PRECISION_RANGE)?;
            check_range("scale", args.scale as i64, (64, 4096))?;
            let (lo, hi) = parse_window(&args.orbit_window)?;
            let zeta = special_point(&args.seq)?;
            let svg = render_svg(&RenderOptions {
                edge_limit: args.edges,
                scale: args.scale,
                orbit: Some((&zeta, lo, hi)),
                precision: args.precision,
            });
            let dir = out_dir(&args.out_dir);
            match args.out {
                Some(path) => {
                    if let Some(parent) = path.parent() {
                        if !parent.as_os_str().is_empty() {
                            fs::create_dir_all(parent)?;
                        }
                    }
                    fs::write(&path, &svg)?;
                    emit(&path.display().to_string());
                }
                None => {
                    write_artifact(&dir, "render.svg", &svg)?;
                }
            }
            Ok(0)
        }
    }
}
