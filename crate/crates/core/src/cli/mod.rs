//! The `berezin` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 parse error (operator
//! syntax, complex literals, preset and table names), 3 invariant or
//! validation error, 4 verification failure.

pub mod dsl;
pub mod presets;
pub mod svg;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closed_form::range_report;
use crate::error::Error;
use crate::geometry::{convexity_classify, sample_range, RangeCloud, SampleGrid, DEFAULT_TOLERANCE};
use crate::kernel::{DiskPoint, SpaceParams};
use crate::operators::{berezin_transform, OperatorSpec};
use crate::series_oracle::{berezin_via_series, random_corpus, verify_corpus, DEFAULT_DEPTH};

use dsl::{parse_complex, parse_operator_spec, render, render_complex};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

pub const CSV_HEADER: &str = "lambda_re,lambda_im,r,theta,value_re,value_im";

#[derive(Debug, Parser)]
#[command(name = "berezin", version, about = "Berezin transforms and ranges on the weighted Hardy space H_gamma(D)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the predicted Berezin range.
    Predict {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the Berezin transform at one point.
    Transform {
        #[command(flatten)]
        op: OpArgs,
        /// Point of the open unit disc, e.g. -0.1+0.5i.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Also evaluate through truncated power series.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the sampled range as CSV.
    Sample {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Classify the convexity of the sampled range and write a JSON report.
    Classify {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compare closed forms with the series evaluation on a random corpus.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = 1e-8, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        gamma_min: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        gamma_max: f64,
        #[arg(long, default_value_t = 0.8, allow_hyphen_values = true)]
        max_modulus: f64,
    },
    /// Render a named figure as SVG.
    Figure {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        /// List the available figure names.
        #[arg(long)]
        list: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit a reference table (table1 or table2) as CSV.
    Table {
        name: String,
        /// Weight; repeat for several columns. Defaults to 1 and 2.
        #[arg(long = "gamma", allow_hyphen_values = true)]
        gammas: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Coefficient of the `a z^n` rows.
        #[arg(long, default_value = "0.5+0.5i", allow_hyphen_values = true)]
        a: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct OpArgs {
    /// Operator, e.g. rank1:m=2,n=3 or mult:poly=[-2i,5,0,0,1]. Polynomial
    /// coefficients are listed in ascending order.
    #[arg(long, allow_hyphen_values = true)]
    op: String,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    gamma: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 400)]
    radial: usize,
    #[arg(long, default_value_t = 720)]
    angular: usize,
    #[arg(long, default_value_t = 0.999, allow_hyphen_values = true)]
    r_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(std::io::Error),
    Lib(Error),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
            Failure::Lib(Error::Parse { .. }) => EXIT_PARSE,
            Failure::Lib(_) => EXIT_INVARIANT,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Verify(msg) => f.write_str(msg),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl OpArgs {
    fn resolve(&self) -> Result<(OperatorSpec, SpaceParams), Failure> {
        let spec = parse_operator_spec(&self.op)?;
        Ok((spec, SpaceParams::new(self.gamma)?))
    }
}

impl GridArgs {
    fn grid(&self) -> Result<SampleGrid, Failure> {
        Ok(SampleGrid::new(self.radial, self.angular, self.r_max)?)
    }
}

/// Caps the global rayon pool at `BZ_THREADS` threads (`0` means all cores).
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BZ_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("BZ_THREADS must be a non-negative integer, got '{raw}'")))?;
    // a pool built by an earlier call in the same process stays in place
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// CSV of a sampled cloud, one row per grid point in grid order. Numbers use
/// the shortest text that parses back to the same `f64`.
pub fn cloud_csv(cloud: &RangeCloud) -> String {
    let mut text = String::with_capacity(64 * (cloud.len() + 1));
    text.push_str(CSV_HEADER);
    text.push('\n');
    for p in &cloud.points {
        let (r, theta) = p.lambda.to_polar();
        text.push_str(&format!(
            "{:?},{:?},{:?},{:?},{:?},{:?}\n",
            p.lambda.re, p.lambda.im, r, theta, p.value.re, p.value.im
        ));
    }
    text
}

fn grid_json(grid: SampleGrid) -> Value {
    json!({ "n_radial": grid.n_radial(), "n_angular": grid.n_angular(), "r_max": grid.r_max() })
}

/// The versioned classification report written by `classify`.
pub fn classify_report(spec: &OperatorSpec, params: SpaceParams, grid: SampleGrid, tol: f64) -> crate::Result<Value> {
    let cloud = sample_range(spec, params, grid)?;
    let report = convexity_classify(&cloud, tol)?;
    let prediction = range_report(spec, params);
    let (discrepancies, notes): (Vec<String>, Vec<String>) =
        prediction.notes.iter().cloned().partition(|n| n.starts_with("discrepancy"));
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "spec": render(spec),
        "gamma": params.gamma(),
        "grid": grid_json(grid),
        "prediction": {
            "range": prediction.range,
            "text": prediction.range.to_string(),
            "estimated": prediction.estimated,
            "notes": notes,
        },
        "verdict": report.verdict,
        "deficiency": report.deficiency,
        "witness": report.witness,
        "discrepancies": discrepancies,
        "max_gap": report.max_gap,
        "tolerance": report.tolerance,
        "hull_area": report.hull_area,
        "coverage_area": report.coverage_area,
        "diameter": report.diameter,
        "line_gap_fraction": report.line_gap_fraction,
        "classifier_notes": report.notes,
    }))
}

fn to_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Predict { op, format } => {
            let (spec, params) = op.resolve()?;
            let report = range_report(&spec, params);
            let text = match format {
                Format::Text => {
                    let mut text = format!("{}\n", report.range);
                    if report.estimated {
                        text.push_str("note: endpoints are numerical estimates\n");
                    }
                    for note in &report.notes {
                        text.push_str(&format!("note: {note}\n"));
                    }
                    text
                }
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "spec": render(&spec),
                    "gamma": params.gamma(),
                    "prediction": report.range,
                    "text": report.range.to_string(),
                    "estimated": report.estimated,
                    "notes": report.notes,
                })),
            };
            emit(&text, None, out)
        }
        Command::Transform { op, lambda, oracle, depth, format } => {
            let (spec, params) = op.resolve()?;
            let lambda = DiskPoint::new(parse_complex(&lambda)?)?;
            let value = berezin_transform(&spec, params, lambda);
            let series = if oracle { Some(berezin_via_series(&spec, params, lambda, depth)?) } else { None };
            let text = match format {
                Format::Text => {
                    let mut text = format!("value {}\n", render_complex(value));
                    if let Some(s) = series {
                        text.push_str(&format!("series {}\ndifference {:e}\n", render_complex(s), (s - value).norm()));
                    }
                    text
                }
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "spec": render(&spec),
                    "gamma": params.gamma(),
                    "lambda": lambda.value(),
                    "value": value,
                    "series": series,
                    "depth": series.map(|_| depth),
                    "difference": series.map(|s| (s - value).norm()),
                })),
            };
            emit(&text, None, out)
        }
        Command::Sample { op, grid, output } => {
            let (spec, params) = op.resolve()?;
            let cloud = sample_range(&spec, params, grid.grid()?)?;
            emit(&cloud_csv(&cloud), output.as_ref(), out)
        }
        Command::Classify { op, grid, tol, output } => {
            let (spec, params) = op.resolve()?;
            let report = classify_report(&spec, params, grid.grid()?, tol)?;
            emit(&to_json(&report), output.as_ref(), out)
        }
        Command::Verify { count, seed, depth, tol, gamma_min, gamma_max, max_modulus } => {
            if !(0.0 < gamma_min && gamma_min <= gamma_max && gamma_max.is_finite()) {
                return Err(Failure::Usage(format!("need 0 < gamma-min <= gamma-max, got [{gamma_min}, {gamma_max}]")));
            }
            if !(0.0..1.0).contains(&max_modulus) {
                return Err(Failure::Usage(format!("max-modulus must lie in [0, 1), got {max_modulus}")));
            }
            let cases = random_corpus(seed, count, (gamma_min, gamma_max), max_modulus);
            let checks = verify_corpus(&cases, depth)?;
            let failures: Vec<_> = checks.iter().filter(|c| !(c.difference <= tol)).collect();
            let worst = checks.iter().map(|c| c.difference).fold(0.0, f64::max);
            for f in &failures {
                let case = &cases[f.index];
                writeln!(
                    out,
                    "FAIL case {}: {} gamma={} lambda={} closed={} series={} difference={}",
                    f.index,
                    render(&case.spec),
                    case.params.gamma(),
                    render_complex(case.lambda.value()),
                    render_complex(f.closed_form),
                    render_complex(f.series),
                    f.difference
                )?;
            }
            writeln!(out, "cases {} failures {} max_difference {worst:e} tolerance {tol:e}", checks.len(), failures.len())?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verify(format!("{} of {} cases exceed {tol:e}", failures.len(), checks.len())))
            }
        }
        Command::Figure { name, list, output } => {
            if list {
                for p in presets::presets() {
                    writeln!(out, "{}\t{}", p.name, p.title)?;
                }
                return Ok(());
            }
            let preset = presets::find(name.as_deref().unwrap_or_default())?;
            let cloud = sample_range(&preset.spec(), preset.params(), presets::figure_grid())?;
            let predicted = range_report(&preset.spec(), preset.params()).range;
            let svg = svg::render_cloud(&cloud, preset.title, &format!("{}; predicted: {predicted}", preset.op));
            emit(&svg, output.as_ref(), out)
        }
        Command::Table { name, gammas, n, m, a, output } => {
            let inputs = tables::TableInputs {
                gammas: if gammas.is_empty() { vec![1.0, 2.0] } else { gammas },
                n,
                m,
                a: parse_complex(&a)?,
            };
            let rows = tables::table(&name, &inputs)?;
            emit(&tables::to_csv(&rows), output.as_ref(), out)
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    let result = configure_threads().and_then(|()| execute(cli.command, out));
    match result {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            failure.code()
        }
    }
}

