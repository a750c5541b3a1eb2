//! Command-line front end.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;

use crate::bounds::{best_lower_bound, static_upper, BoundReport};
use crate::groups::{oracle_sweep, type_exists};
use crate::minperiod::{min_period, Status};
use crate::tables::{self, Format};
use crate::types::{lefschetz_of_type, parse_periods, parse_type, validate_type, FiniteOrderType};
use crate::Orientation;

#[derive(Debug, Parser)]
#[command(name = "surfper", version, about = "Minimum periods of surface homeomorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Md,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Md => Format::Markdown,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableName {
    /// m(H^±_{2,b}) with the independent lower and upper bounds.
    Genus2,
    /// γ over genus-2 orientation-preserving classes.
    GammaPreserving,
    /// γ over genus-2 orientation-reversing classes.
    GammaReversing,
    /// l(f^3), l(f^4) as functions of l(f^2) in genus 2.
    Gamma34,
    /// Constructive lower bounds, orientation-preserving.
    LowerPreserving,
    /// Constructive lower bounds, orientation-reversing.
    LowerReversing,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Suite {
    All,
    Tables,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Largest minimum period over homeomorphisms of Σ_{g,b}.
    Minperiod {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        boundary: u64,
        #[arg(long)]
        orientation: Orientation,
        #[arg(long)]
        json: bool,
    },
    /// Print a reference table.
    Table {
        name: TableName,
        #[arg(long, default_value_t = 2)]
        genus: u64,
        #[arg(long)]
        b_max: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Lefschetz numbers L(f), ..., L(f^H) of a finite-order type.
    Lefschetz {
        /// `n;B;p1,p2,...` or `n;p1,p2,...`.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value = "preserving")]
        orientation: Orientation,
    },
    /// Whether a finite-order map of the given type exists on the closed surface.
    Exists {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        order: u64,
        /// Curve families fixed by f^(n/2); implies orientation-reversing.
        #[arg(long)]
        curves: Option<u64>,
        #[arg(long, default_value = "")]
        periods: String,
        #[arg(long)]
        orientation: Option<Orientation>,
    },
    /// Upper bounds and the best construction for Σ_{g,b}.
    Bounds {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        boundary: u64,
        #[arg(long)]
        orientation: Orientation,
    },
    /// Recompute embedded tables and compare deciders with the exhaustive oracle.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Parses `argv` (including the program name) and runs the command. Returns
/// the process exit code: 0 on success, 1 on a verification mismatch, 2 on
/// a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Minperiod { genus, boundary, orientation, json } => {
            let r = min_period(genus, boundary, orientation);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap()).map_err(io)?;
            } else {
                let head = match r.status {
                    Status::Exact { value } => value.to_string(),
                    Status::Infinite => "inf".to_string(),
                    Status::Interval { lower, upper } => format!("[{lower}, {upper}]"),
                };
                writeln!(out, "{head}").map_err(io)?;
                for c in &r.provenance {
                    let side = serde_json::to_value(c.side).unwrap();
                    writeln!(out, "  {} {} {}", side.as_str().unwrap(), c.theorem, c.value).map_err(io)?;
                }
            }
        }
        Command::Table { name, genus, b_max, format } => {
            let table = match name {
                TableName::Genus2 => tables::genus2_table(b_max.unwrap_or(tables::GENUS2_LAST_ROW)),
                TableName::GammaPreserving => tables::gamma_table(Orientation::Preserving, b_max.unwrap_or(18)),
                TableName::GammaReversing => tables::gamma_table(Orientation::Reversing, b_max.unwrap_or(22)),
                TableName::Gamma34 => tables::gamma34_table(),
                TableName::LowerPreserving | TableName::LowerReversing => {
                    if genus < 2 {
                        return Err("lower-bound tables need --genus at least 2".into());
                    }
                    let o = if matches!(name, TableName::LowerPreserving) {
                        Orientation::Preserving
                    } else {
                        Orientation::Reversing
                    };
                    tables::lower_table(genus, o, b_max.unwrap_or(6 * genus + 12))
                }
            };
            out.write_all(table.render(format.into()).as_bytes()).map_err(io)?;
        }
        Command::Lefschetz { ty, genus, horizon, orientation } => {
            let t = parse_type(&ty, orientation)?;
            check_valid(&t, genus)?;
            let values: Vec<String> = lefschetz_of_type(&t, genus, horizon).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", values.join(",")).map_err(io)?;
        }
        Command::Exists { genus, order, curves, periods, orientation } => {
            let ps = parse_periods(&periods)?;
            let o = orientation.unwrap_or(if curves.is_some() { Orientation::Reversing } else { Orientation::Preserving });
            let t = FiniteOrderType::new(o, order, curves.unwrap_or(0), &ps);
            writeln!(out, "{}", type_exists(&t, genus)).map_err(io)?;
        }
        Command::Bounds { genus, boundary, orientation } => {
            let upper = static_upper(genus, boundary, orientation);
            let lower = if genus >= 2 { Some(best_lower_bound(genus, boundary, orientation)) } else { None };
            let value = json!({
                "g": genus,
                "b": boundary,
                "orientation": orientation,
                "upper": upper,
                "lower": lower.as_ref().map(|l: &BoundReport| l),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).map_err(io)?;
        }
        Command::Verify { suite } => {
            let mut failures = 0usize;
            if suite != Suite::Oracle {
                let ms = tables::verify_tables();
                for m in &ms {
                    writeln!(err, "mismatch: {m}").map_err(io)?;
                }
                writeln!(out, "tables: {} mismatches", ms.len()).map_err(io)?;
                failures += ms.len();
            }
            if suite != Suite::Tables {
                let r = oracle_sweep(4, 12, 3, 24);
                for m in &r.mismatches {
                    writeln!(err, "mismatch: {m}").map_err(io)?;
                }
                writeln!(
                    out,
                    "oracle: {} cases, {} positive, {} witnesses verified, {} mismatches",
                    r.cases,
                    r.positive,
                    r.witnesses_checked,
                    r.mismatches.len()
                )
                .map_err(io)?;
                failures += r.mismatches.len();
            }
            return Ok(if failures == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn check_valid(t: &FiniteOrderType, genus: u64) -> Result<(), String> {
    validate_type(t, genus).map(|_| ()).map_err(|vs| {
        let msgs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        format!("invalid type {t} for genus {genus}: {}", msgs.join("; "))
    })
}
