//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a disagreement, 2 on
//! usage or domain errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::formulas;
use crate::invariants::{self, InvariantSet, UNDEFINED_GENUS_ZERO};
use crate::ladder::{LadderSpec, VertexRef};
use crate::render::{Format, NumericMode, OutputConfig};
use crate::sequences;
use crate::table::{ResistanceTable, TableSource};
use crate::verify::{self, Suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "ladder",
    version,
    about = "Exact effective resistances, Kirchhoff index and invariants of ladder graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Plain, global = true)]
    pub format: FormatArg,
    /// Render values as decimals instead of exact fractions.
    #[arg(long, global = true)]
    pub float: bool,
    /// Digits after the decimal point in float mode (1-17).
    #[arg(long, default_value_t = 12, global = true)]
    pub digits: usize,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceKind {
    /// G_n
    Gfib,
    /// U_n(2)
    Cheb,
    /// U'_n(2)
    ChebDeriv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Effective resistance between two vertices, or every pair with --all.
    Resist {
        #[arg(long)]
        n: i64,
        /// Vertex pair such as `p3,q3`.
        #[arg(long, conflicts_with = "all")]
        pair: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Kirchhoff index.
    Kirchhoff {
        #[arg(long)]
        n: i64,
    },
    /// The six admissible invariants.
    Invariants {
        #[arg(long)]
        n: i64,
    },
    /// Integer sequence values for indices 0..=max.
    Sequence {
        #[arg(long, value_enum)]
        kind: SequenceKind,
        #[arg(long)]
        max: usize,
    },
    /// Run the cross-validation suites.
    Verify {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Restrict to one or more suites.
        #[arg(long, value_parser = parse_suite)]
        suite: Vec<Suite>,
        /// Corrupt one closed-form resistance before comparing (self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

/// Rendered output plus the exit code it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl OutputArgs {
    pub fn config(&self) -> Result<OutputConfig> {
        let format = match self.format {
            FormatArg::Plain => Format::Plain,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
        let mode = if self.float {
            NumericMode::Float
        } else {
            NumericMode::Exact
        };
        OutputConfig::new(format, mode, self.digits, self.out.clone())
    }
}

fn json_line(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("json value");
    text.push('\n');
    text
}

fn parse_pair(text: &str) -> Result<(VertexRef, VertexRef)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("pair must look like p1,q2, got {text:?}")))?;
    Ok((a.parse()?, b.parse()?))
}

pub fn cmd_resist(cfg: &OutputConfig, n: i64, pair: Option<&str>, all: bool) -> Result<String> {
    let spec = LadderSpec::new(n)?;
    match (pair, all) {
        (Some(pair), false) => {
            let (a, b) = parse_pair(pair)?;
            let value = formulas::resistance(spec, a, b)?;
            let shown = cfg.value(&value);
            Ok(match cfg.format {
                Format::Plain => format!("{shown}\n"),
                Format::Json => json_line(json!({
                    "n": spec.n(),
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "value": shown,
                })),
                Format::Csv => {
                    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                    format!(
                        "side_a,idx_a,side_b,idx_b,value\n{},{},{},{},{shown}\n",
                        lo.side.letter(),
                        lo.index,
                        hi.side.letter(),
                        hi.index
                    )
                }
            })
        }
        (None, true) => {
            let table = formulas::resistance_table(spec)?;
            render_table(cfg, &table)
        }
        _ => Err(Error::Parse("resist needs exactly one of --pair or --all".into())),
    }
}

pub fn render_table(cfg: &OutputConfig, table: &ResistanceTable) -> Result<String> {
    let render = |r: &Rational| cfg.value(r);
    Ok(match cfg.format {
        Format::Plain => table
            .entries()
            .map(|(a, b, r)| format!("r({a}, {b}) = {}\n", render(r)))
            .collect(),
        Format::Json => json_line(table.to_json_with(&render)),
        Format::Csv => table.to_csv_with(&render)?,
    })
}

pub fn cmd_kirchhoff(cfg: &OutputConfig, n: i64) -> Result<String> {
    let spec = LadderSpec::new(n)?;
    let shown = cfg.value(&formulas::kirchhoff(spec.n())?);
    Ok(match cfg.format {
        Format::Plain => format!("{shown}\n"),
        Format::Json => json_line(json!({ "n": spec.n(), "kirchhoff": shown })),
        Format::Csv => format!("n,kirchhoff\n{},{shown}\n", spec.n()),
    })
}

pub fn cmd_invariants(cfg: &OutputConfig, n: i64) -> Result<String> {
    let spec = LadderSpec::new(n)?;
    let set = InvariantSet::closed(spec.n())?;
    let render = |r: &Rational| cfg.value(r);
    let shown: Vec<(&str, String)> = set
        .fields()
        .into_iter()
        .map(|(name, v)| (name, v.map_or_else(|| UNDEFINED_GENUS_ZERO.to_string(), render)))
        .collect();
    Ok(match cfg.format {
        Format::Plain => {
            let mut out = format!(
                "n = {}\ntotal_length = {}\ngenus = {}\n",
                spec.n(),
                spec.total_length(),
                spec.genus()
            );
            for (name, value) in &shown {
                out.push_str(&format!("{name} = {value}\n"));
            }
            out
        }
        Format::Json => json_line(invariants::invariants_json(&set, &render)),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["n", "total_length", "genus"];
            header.extend(shown.iter().map(|(name, _)| *name));
            let mut row = vec![
                spec.n().to_string(),
                spec.total_length().to_string(),
                spec.genus().to_string(),
            ];
            row.extend(shown.into_iter().map(|(_, v)| v));
            let io = |e: csv::Error| Error::Parse(e.to_string());
            writer.write_record(&header).map_err(io)?;
            writer.write_record(&row).map_err(io)?;
            let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?
        }
    })
}

pub fn cmd_sequence(cfg: &OutputConfig, kind: SequenceKind, max: usize) -> Result<String> {
    let values: Vec<String> = match kind {
        SequenceKind::Gfib => sequences::GenFibCache::with_max(max).values()[..=max]
            .iter()
            .map(ToString::to_string)
            .collect(),
        SequenceKind::Cheb => sequences::chebyshev_u2_table(max)
            .into_iter()
            .map(|(u, _)| u.to_string())
            .collect(),
        SequenceKind::ChebDeriv => sequences::chebyshev_u2_table(max)
            .into_iter()
            .map(|(_, d)| d.to_string())
            .collect(),
    };
    let name = match kind {
        SequenceKind::Gfib => "gfib",
        SequenceKind::Cheb => "cheb",
        SequenceKind::ChebDeriv => "cheb-deriv",
    };
    Ok(match cfg.format {
        Format::Plain => format!("{}\n", values.join(", ")),
        Format::Json => json_line(json!({ "kind": name, "values": values })),
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for (k, v) in values.iter().enumerate() {
                out.push_str(&format!("{k},{v}\n"));
            }
            out
        }
    })
}

pub fn cmd_verify(cfg: &OutputConfig, options: &VerifyOptions) -> Result<Outcome> {
    let report = verify::run(options)?;
    let code = if report.passed() { 0 } else { 1 };
    let text = match cfg.format {
        Format::Json => json_line(json!({
            "passed": report.passed(),
            "n_max": options.n_max,
            "suites": report.suites.iter().map(|s| json!({
                "name": s.suite.name(),
                "passed": s.passed(),
                "checks": s.checks,
                "failures": s.failures,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("suite,passed,checks,failed\n");
            for s in &report.suites {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    s.suite,
                    s.passed(),
                    s.checks,
                    s.failures.len()
                ));
            }
            out
        }
        Format::Plain => report.to_string(),
    };
    Ok(Outcome { text, code })
}

/// Execute a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.output.config()?;
    let text = match &cli.command {
        Command::Resist { n, pair, all } => cmd_resist(&cfg, *n, pair.as_deref(), *all)?,
        Command::Kirchhoff { n } => cmd_kirchhoff(&cfg, *n)?,
        Command::Invariants { n } => cmd_invariants(&cfg, *n)?,
        Command::Sequence { kind, max } => cmd_sequence(&cfg, *kind, *max)?,
        Command::Verify {
            n_max,
            suite,
            inject_fault,
        } => {
            let options = VerifyOptions {
                n_max: *n_max,
                suites: suite.clone(),
                inject_fault: *inject_fault,
            };
            return cmd_verify(&cfg, &options);
        }
    };
    Ok(Outcome { text, code: 0 })
}

/// Parse a CSV table emitted by `resist --all --format csv` and render it
/// again; used to check that the encoding round-trips.
pub fn rerender_csv(n: i64, text: &str) -> Result<String> {
    let table = ResistanceTable::from_csv(LadderSpec::new(n)?, TableSource::ClosedForm, text)?;
    table.to_csv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact() -> OutputConfig {
        OutputConfig::default()
    }

    fn with(format: Format) -> OutputConfig {
        OutputConfig {
            format,
            ..OutputConfig::default()
        }
    }

    #[test]
    fn resist_outputs() {
        assert_eq!(cmd_resist(&exact(), 3, Some("p3,q3"), false).unwrap(), "11/15\n");
        assert_eq!(cmd_resist(&exact(), 2, Some("p1,q2"), false).unwrap(), "1\n");
        assert_eq!(cmd_resist(&exact(), 1, Some("p1,p1"), false).unwrap(), "0\n");
        assert!(cmd_resist(&exact(), 2, Some("p1,q3"), false).is_err());
        assert!(cmd_resist(&exact(), 2, Some("p1q2"), false).is_err());
        assert!(cmd_resist(&exact(), 2, None, false).is_err());
        assert!(cmd_resist(&exact(), 0, Some("p1,p1"), false).is_err());
        let csv = cmd_resist(&with(Format::Csv), 2, Some("q2,p1"), false).unwrap();
        assert_eq!(csv, "side_a,idx_a,side_b,idx_b,value\np,1,q,2,1\n");
        let json: serde_json::Value =
            serde_json::from_str(&cmd_resist(&with(Format::Json), 3, Some("p3,q3"), false).unwrap())
                .unwrap();
        assert_eq!(json["value"], "11/15");
    }

    #[test]
    fn kirchhoff_outputs() {
        assert_eq!(cmd_kirchhoff(&exact(), 7).unwrap(), "415177/2911\n");
        assert_eq!(cmd_kirchhoff(&exact(), 1).unwrap(), "1\n");
        let float = OutputConfig {
            numeric_mode: NumericMode::Float,
            ..OutputConfig::default()
        };
        assert_eq!(cmd_kirchhoff(&float, 2).unwrap(), "5.000000000000\n");
        assert_eq!(cmd_kirchhoff(&with(Format::Csv), 3).unwrap(), "n,kirchhoff\n3,71/5\n");
    }

    #[test]
    fn invariant_outputs() {
        let two = cmd_invariants(&exact(), 2).unwrap();
        assert!(two.contains("tau = 1/3\n"));
        assert!(two.contains("theta = 0\n"));
        assert!(two.contains("lambda = 1/3\n"));
        let one = cmd_invariants(&exact(), 1).unwrap();
        assert!(one.contains("tau = 1/4\n"));
        assert!(one.contains("phi = undefined (genus 0)\n"));
        let three: serde_json::Value =
            serde_json::from_str(&cmd_invariants(&with(Format::Json), 3).unwrap()).unwrap();
        assert_eq!(three["theta"], "6/5");
        let csv = cmd_invariants(&with(Format::Csv), 2).unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "n,total_length,genus,tau,theta,lambda,phi,epsilon,zcap"
        );
    }

    #[test]
    fn sequence_outputs() {
        assert_eq!(
            cmd_sequence(&exact(), SequenceKind::Gfib, 10).unwrap(),
            "0, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316\n"
        );
        assert_eq!(cmd_sequence(&exact(), SequenceKind::Cheb, 3).unwrap(), "1, 4, 15, 56\n");
        assert_eq!(cmd_sequence(&exact(), SequenceKind::Gfib, 0).unwrap(), "0\n");
        assert_eq!(cmd_sequence(&exact(), SequenceKind::ChebDeriv, 2).unwrap(), "0, 2, 16\n");
    }

    #[test]
    fn csv_round_trip() {
        let csv = cmd_resist(&with(Format::Csv), 4, None, true).unwrap();
        assert_eq!(rerender_csv(4, &csv).unwrap(), csv);
    }
}
