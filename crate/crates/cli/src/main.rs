//! Command line front end: scenario ingestion, chain construction,
//! queries, and property-suite reports in human and machine formats.
//!
//! Exit codes: 0 on success, 1 on any refuted or failed check, 2 on
//! input errors.

mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::report::{run_demo, run_scenario};
use crate::scenario::{parse_budget_spec, parse_scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "maclane", version, about = "Key polynomials and inductive valuations on K[x]")]
struct Args {
    /// Scenario file to run
    #[arg(long, value_name = "PATH", conflicts_with = "demo")]
    scenario: Option<PathBuf>,

    /// Built-in demo chain to run the property suite on
    /// (sqrt-minus-2 or char2-xsq-t)
    #[arg(long, value_name = "NAME")]
    demo: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Enable brute-force oracle cross-checks on epsilon queries
    #[arg(long)]
    oracle: bool,

    /// Budget override: comma-separated coefficients, then ';' and a max
    /// degree, e.g. "0,1,-1,2,-2,1/2,-1/2 ; 3"
    #[arg(long, value_name = "SPEC")]
    budget: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<ExitCode, String> {
    let report = match (&args.scenario, &args.demo) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let mut scenario = parse_scenario(&name, &text).map_err(|e| e.to_string())?;
            if let Some(spec) = &args.budget {
                scenario.budget = parse_budget_spec(&scenario.base, spec)
                    .map_err(|e| format!("--budget: {e}"))?;
            }
            run_scenario(&scenario, args.oracle).map_err(|e| e.to_string())?
        }
        (None, Some(name)) => {
            let budget_override = match &args.budget {
                Some(spec) => {
                    let chain = maclane::demo::demo_chain(name).map_err(|e| e.to_string())?;
                    Some(
                        parse_budget_spec(&chain.base(), spec)
                            .map_err(|e| format!("--budget: {e}"))?,
                    )
                }
                None => None,
            };
            run_demo(name, budget_override).map_err(|e| e.to_string())?
        }
        _ => return Err("exactly one of --scenario or --demo is required".into()),
    };

    let rendered = match args.format {
        Format::Human => report.render_human(),
        Format::Machine => report.render_machine(),
    };
    print!("{rendered}");
    Ok(ExitCode::from(report.exit_code() as u8))
}
