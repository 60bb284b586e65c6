//! `padic`: JSON front end to the `padic-series` library.
//!
//! Exit codes: 0 on success, 1 when the computation itself fails (a
//! non-unit, an uncertified Weierstrass degree, an exhausted budget, …),
//! 2 when the input is malformed.

mod commands;
mod schema;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use padic_series::io::Overrides;
use padic_series::Execution;
use serde_json::{json, Value};

use commands::{CliError, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Prepare,
    Divide,
    Resultant,
    Discriminant,
    Newton,
    Hensel,
    Slope0,
    Sen,
    Lift,
    Universal,
}

#[derive(Debug, Parser)]
#[command(name = "padic", version, about = "Weierstrass preparation, resultants and discriminants of p-adic power series")]
struct Cli {
    /// Operation to run on the input document.
    #[arg(value_enum, required_unless_present = "schema")]
    command: Option<Command>,
    /// Input JSON file (standard input when absent).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (standard output when absent).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Override the π-adic precision N of every field in the input.
    #[arg(long)]
    precision: Option<u32>,
    /// Override the X-precision M of every series in the input.
    #[arg(long)]
    xprec: Option<usize>,
    /// Seed for `lift`.
    #[arg(long)]
    seed: Option<u64>,
    /// Print the input schema of a subcommand and exit.
    #[arg(long, value_enum, value_name = "SUBCOMMAND")]
    schema: Option<Command>,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    /// Run batch kernels on one thread.
    #[arg(long)]
    sequential: bool,
}

fn emit(out: &Option<PathBuf>, doc: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cmd) = cli.schema {
        return match emit(&cli.out, &schema::schema(cmd)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("padic: {e}");
                ExitCode::from(2)
            }
        };
    }
    let cmd = cli.command.expect("clap enforces a subcommand");
    let opts = Options {
        overrides: Overrides { precision: cli.precision, xprec: cli.xprec },
        seed: cli.seed,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };

    let start = Instant::now();
    let result = read_input(&cli.input)
        .map_err(|e| CliError::Malformed { path: "$".into(), message: format!("cannot read input: {e}") })
        .and_then(|text| {
            serde_json::from_str::<Value>(&text)
                .map_err(|e| CliError::Malformed { path: "$".into(), message: format!("invalid JSON: {e}") })
        })
        .and_then(|input| commands::run(cmd, &input, &opts));

    let (mut doc, code) = match result {
        Ok(out) => (
            json!({"status": "ok", "payload": out.payload, "certified_precision": out.certified_precision}),
            0,
        ),
        Err(err) => {
            eprintln!("padic: {err}");
            (json!({"status": "error", "error": err.to_json()}), err.exit_code())
        }
    };
    if cli.timings {
        doc["timings"] = json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3});
    }
    if let Err(e) = emit(&cli.out, &doc) {
        eprintln!("padic: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
