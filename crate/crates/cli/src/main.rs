use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use xmodp_cli::{exit_code, load_session, run_command, CliError, RunOptions, COMMANDS};

#[derive(Debug, Parser)]
#[command(name = "xmodp", about = "Crossed modules over a fixed finite group, checked by enumeration")]
struct Args {
    /// Session file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report destination; standard output when omitted or `stdout`.
    #[arg(long)]
    output: Option<String>,
    /// Enumeration budget, overriding the session options.
    #[arg(long)]
    budget: Option<u128>,
    /// Largest group order in the test catalogue, overriding the session options.
    #[arg(long)]
    catalogue_order: Option<usize>,
    /// Emit JSON (the only format).
    #[arg(long, default_value_t = true)]
    json: bool,
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    args: Vec<String>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let options = RunOptions { budget: args.budget, catalogue_order: args.catalogue_order };
    let outcome = read_input(&args.input)
        .and_then(|text| load_session(&text))
        .and_then(|session| run_command(&session, &args.command, &args.args, options));
    let code = exit_code(&outcome);
    let report = match outcome {
        Ok(report) => report,
        Err(e) => e.report(),
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let written = match args.output.as_deref() {
        None | Some("stdout") | Some("-") => std::io::stdout().write_all(text.as_bytes()),
        Some(path) => std::fs::write(path, text),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
