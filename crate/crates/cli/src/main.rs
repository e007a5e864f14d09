use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stieltjes_cli::args::Cli;
use stieltjes_cli::commands;
use stieltjes_cli::config::Settings;
use stieltjes_cli::{CliError, ExitStatus};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::Usage.code() } else { 0 });
        }
    };
    let result = Settings::resolve(&cli)
        .and_then(|s| commands::run(&cli.command, &s))
        .and_then(|out| emit(&cli, &out.text).map(|_| out.status));
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().code())
        }
    }
}
