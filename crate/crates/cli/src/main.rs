mod args;
mod commands;
mod config;
mod error;
mod output;
mod rational;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use error::CliError;

fn run() -> Result<ExitCode, CliError> {
    let argv = config::expand_args(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    let (outcome, format) = match &cli.command {
        Command::Solve(a) => (commands::solve(a)?, a.output.output.unwrap_or(Format::Text)),
        Command::Transform(a) => (commands::transform(a)?, a.output.output.unwrap_or(Format::Text)),
        Command::Verify(a) => (commands::verify(a)?, a.output.output.unwrap_or(Format::Text)),
        Command::Table(a) => (commands::table(a)?, a.output.output.unwrap_or(Format::Csv)),
    };
    let text = outcome.report.render(format)?;
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .map_err(|e| CliError::Solver(format!("writing output: {e}")))?;
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qes: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
