mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Why a run stopped early.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or out-of-range input; exit code 2.
    Input(String),
    /// A construction or identity that must hold did not; exit code 1.
    Violation(String),
}

impl From<superschur_core::Error> for Failure {
    fn from(e: superschur_core::Error) -> Self {
        use superschur_core::Error::*;
        match e {
            ConstructionFailure(_) | Inconsistent(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(report) => {
            if let Err(e) = report.emit(cli.global.format, cli.global.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
    }
}
