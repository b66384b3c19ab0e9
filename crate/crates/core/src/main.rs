use std::process::ExitCode;

use clap::Parser;
use ladder_resistance::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.code as u8)
}
