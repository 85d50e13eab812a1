use std::process::ExitCode;

use clap::Parser;
use trigrad::{run, Cli, EXIT_CONFIG};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.command.common().out.clone();
    match run(&cli) {
        Ok(outcome) => {
            match out_path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &outcome.output) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(EXIT_CONFIG as u8);
                    }
                }
                None => print!("{}", outcome.output),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
