use std::process::ExitCode;

use clap::Parser;
use comonoid_cli::{exit_code, run, write_json, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            for (axiom, took) in &outcome.timings {
                eprintln!("{axiom}: {took:.2?}");
            }
            if let Some(path) = &cli.json {
                if let Err(e) = write_json(path, &outcome.json) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
