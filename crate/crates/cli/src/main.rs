mod acceptance;
mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let pretty = serde_json::to_string_pretty(&report.json).expect("json values serialize");
    let shown = if cli.json { &pretty } else { &report.text };
    // a closed pipe (`lazard ... | head`) is not an error
    let _ = writeln!(std::io::stdout(), "{shown}");
    if let Some(path) = &cli.output {
        if let Err(e) = fs::write(path, format!("{pretty}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
