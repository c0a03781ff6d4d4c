//! `su11pol` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! configuration errors.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let rendered = e.render().to_string();
            let first: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("su11pol: {}", first.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Stokes(a) => commands::stokes(a),
        Command::VerifyAlgebra(a) => commands::verify_algebra(a),
        Command::Ellipse(a) => commands::ellipse(a),
        Command::Surface(a) => commands::surface(a),
        Command::Crosscheck(a) => commands::crosscheck(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("su11pol: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("su11pol: error: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
