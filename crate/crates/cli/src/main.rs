//! `ilt`: sample, reconstruct, bound, figures and diagnose.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or invariant violation, 3 numeric failure.

mod args;
mod commands;
mod manifest;

use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = commands::run(cli.command) {
        eprintln!("ilt: {failure}");
        std::process::exit(failure.exit_code());
    }
}
