use std::process::ExitCode;

use clap::Parser;
use tvgc_cli::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes count as validation errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match tvgc_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
