//! Command-line driver for `tvgc`: SBM generation, k-NN graph building,
//! clustering runs, evaluation and eigengap diagnostics.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod svg;

use args::{Cli, Command};
use error::CliResult;

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::GenerateSbm(a) => commands::generate_sbm(a),
        Command::BuildKnn(a) => commands::build_knn(a),
        Command::Cluster(a) => commands::cluster(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Eigengap(a) => commands::eigengap(a),
    }
}
