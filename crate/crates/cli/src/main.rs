//! Command-line front end: `chiral-router --command <name> [options]`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod run_config;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Args;
use crate::run_config::RunConfig;

fn main() -> ExitCode {
    let args = Args::parse();
    let result = RunConfig::from_args(args).and_then(|cfg| commands::dispatch(&cfg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
