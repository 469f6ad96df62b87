//! `bosecap`: capacities of bosonic channels from the command line.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{CapacityCmd, Cli, Command};
use crate::config::RunConfig;
use crate::error::{exit, Result};

fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::resolve(cli.global.config.as_deref(), &cli.global.overrides())?;
    match &cli.command {
        Command::Capacity(CapacityCmd::Gaussian(a)) => commands::capacity_gaussian(&cfg, a),
        Command::Capacity(CapacityCmd::Input(a)) => commands::capacity_input(&cfg, a),
        Command::Capacity(CapacityCmd::Number(a)) => commands::capacity_number(&cfg, a),
        Command::Discretize(a) => commands::discretize(&cfg, a),
        Command::Sweep(a) => commands::sweep(&cfg, a),
        Command::Verify(a) => commands::verify(&cfg, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();

    match run(&cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
