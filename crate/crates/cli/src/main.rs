//! `rabi`: spectra, sweeps, oracle checks and mode profiles of the two-photon
//! Rabi model.

mod commands;
mod failure;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{modes, oracle, spectrum, sweep};

#[derive(Debug, Parser)]
#[command(name = "rabi", version, about = "Two-photon Rabi model spectra and collapse surveys")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Filtered low-lying spectrum at one parameter point.
    Spectrum(spectrum::SpectrumArgs),
    /// Survey a parameter grid and locate the collapse per slice.
    Sweep(sweep::SweepArgs),
    /// Cross-check representations against each other and closed forms.
    Oracle(oracle::OracleArgs),
    /// Closed-form and numeric eigenfunctions on a position grid.
    Modes(modes::ModesArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Oracle(a) => oracle::run(a),
        Command::Modes(a) => modes::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
