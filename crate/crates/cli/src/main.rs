//! `qlight`: run netlists and the library's device models from the shell.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 parse error, 3 validation or
//! numerical failure.

mod commands;
mod config;
mod error;
mod matrix;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser)]
#[command(
    name = "qlight",
    version,
    about = "Quantum-like optical circuit simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a netlist and print the result document.
    Run {
        file: PathBuf,
        /// Initial basis state, msb-first (default all zeros).
        #[arg(long)]
        input: Option<String>,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a 2x2 unitary into fiber segments.
    Synth {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 0)]
        qubit: usize,
        /// Prefix a header so the output is a runnable netlist.
        #[arg(long)]
        standalone: bool,
    },
    /// Print the QFT circuit on n qubits.
    Qft {
        #[arg(short)]
        n: usize,
        /// Compare against the DFT matrix and the expected gate count.
        #[arg(long)]
        check: bool,
    },
    /// Build the permutation oracle of a truth table.
    Oracle {
        #[arg(long)]
        table: PathBuf,
    },
    /// Evaluate the nonlinear directional coupler for a TOML scenario.
    Coupler {
        #[arg(long)]
        params: PathBuf,
    },
    /// Classify a 4x4 unitary as entangling or primitive.
    CheckEntangling {
        #[arg(long)]
        gate: PathBuf,
    },
    /// Beam propagation from a TOML configuration.
    Bpm {
        #[arg(long)]
        config: PathBuf,
    },
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Run { file, input, out } => commands::run(&file, input.as_deref(), out.as_deref()),
        Command::Synth {
            matrix,
            qubit,
            standalone,
        } => commands::synth(&matrix, qubit, standalone),
        Command::Qft { n, check } => commands::qft(n, check),
        Command::Oracle { table } => commands::oracle(&table),
        Command::Coupler { params } => commands::coupler(&params),
        Command::CheckEntangling { gate } => commands::check_entangling(&gate),
        Command::Bpm { config } => commands::bpm(&config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
