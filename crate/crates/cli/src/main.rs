use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quasimarket::deposit::Statistics;
use quasimarket::occupancy::Orientation;
use quasimarket_cli::commands::{self, OccupancyKind};
use quasimarket_cli::scenario::ScenarioFile;
use quasimarket_cli::{CliError, Output, EXIT_OK};

/// Deposit-allocation sweeps, limit reports and occupancy tables.
///
/// Exit status: 0 on success, 2 for invalid input, 3 for numerical failure.
#[derive(Parser, Debug)]
#[command(name = "quasimarket", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal strong-bank deposit and phase over a linear beta grid
    Sweep {
        /// JSON scenario file
        scenario: PathBuf,
    },
    /// Finite-N critical values against their large-N limits
    Limits {
        #[arg(long, value_enum)]
        kind: StatisticsArg,
        /// limiting ratio G/N
        #[arg(long)]
        g: f64,
        /// rate difference lambda1 - lambda2
        #[arg(long)]
        dl: f64,
        /// comma-separated list of N values, each at least 10
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Exact level occupations beside their large-occupation forms
    Occupancy {
        #[arg(long, value_enum)]
        kind: OccupancyArg,
        /// comma-separated, strictly increasing level values
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        /// comma-separated level multiplicities (gibbs defaults to 1)
        #[arg(long = "G", value_delimiter = ',')]
        g: Option<Vec<f64>>,
        #[arg(long)]
        beta: f64,
        /// total occupation, gibbs only
        #[arg(long = "M")]
        m: Option<f64>,
        #[arg(long, value_enum, default_value_t = OrientationArg::Market)]
        orientation: OrientationArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatisticsArg {
    Bose,
    Boltzmann,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OccupancyArg {
    Gibbs,
    Bose,
    Fermi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OrientationArg {
    Market,
    Thermo,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Sweep { scenario } => commands::sweep(&ScenarioFile::read(&scenario)?),
        Command::Limits { kind, g, dl, n } => {
            let statistics = match kind {
                StatisticsArg::Bose => Statistics::Bose,
                StatisticsArg::Boltzmann => Statistics::Boltzmann,
            };
            commands::limits(statistics, g, dl, &n)
        }
        Command::Occupancy {
            kind,
            x,
            g,
            beta,
            m,
            orientation,
        } => {
            let kind = match kind {
                OccupancyArg::Gibbs => OccupancyKind::Gibbs,
                OccupancyArg::Bose => OccupancyKind::Bose,
                OccupancyArg::Fermi => OccupancyKind::Fermi,
            };
            let orientation = match orientation {
                OrientationArg::Market => Orientation::Market,
                OrientationArg::Thermo => Orientation::Thermo,
            };
            commands::occupancy(kind, &x, g.as_deref(), beta, m, orientation)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            eprint!("{}", out.notes);
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.csv.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
