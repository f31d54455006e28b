//! Command-line front end: reproduces the transmission-fidelity tables,
//! runs the sampling experiments and checks results against tolerances.

pub mod commands;
pub mod config;
pub mod reference;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use elliptic_rydberg::UnitVector;

use crate::config::Tolerances;
use crate::report::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Model(#[from] elliptic_rydberg::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "rydberg", version, about = "Direction transmission with elliptic Rydberg states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Shell number.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated shell numbers.
    #[arg(long = "n-list", global = true, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    /// Comma-separated eccentricities in [0, 1].
    #[arg(long = "ecc-grid", global = true, value_delimiter = ',')]
    pub ecc_grid: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long = "tolerance-file", global = true)]
    pub tolerance_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One axis along w, l or k for n = 5 and 10.
    Table1,
    /// m = 0 coefficients of the Stark and optimal one-axis signals, n = 10.
    Table2,
    /// Two-axis error as a function of eccentricity, with optima.
    Table3,
    /// Product measurement for an arbitrary pair of directions.
    So4 {
        /// First direction, `x,y,z`.
        #[arg(long, value_parser = parse_direction, default_value = "1,0,0")]
        v1: UnitVector,
        #[arg(long, value_parser = parse_direction, default_value = "0,1,0")]
        v2: UnitVector,
        /// Also write every sampled outcome to this CSV file.
        #[arg(long)]
        outcomes: Option<PathBuf>,
    },
    /// Error reduction from orthogonalizing two axis estimates.
    Ortho,
    /// Coefficients of the two-axis elliptic signal.
    State {
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        e: f64,
    },
}

fn parse_direction(text: &str) -> Result<UnitVector, String> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [x, y, z] = parts[..] else {
        return Err(format!("expected three components, got {}", parts.len()));
    };
    UnitVector::new(x, y, z).map_err(|e| e.to_string())
}

fn check_shells(shells: &[usize]) -> Result<(), CliError> {
    match shells.iter().find(|&&n| n < 2) {
        Some(n) => Err(CliError::Usage(format!("shell n = {n} must be at least 2"))),
        None if shells.is_empty() => Err(CliError::Usage("empty --n-list".into())),
        None => Ok(()),
    }
}

impl Common {
    fn shells(&self, default: &[usize]) -> Result<Vec<usize>, CliError> {
        let shells = match (&self.n_list, self.n) {
            (Some(list), _) => list.clone(),
            (None, Some(n)) => vec![n],
            (None, None) => default.to_vec(),
        };
        check_shells(&shells)?;
        Ok(shells)
    }

    fn shell(&self, default: usize) -> Result<usize, CliError> {
        let n = self.n.unwrap_or(default);
        check_shells(&[n])?;
        Ok(n)
    }

    fn grid(&self) -> Result<Vec<f64>, CliError> {
        let grid = self.ecc_grid.clone().unwrap_or_else(commands::default_ecc_grid);
        if let Some(e) = grid.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(CliError::Usage(format!("eccentricity {e} outside [0, 1]")));
        }
        Ok(grid)
    }

    fn samples(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    let tol = Tolerances::load(c.tolerance_file.as_deref())?;
    match &cli.command {
        Command::Table1 => commands::table1(&tol),
        Command::Table2 => commands::table2(&tol),
        Command::Table3 => commands::table3(&c.shells(&commands::DEFAULT_TABLE3_SHELLS)?, &c.grid()?, &tol),
        Command::So4 { v1, v2, outcomes } => {
            let n = c.shell(10)?;
            let samples = c.samples();
            if let Some(path) = outcomes {
                commands::write_outcomes(path, n, v1, v2, samples, c.seed)?;
            }
            commands::so4(n, v1, v2, samples, c.seed, &tol)
        }
        Command::Ortho => {
            let samples = c.samples();
            if samples < elliptic_rydberg::ortho::MIN_GAIN_SAMPLES {
                return Err(CliError::Usage(format!(
                    "ortho needs --samples >= {}",
                    elliptic_rydberg::ortho::MIN_GAIN_SAMPLES
                )));
            }
            commands::ortho(&c.shells(&commands::DEFAULT_ORTHO_SHELLS)?, samples, c.seed, &tol)
        }
        Command::State { e } => {
            if !(0.0..=1.0).contains(e) {
                return Err(CliError::Usage(format!("eccentricity {e} outside [0, 1]")));
            }
            commands::state(c.shell(5)?, *e)
        }
    }
}

/// Runs, writes the report and maps the outcome to an exit code.
pub fn execute(cli: &Cli) -> i32 {
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::File::create(path)
            .map_err(CliError::from)
            .and_then(|f| report.write(cli.common.format, std::io::BufWriter::new(f))),
        None => report.write(cli.common.format, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("tolerance failure: {} = {} (expected {} ± {})", c.name, c.value, c.expected, c.tolerance);
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_TOLERANCE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_parsing() {
        assert!(parse_direction("0,0,1").is_ok());
        assert!(parse_direction("1,1,0").is_err());
        assert!(parse_direction("1,0").is_err());
        assert!(parse_direction("a,0,0").is_err());
    }

    #[test]
    fn shell_selection() {
        let cli = Cli::parse_from(["rydberg", "table3", "--n-list", "5,1"]);
        assert!(matches!(cli.common.shells(&[5]), Err(CliError::Usage(_))));
        let cli = Cli::parse_from(["rydberg", "table3", "--n", "7"]);
        assert_eq!(cli.common.shells(&[5]).unwrap(), vec![7]);
    }

    #[test]
    fn grid_must_be_in_unit_interval() {
        let cli = Cli::parse_from(["rydberg", "table3", "--ecc-grid", "0.2,1.5"]);
        assert!(cli.common.grid().is_err());
    }
}
