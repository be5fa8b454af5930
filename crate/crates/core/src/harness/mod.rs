//! Parameter grids over the library's checks, with deterministic CSV/JSON
//! reports and plain-text tables.

mod grids;
mod parse;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use parse::{parse_matrix, parse_primes, parse_range, parse_u64_list, ChiSpec, MAX_PRIME};
pub use report::{render_table, Cell, ExperimentReport, OutputFormat, Row};

use crate::arith::is_odd_prime;
use crate::error::{Error, Result};
use crate::tree::RationalMatrix;

/// Root moduli must match q^{w/2} to this absolute tolerance.
pub const ROOT_MODULUS_TOL: f64 = 1e-9;
/// Margin for the strict decrease in Fejer magnitudes.
pub const FEJER_DECAY_TOL: f64 = 1e-12;
/// Cap on |main term - dim| / sqrt(N).
pub const DIM_ERROR_CONSTANT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Orbits,
    MassCheck,
    TreeCheck,
    Ratios,
    Weil,
    Dims,
    Fejer,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Orbits,
        Command::MassCheck,
        Command::TreeCheck,
        Command::Ratios,
        Command::Weil,
        Command::Dims,
        Command::Fejer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Orbits => "orbits",
            Command::MassCheck => "mass-check",
            Command::TreeCheck => "tree-check",
            Command::Ratios => "ratios",
            Command::Weil => "weil",
            Command::Dims => "dims",
            Command::Fejer => "fejer",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub primes: Vec<u64>,
    /// Inclusive level (or conductor) range.
    pub r_range: (u32, u32),
    pub a: u64,
    /// Central character; None means trivial, or every one of conductor <= 2 with `all_chi`.
    pub chi: Option<ChiSpec>,
    pub all_chi: bool,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    /// Worker threads; None uses every core.
    pub jobs: Option<usize>,
    /// Weil weights for `weil`, modular weights k for `dims`.
    pub weights: Vec<u64>,
    pub max_degree: u32,
    pub n_max: u64,
    /// Fejer kernel lengths.
    pub m_values: Vec<u64>,
    pub gamma: Option<RationalMatrix>,
}

impl ExperimentConfig {
    /// Defaults for a command; every field can be overridden afterwards.
    pub fn new(command: Command) -> Self {
        let weights = match command {
            Command::Dims => vec![4, 6, 8, 12],
            _ => vec![1],
        };
        let primes = match command {
            Command::Ratios => vec![13, 17, 19, 23],
            Command::Weil => vec![3],
            _ => vec![3, 5, 7],
        };
        ExperimentConfig {
            command,
            primes,
            r_range: (0, 3),
            a: 1,
            chi: None,
            all_chi: false,
            output_format: OutputFormat::Csv,
            output_path: None,
            jobs: None,
            weights,
            max_degree: 2,
            n_max: 50,
            m_values: vec![8, 64],
            gamma: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::Precondition("no primes given".into()));
        }
        for &p in &self.primes {
            if p > MAX_PRIME || !is_odd_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
        }
        let (lo, hi) = self.r_range;
        if lo > hi {
            return Err(Error::Precondition(format!("empty range {lo}..{hi}")));
        }
        if self.jobs == Some(0) {
            return Err(Error::Precondition("jobs must be positive".into()));
        }
        match self.command {
            Command::Orbits | Command::MassCheck if hi > 4 => return Err(Error::ConductorCap(hi)),
            Command::TreeCheck if hi > 6 => {
                return Err(Error::Precondition(format!("tree closed forms are checked for r <= 6, got {hi}")))
            }
            Command::Ratios => {
                if let Some(&p) = self.primes.iter().find(|&&p| p <= 2 * self.a + 1) {
                    return Err(Error::Precondition(format!("need p > 2A + 1, got p={p}, A={}", self.a)));
                }
            }
            Command::Weil => {
                if self.weights.is_empty() || self.weights.contains(&0) || self.max_degree == 0 {
                    return Err(Error::Precondition("weil needs positive weights and degree".into()));
                }
            }
            Command::Dims => {
                if self.weights.is_empty() || self.weights.iter().any(|&k| k == 0 || k % 2 == 1 || k > 1000) {
                    return Err(Error::Precondition("dims needs even weights in 2..=1000".into()));
                }
                if self.n_max == 0 || self.n_max > 100_000 {
                    return Err(Error::Precondition("n-max must be in 1..=100000".into()));
                }
            }
            Command::Fejer => {
                if self.m_values.is_empty() || self.m_values.iter().any(|&m| m == 0 || m > 256) {
                    return Err(Error::Precondition("Fejer lengths must be in 1..=256".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Runs the configured grid and writes the report if an output path is set.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Error::Io(e.to_string()))?;
    let rows = pool.install(|| grids::rows(config))?;
    let report = ExperimentReport::from_rows(config.command.name(), rows);
    if let Some(path) = &config.output_path {
        report.write_atomic(config.output_format, path)?;
    }
    Ok(report)
}
