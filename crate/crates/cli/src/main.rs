use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gl2_tempered::harness::{
    parse_matrix, parse_primes, parse_range, parse_u64_list, render_table, run, ChiSpec, Command, ExperimentConfig,
    OutputFormat,
};

/// Parameter grids over exact local computations for GL2(Q_p).
#[derive(Parser)]
#[command(name = "gl2t", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// List orbit slices with their masses for a central character.
    Orbits(Common),
    /// Check the conductor-weighted mass identity.
    MassCheck(Common),
    /// Compare tree constant terms and orbital integrals with their bounds.
    TreeCheck(Common),
    /// Mass ratio of orbits with large rationality degree.
    Ratios(Common),
    /// Enumerate Weil q-integers (q taken from --primes).
    Weil(Common),
    /// Dimension main term against the classical formula.
    Dims(Common),
    /// Exact Fejer kernel values.
    Fejer(Common),
}

#[derive(Args)]
struct Common {
    /// Primes, e.g. "3,5,7" or "3-13".
    #[arg(long)]
    primes: Option<String>,
    /// Smallest level or conductor.
    #[arg(long)]
    r_min: Option<u32>,
    /// Largest level or conductor.
    #[arg(long)]
    r_max: Option<u32>,
    /// Level range "a..b"; overrides --r-min/--r-max.
    #[arg(long)]
    r_range: Option<String>,
    #[arg(long = "A")]
    a: Option<u64>,
    /// Central character "c:k" or "c:k@u/v".
    #[arg(long)]
    chi: Option<String>,
    /// Every central character of conductor at most 2 (mass-check).
    #[arg(long)]
    all_chi: bool,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Report file, written atomically.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Weights: Weil weights for weil, k for dims, e.g. "4,6,8,12".
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Fejer lengths, e.g. "8,64".
    #[arg(long)]
    m: Option<String>,
    /// Group element "a,b;c,d" (tree-check).
    #[arg(long)]
    gamma: Option<String>,
    /// Print only the summary line.
    #[arg(long)]
    quiet: bool,
}

fn build(command: Command, c: &Common) -> gl2_tempered::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(command);
    if let Some(p) = &c.primes {
        cfg.primes = parse_primes(p)?;
    }
    if let Some(r) = c.r_min {
        cfg.r_range.0 = r;
    }
    if let Some(r) = c.r_max {
        cfg.r_range.1 = r;
    }
    if let Some(r) = &c.r_range {
        cfg.r_range = parse_range(r)?;
    }
    if let Some(a) = c.a {
        cfg.a = a;
    }
    if let Some(chi) = &c.chi {
        cfg.chi = Some(ChiSpec::parse(chi)?);
    }
    cfg.all_chi = c.all_chi;
    cfg.output_format = c.format.parse::<OutputFormat>()?;
    cfg.output_path = c.out.clone();
    cfg.jobs = c.jobs;
    if let Some(w) = &c.weights {
        cfg.weights = parse_u64_list(w)?;
    }
    if let Some(d) = c.max_degree {
        cfg.max_degree = d;
    }
    if let Some(n) = c.n_max {
        cfg.n_max = n;
    }
    if let Some(m) = &c.m {
        cfg.m_values = parse_u64_list(m)?;
    }
    if let Some(g) = &c.gamma {
        cfg.gamma = Some(parse_matrix(g)?);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Sub::Orbits(c) => (Command::Orbits, c),
        Sub::MassCheck(c) => (Command::MassCheck, c),
        Sub::TreeCheck(c) => (Command::TreeCheck, c),
        Sub::Ratios(c) => (Command::Ratios, c),
        Sub::Weil(c) => (Command::Weil, c),
        Sub::Dims(c) => (Command::Dims, c),
        Sub::Fejer(c) => (Command::Fejer, c),
    };
    let report = match build(command, common).and_then(|cfg| run(&cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gl2t {command}: {e}");
            return ExitCode::from(2);
        }
    };
    if common.quiet || report.rows.is_empty() {
        println!("{} passed, {} failed", report.pass_count, report.fail_count);
    } else {
        match render_table(&report) {
            Ok(t) => print!("{t}"),
            Err(e) => eprintln!("gl2t {command}: {e}"),
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
