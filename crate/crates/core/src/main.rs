use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use latticeqre::pipeline::{self, Format, RunConfig, Stage, StageError, TruncationMode, DEFAULT_P_PHYS};
use latticeqre::Error;

#[derive(Parser)]
#[command(name = "latticeqre", version, about = "Fault-tolerant resource estimates for periodic-solid Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load the integrals and check hermiticity, permutational and translational symmetry
    Validate(Common),
    /// Build and truncate the Majorana LCU
    Lcu {
        #[command(flatten)]
        common: Common,
        /// Write the truncated term list here
        #[arg(long)]
        terms: Option<PathBuf>,
    },
    /// Logical cost only: Toffolis, T gates, logical qubits
    Estimate(Common),
    /// Run the desk-scale verification suite
    Verify(Common),
    /// Whole pipeline including surface-code overheads
    Full(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    manifest: PathBuf,
    /// Target accuracy per formula unit, Hartree
    #[arg(long, default_value_t = 1.6e-3)]
    epsilon_per_fu: f64,
    /// l2, fixed:<Ha> or none
    #[arg(long, default_value = "l2", value_parser = parse_truncation)]
    truncation: TruncationMode,
    /// Physical error rate; repeat for several (default 1e-3 and 1e-4)
    #[arg(long = "phys-error-rate")]
    phys_error_rate: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    cycle_time_us: f64,
    /// JSON list of magic-state factories replacing the built-in one
    #[arg(long)]
    factories: Option<PathBuf>,
    /// Also run the verification suite and embed its results
    #[arg(long)]
    verify: bool,
    /// Discard integrals below this magnitude while loading
    #[arg(long)]
    integral_floor: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
}

fn parse_truncation(s: &str) -> Result<TruncationMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn config(&self) -> RunConfig {
        let mut cfg = RunConfig::new(&self.manifest);
        cfg.eps_per_fu = self.epsilon_per_fu;
        cfg.truncation = self.truncation;
        cfg.p_phys = if self.phys_error_rate.is_empty() { DEFAULT_P_PHYS.to_vec() } else { self.phys_error_rate.clone() };
        cfg.t_cycle_us = self.cycle_time_us;
        cfg.factories = self.factories.clone();
        cfg.verify = self.verify;
        if let Some(f) = self.integral_floor {
            cfg.integral_floor = f;
        }
        cfg
    }
}

fn execute(cli: Cli) -> Result<bool, StageError> {
    let (common, report) = match &cli.command {
        Command::Validate(c) => (c, pipeline::run_until(&c.config(), Stage::Validate)?),
        Command::Lcu { common, terms } => {
            let (report, set) = pipeline::run_with_terms(&common.config(), Stage::Truncate)?;
            if let (Some(path), Some(set)) = (terms, set) {
                let io = |source| StageError { stage: Stage::Emit, source: Error::Io { path: path.clone(), source } };
                let f = File::create(path).map_err(io)?;
                set.write_dump(BufWriter::new(f)).map_err(io)?;
            }
            (common, report)
        }
        Command::Estimate(c) => (c, pipeline::run_until(&c.config(), Stage::Cost)?),
        Command::Verify(c) => (c, pipeline::run_verify(&c.config())?),
        Command::Full(c) => (c, pipeline::run(&c.config())?),
    };
    pipeline::emit(&report, common.format, common.out.as_deref())?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("latticeqre: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("latticeqre: {e}");
            ExitCode::from(2)
        }
    }
}
