//! `esqpt`: batch jobs writing CSV/JSON tables plus a JSON manifest per run.

mod config;
mod error;
mod jobs;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{error::ErrorKind, Parser, Subcommand};
use serde::Serialize;

use config::{JobArgs, JobConfig};
use error::{CliError, EXIT_USAGE};
use table::Table;

#[derive(Parser, Debug)]
#[command(name = "esqpt", version, about = "Excited-state quantum phase transition batch jobs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dρ̄/dE over a λ grid (default λ ∈ [0, 3.2] step 0.01)
    PhaseDiagram(JobArgs),
    /// ρ̄, dρ̄/dE and detected singular features at one or more λ
    DensityCut(JobArgs),
    /// Stationary points of the classical energy with Hessian index and class
    Stationary(JobArgs),
    /// Extrema of the energy on the phase-space boundary
    Boundary(JobArgs),
    /// Exact L=0 spectrum at boson number N
    Spectrum(JobArgs),
    /// Smoothed quantum density, level flow and velocity field
    Flow(JobArgs),
    /// Oscillatory density ρ̃ = ρ_quantum − ρ̄
    Oscillatory(JobArgs),
    /// Excited energy surfaces V_{Nγ}(β) and their stationary points
    ExcitedSurfaces(JobArgs),
    /// Spinodal and antispinodal λ
    Spinodal(JobArgs),
}

impl Command {
    fn split(&self) -> (&'static str, &JobArgs) {
        match self {
            Command::PhaseDiagram(a) => ("phase-diagram", a),
            Command::DensityCut(a) => ("density-cut", a),
            Command::Stationary(a) => ("stationary", a),
            Command::Boundary(a) => ("boundary", a),
            Command::Spectrum(a) => ("spectrum", a),
            Command::Flow(a) => ("flow", a),
            Command::Oscillatory(a) => ("oscillatory", a),
            Command::ExcitedSurfaces(a) => ("excited-surfaces", a),
            Command::Spinodal(a) => ("spinodal", a),
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    seed: u64,
    inputs: &'a JobConfig,
    versions: Versions,
    wall_time_s: f64,
    files: Vec<String>,
}

#[derive(Serialize)]
struct Versions {
    esqpt: &'static str,
    esqpt_cli: &'static str,
}

fn write_file(path: &Path, data: &str) -> Result<(), CliError> {
    std::fs::write(path, data).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}

fn run(command: &str, args: &JobArgs) -> Result<Vec<PathBuf>, CliError> {
    let start = Instant::now();
    let cfg = JobConfig::resolve(command, args)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let tables: Vec<Table> = pool.install(|| jobs::run(&cfg))?;

    std::fs::create_dir_all(&cfg.out).map_err(|source| CliError::Output {
        path: cfg.out.clone(),
        source,
    })?;
    let mut written = Vec::new();
    for t in &tables {
        let path = cfg.out.join(format!("{}.{}", t.name, cfg.format.extension()));
        write_file(&path, &t.render(cfg.format))?;
        written.push(path);
    }
    let manifest = Manifest {
        command,
        seed: cfg.seed,
        inputs: &cfg,
        versions: Versions {
            esqpt: esqpt::VERSION,
            esqpt_cli: env!("CARGO_PKG_VERSION"),
        },
        wall_time_s: start.elapsed().as_secs_f64(),
        files: written
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect(),
    };
    let path = cfg.out.join(format!("{command}.manifest.json"));
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_file(&path, &text)?;
    written.push(path);
    Ok(written)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let (command, args) = cli.command.split();
    match run(command, args) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("esqpt {command}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
