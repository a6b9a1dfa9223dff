//! Job configuration: a plain `key = value` file merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("format must be csv or json, got {s:?}")),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Flags shared by every subcommand. Each one may also be given in the config file
/// under the name shown in `KEYS`.
#[derive(Args, Clone, Debug, Default)]
pub struct JobArgs {
    /// key=value file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta0p: Option<f64>,
    /// Single λ; takes precedence over a range
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_stop: Option<f64>,
    #[arg(long)]
    pub lambda_step: Option<f64>,
    /// Boson number
    #[arg(long)]
    pub n: Option<usize>,
    /// Monte-Carlo samples per λ
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Energy bins over [e-min, e-max]
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub e_min: Option<f64>,
    #[arg(long)]
    pub e_max: Option<f64>,
    /// Comma-separated even γ-boson numbers
    #[arg(long, value_delimiter = ',')]
    pub n_gamma: Option<Vec<usize>>,
    /// β points of each excited-surface cut
    #[arg(long)]
    pub beta_points: Option<usize>,
    /// Gaussian width of the level flow, scaled energy units
    #[arg(long)]
    pub width: Option<f64>,
    /// σ = c/ρ̄ factor for the oscillatory density
    #[arg(long)]
    pub sigma_c: Option<f64>,
    #[arg(long)]
    pub sigma_max: Option<f64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default from ESQPT_THREADS, else all cores)
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Keys accepted in a config file.
pub const KEYS: [&str; 20] = [
    "beta0p",
    "lambda",
    "lambda_start",
    "lambda_stop",
    "lambda_step",
    "n",
    "samples",
    "seed",
    "bins",
    "e_min",
    "e_max",
    "n_gamma",
    "beta_points",
    "width",
    "sigma_c",
    "sigma_max",
    "out",
    "format",
    "threads",
    "command",
];

pub const THREADS_ENV: &str = "ESQPT_THREADS";

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config(text: &str, origin: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{}:{}: expected key=value, got {line:?}",
                origin.display(),
                no + 1
            )));
        };
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "{}:{}: unknown key {key:?}",
                origin.display(),
                no + 1
            )));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

/// Fully resolved job inputs; recorded verbatim in the manifest.
#[derive(Clone, Debug, Serialize)]
pub struct JobConfig {
    pub command: String,
    pub beta0p: f64,
    pub lambda: Option<f64>,
    pub lambda_start: f64,
    pub lambda_stop: f64,
    pub lambda_step: f64,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub bins: usize,
    pub e_min: f64,
    pub e_max: f64,
    pub n_gamma: Vec<usize>,
    pub beta_points: usize,
    pub width: f64,
    pub sigma_c: f64,
    pub sigma_max: f64,
    pub out: PathBuf,
    pub format: Format,
    pub threads: Option<usize>,
    /// Whether λ came from a range (explicitly or by default).
    #[serde(skip)]
    pub range_given: bool,
}

fn pick<T: FromStr>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse::<T>()
            .map(Some)
            .map_err(|e| CliError::Usage(format!("config key {key}: {e}"))),
    }
}

fn parse_list(v: &str) -> Result<Vec<usize>, CliError> {
    v.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("config key n_gamma: {e}")))
}

impl JobConfig {
    pub fn resolve(command: &str, args: &JobArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            None => BTreeMap::new(),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                parse_config(&text, path)?
            }
        };
        if let Some(c) = file.get("command") {
            if c != command {
                return Err(CliError::Usage(format!(
                    "config is for command {c:?}, not {command:?}"
                )));
            }
        }
        let env_threads = match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(v.trim().parse::<usize>().map_err(|e| {
                CliError::Usage(format!("{THREADS_ENV}={v:?}: {e}"))
            })?),
            _ => None,
        };
        let lambda = pick(args.lambda, &file, "lambda")?;
        let start = pick(args.lambda_start, &file, "lambda_start")?;
        let stop = pick(args.lambda_stop, &file, "lambda_stop")?;
        let step = pick(args.lambda_step, &file, "lambda_step")?;
        let n_gamma = match (&args.n_gamma, file.get("n_gamma")) {
            (Some(v), _) => v.clone(),
            (None, Some(v)) => parse_list(v)?,
            (None, None) => vec![0, 2, 4],
        };
        let cfg = JobConfig {
            command: command.to_string(),
            beta0p: pick(args.beta0p, &file, "beta0p")?.unwrap_or(std::f64::consts::SQRT_2),
            lambda,
            range_given: lambda.is_none()
                && (start.is_some() || stop.is_some() || step.is_some() || command == "phase-diagram"),
            lambda_start: start.unwrap_or(0.0),
            lambda_stop: stop.unwrap_or(3.2),
            lambda_step: step.unwrap_or(0.01),
            n: pick(args.n, &file, "n")?.unwrap_or(50),
            samples: pick(args.samples, &file, "samples")?.unwrap_or(10_000_000),
            seed: pick(args.seed, &file, "seed")?.unwrap_or(1),
            bins: pick(args.bins, &file, "bins")?.unwrap_or(300),
            e_min: pick(args.e_min, &file, "e_min")?.unwrap_or(-0.05),
            e_max: pick(args.e_max, &file, "e_max")?.unwrap_or(3.05),
            n_gamma,
            beta_points: pick(args.beta_points, &file, "beta_points")?.unwrap_or(201),
            width: pick(args.width, &file, "width")?.unwrap_or(0.05),
            sigma_c: pick(args.sigma_c, &file, "sigma_c")?.unwrap_or(0.5),
            sigma_max: pick(args.sigma_max, &file, "sigma_max")?.unwrap_or(0.05),
            out: pick(args.out.clone(), &file, "out")?.unwrap_or_else(|| PathBuf::from(".")),
            format: pick(args.format, &file, "format")?.unwrap_or(Format::Csv),
            threads: pick(args.threads, &file, "threads")?.or(env_threads),
        };
        Ok(cfg)
    }

    /// λ values of the job: the single value, or the inclusive range.
    pub fn lambdas(&self) -> Result<Vec<f64>, CliError> {
        if let Some(l) = self.lambda {
            return Ok(vec![l]);
        }
        if !self.range_given {
            return Err(CliError::Usage(format!(
                "{} needs --lambda or a λ range",
                self.command
            )));
        }
        let (a, b, s) = (self.lambda_start, self.lambda_stop, self.lambda_step);
        if !(s > 0.0 && s.is_finite()) {
            return Err(CliError::Usage(format!("lambda_step must be positive, got {s}")));
        }
        if !(b >= a) {
            return Err(CliError::Usage(format!("empty λ range [{a}, {b}]")));
        }
        let count = ((b - a) / s + 1e-9).floor() as usize + 1;
        // rounding keeps grid values like 0.3 printable as 0.3
        Ok((0..count)
            .map(|k| ((a + k as f64 * s) * 1e12).round() / 1e12)
            .collect())
    }

    /// Fails when `n_gamma` holds odd entries.
    pub fn check_n_gamma(&self) -> Result<(), CliError> {
        match self.n_gamma.iter().find(|g| !g.is_multiple_of(2)) {
            Some(g) => Err(CliError::Core(esqpt::Error::Domain(format!(
                "n_gamma must be even, got {g}"
            )))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let m = parse_config("# job\n\nbeta0p = 1.7  # deformed\nlambda=2\n", Path::new("x")).unwrap();
        assert_eq!(m["beta0p"], "1.7");
        assert_eq!(m["lambda"], "2");
    }

    #[test]
    fn unknown_key_is_usage_error() {
        assert!(matches!(
            parse_config("colour = red", Path::new("x")),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn range_is_inclusive() {
        let args = JobArgs {
            lambda_start: Some(0.0),
            lambda_stop: Some(0.3),
            lambda_step: Some(0.1),
            ..Default::default()
        };
        let c = JobConfig::resolve("boundary", &args).unwrap();
        assert_eq!(c.lambdas().unwrap(), vec![0.0, 0.1, 0.2, 0.3]);
    }
}
