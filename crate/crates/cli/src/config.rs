//! Command-line syntax and its validation into a [`CliConfig`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kanter_core::fox_h::QuadPolicy;
use kanter_core::verify::SUITES;
use kanter_core::{SeriesPolicy, StabilityIndex};

use crate::output::{Destination, Format};

#[derive(Debug, Parser)]
#[command(
    name = "kanter",
    version,
    about = "Positive stable and free stable laws: densities, samples, contours and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a density on a grid (CSV columns `x,value`)
    Pdf(EvalArgs),
    /// Evaluate a distribution function on a grid (CSV columns `x,value`)
    Cdf(EvalArgs),
    /// Evaluate `E[Y^{-s}]` on a grid of `s` (CSV columns `s,value`)
    Mellin(EvalArgs),
    /// Draw a reproducible sample (CSV columns `index,value`)
    Sample(SampleArgs),
    /// Emit points of a contour (CSV columns `theta,re,im`)
    Contour(ContourArgs),
    /// Run verification suites (JSON array of reports)
    Verify(VerifyArgs),
}

/// The law a command acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Positive stable law, Laplace transform exp(-t^alpha)
    Stable,
    /// Kanter's variable a_alpha(U)
    Kanter,
    /// Positive free stable law
    Free,
    /// e^V with Mellin transform Gamma(rs/alpha+1)/(Gamma(s+1)Gamma(rs+1)); needs --r
    Expv,
    /// Limit density 1/x on x > 1 (infinite mass)
    FreeLimit,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::Stable => "stable",
            Target::Kanter => "kanter",
            Target::Free => "free",
            Target::Expv => "expv",
            Target::FreeLimit => "free-limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    /// C_alpha: r = (sin(alpha theta)/sin theta)^{1/(1-alpha)}
    #[value(name = "C")]
    C,
    /// Boundary of Omega_alpha: r = (sin theta/sin((1-alpha)theta))^{1/alpha}
    #[value(name = "omega")]
    Omega,
}

/// `min:max:count` (inclusive ends) or a comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Range { min: f64, max: f64, count: usize },
    List(Vec<f64>),
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let number = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [min, max, count] => {
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("'{count}' is not a point count"))?;
                if count == 0 {
                    return Err(String::from("grid needs at least one point"));
                }
                Ok(GridSpec::Range {
                    min: number(min)?,
                    max: number(max)?,
                    count,
                })
            }
            [list] => Ok(GridSpec::List(
                list.split(',').map(number).collect::<Result<_, _>>()?,
            )),
            _ => Err(String::from("expected min:max:count or a comma-separated list")),
        }
    }
}

impl GridSpec {
    pub fn points(&self, log: bool) -> Result<Vec<f64>, ConfigError> {
        match *self {
            GridSpec::List(ref v) => Ok(v.clone()),
            GridSpec::Range { min, max, count } => {
                if count == 1 {
                    return Ok(vec![min]);
                }
                let step = |i: usize| i as f64 / (count - 1) as f64;
                if log {
                    if !(min > 0.0 && max > 0.0) {
                        return Err(ConfigError::new("--log needs a positive grid"));
                    }
                    let (lo, hi) = (min.ln(), max.ln());
                    Ok((0..count)
                        .map(|i| match i {
                            0 => min,
                            _ if i == count - 1 => max,
                            _ => (lo + (hi - lo) * step(i)).exp(),
                        })
                        .collect())
                } else {
                    Ok((0..count)
                        .map(|i| match i {
                            _ if i == count - 1 => max,
                            _ => min + (max - min) * step(i),
                        })
                        .collect())
                }
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// `csv` or `json` to write that format to stdout; anything else is a file path
    #[arg(long)]
    pub out: Option<String>,
    /// Output format (default: from the file extension, else the command's default)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// Stability index in (0, 1)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exponent r > alpha/(1-alpha) for the expv target
    #[arg(long)]
    pub r: Option<f64>,
    /// Evaluation points: min:max:count or a comma-separated list
    #[arg(long, allow_hyphen_values = true)]
    pub grid: GridSpec,
    /// Space a min:max:count grid logarithmically
    #[arg(long)]
    pub log: bool,
    /// Relative tolerance for series and quadrature
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub r: Option<f64>,
    /// Number of draws
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stream id within the seed
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "C")]
    pub curve: Curve,
    /// Number of angles theta_k = pi k / points, k = 0..points-1
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Draws per Monte Carlo check (0: deterministic checks only)
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    /// Monte Carlo chunks; reports depend on this, not on --threads
    #[arg(long, default_value_t = 16)]
    pub chunks: usize,
    /// Worker threads (default: available cores)
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A rejected command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl ConfigError {
    pub fn new(msg: impl Into<String>) -> Self {
        ConfigError(msg.into())
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalKind {
    Pdf,
    Cdf,
    Mellin,
}

impl EvalKind {
    pub fn label(self) -> &'static str {
        match self {
            EvalKind::Pdf => "pdf",
            EvalKind::Cdf => "cdf",
            EvalKind::Mellin => "mellin",
        }
    }
}

/// What to compute, after validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Eval {
        kind: EvalKind,
        target: Target,
        alpha: Option<StabilityIndex>,
        r: Option<f64>,
        points: Vec<f64>,
        series: SeriesPolicy,
        quad: QuadPolicy,
    },
    Sample {
        target: Target,
        alpha: StabilityIndex,
        r: Option<f64>,
        n: usize,
        seed: u64,
        stream: u64,
    },
    Contour {
        alpha: StabilityIndex,
        curve: Curve,
        points: usize,
    },
    Verify {
        suite: String,
        seed: u64,
        n: usize,
        chunks: usize,
        threads: Option<usize>,
    },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub job: Job,
    pub format: Format,
    pub destination: Destination,
}

fn index(alpha: f64) -> Result<StabilityIndex, ConfigError> {
    StabilityIndex::new(alpha).map_err(|e| ConfigError::new(format!("--alpha: {e}")))
}

fn resolve_output(args: &OutputArgs, default: Format) -> (Format, Destination) {
    match args.out.as_deref() {
        None => (args.format.unwrap_or(default), Destination::Stdout),
        Some("csv") => (Format::Csv, Destination::Stdout),
        Some("json") => (Format::Json, Destination::Stdout),
        Some("-") => (args.format.unwrap_or(default), Destination::Stdout),
        Some(path) => {
            let from_ext = match PathBuf::from(path).extension().and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("json") => Some(Format::Json),
                Some(e) if e.eq_ignore_ascii_case("csv") => Some(Format::Csv),
                _ => None,
            };
            (
                args.format.or(from_ext).unwrap_or(default),
                Destination::File(PathBuf::from(path)),
            )
        }
    }
}

fn check_r(alpha: StabilityIndex, r: Option<f64>) -> Result<f64, ConfigError> {
    let a = alpha.value();
    let critical = a / (1.0 - a);
    match r {
        None => Err(ConfigError::new("target expv needs --r")),
        Some(r) if r.is_finite() && r > critical => Ok(r),
        Some(r) => Err(ConfigError::new(format!(
            "--r {r}: expv needs r > alpha/(1-alpha) = {critical}"
        ))),
    }
}

impl CliConfig {
    pub fn from_cli(cli: Cli) -> Result<CliConfig, ConfigError> {
        match cli.command {
            Command::Pdf(a) => Self::eval(EvalKind::Pdf, a),
            Command::Cdf(a) => Self::eval(EvalKind::Cdf, a),
            Command::Mellin(a) => Self::eval(EvalKind::Mellin, a),
            Command::Sample(a) => {
                let alpha = index(a.alpha)?;
                let r = match a.target {
                    Target::Stable | Target::Kanter => None,
                    Target::Expv => Some(check_r(alpha, a.r)?),
                    Target::Free => {
                        return Err(ConfigError::new("no sampler for the free stable law"))
                    }
                    Target::FreeLimit => {
                        return Err(ConfigError::new(
                            "free-limit has infinite mass and cannot be sampled",
                        ))
                    }
                };
                let (format, destination) = resolve_output(&a.output, Format::Csv);
                Ok(CliConfig {
                    job: Job::Sample {
                        target: a.target,
                        alpha,
                        r,
                        n: a.n,
                        seed: a.seed,
                        stream: a.stream,
                    },
                    format,
                    destination,
                })
            }
            Command::Contour(a) => {
                let alpha = index(a.alpha)?;
                if a.points == 0 {
                    return Err(ConfigError::new("--points must be positive"));
                }
                let (format, destination) = resolve_output(&a.output, Format::Csv);
                Ok(CliConfig {
                    job: Job::Contour {
                        alpha,
                        curve: a.curve,
                        points: a.points,
                    },
                    format,
                    destination,
                })
            }
            Command::Verify(a) => {
                if a.suite != "all" && !SUITES.contains(&a.suite.as_str()) {
                    return Err(ConfigError::new(format!(
                        "unknown suite '{}'; expected all or one of {}",
                        a.suite,
                        SUITES.join(", ")
                    )));
                }
                if a.chunks == 0 || a.threads == Some(0) {
                    return Err(ConfigError::new("--chunks and --threads must be positive"));
                }
                let (format, destination) = resolve_output(&a.output, Format::Json);
                Ok(CliConfig {
                    job: Job::Verify {
                        suite: a.suite,
                        seed: a.seed,
                        n: a.n,
                        chunks: a.chunks,
                        threads: a.threads,
                    },
                    format,
                    destination,
                })
            }
        }
    }

    fn eval(kind: EvalKind, a: EvalArgs) -> Result<CliConfig, ConfigError> {
        let alpha = match (a.target, a.alpha) {
            (Target::FreeLimit, _) => None,
            (_, Some(v)) => Some(index(v)?),
            (t, None) => {
                return Err(ConfigError::new(format!(
                    "target {} needs --alpha",
                    t.label()
                )))
            }
        };
        let r = match a.target {
            Target::Expv => Some(check_r(alpha.expect("checked above"), a.r)?),
            _ => None,
        };
        let unsupported = match (kind, a.target) {
            (EvalKind::Cdf, Target::Expv) => Some("no distribution function for expv"),
            (EvalKind::Cdf, Target::FreeLimit) => {
                Some("free-limit has infinite mass and no distribution function")
            }
            (EvalKind::Mellin, Target::Free | Target::FreeLimit) => {
                Some("mellin supports the stable, kanter and expv targets")
            }
            _ => None,
        };
        if let Some(msg) = unsupported {
            return Err(ConfigError::new(msg));
        }
        let mut series = SeriesPolicy::default();
        let mut quad = QuadPolicy::default();
        if let Some(tol) = a.tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(ConfigError::new(format!("--tol {tol} must lie in (0, 1)")));
            }
            series = SeriesPolicy::new(tol, series.abs_tol, series.max_terms)
                .map_err(|e| ConfigError::new(format!("--tol: {e}")))?;
            quad = quad.with_tolerance(tol);
        }
        let points = a.grid.points(a.log)?;
        let (format, destination) = resolve_output(&a.output, Format::Csv);
        Ok(CliConfig {
            job: Job::Eval {
                kind,
                target: a.target,
                alpha,
                r,
                points,
                series,
                quad,
            },
            format,
            destination,
        })
    }
}
