//! Executes a validated [`CliConfig`].

use std::f64::consts::PI;
use std::fmt;

use kanter_core::fox_h::{exp_v_pdf, QuadPolicy};
use kanter_core::free_stable::{
    contour_c, contour_omega_boundary, free_limit_pdf, free_stable_cdf, free_stable_pdf,
};
use kanter_core::kanter::{sample_exp_v, sample_kanter, sample_positive_stable};
use kanter_core::numerics::ln_gamma;
use kanter_core::stable_series::{exp_v_mellin, kanter_cdf, kanter_pdf, stable_cdf, stable_pdf};
use kanter_core::verify::{run_suite, MonteCarlo, SuiteConfig};
use kanter_core::{RandomStream, SeriesPolicy, StabilityIndex};
use serde::Serialize;

use crate::config::{CliConfig, Curve, EvalKind, Job, Target};
use crate::output::{csv, emit, json, Cell, Format};
use crate::runner::ThreadPool;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Failure = 1,
    VerificationFailed = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub enum AppError {
    Compute(kanter_core::Error),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Compute(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "write failed: {e}"),
            AppError::Json(e) => write!(f, "JSON encoding failed: {e}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<kanter_core::Error> for AppError {
    fn from(e: kanter_core::Error) -> Self {
        AppError::Compute(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Json(e)
    }
}

#[derive(Serialize)]
struct EvalDocument<'a> {
    command: &'static str,
    target: &'static str,
    alpha: Option<StabilityIndex>,
    r: Option<f64>,
    /// False when the target has infinite mass.
    normalizable: bool,
    points: Vec<serde_json::Map<String, serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct ContourRow {
    theta: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ContourDocument {
    curve: &'static str,
    alpha: StabilityIndex,
    points: Vec<ContourRow>,
}

const FREE_LIMIT_NOTE: &str = "free-limit is the density 1/x on x > 1; it has infinite mass";

/// Non-finite values become `null`.
fn json_number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

/// `E[X_α^{-s}] = Γ(1+s/α)/Γ(1+s)` for `s > -α`.
fn stable_neg_moment(alpha: StabilityIndex, s: f64) -> kanter_core::Result<f64> {
    let (num, _) = ln_gamma(1.0 + s / alpha.value())?;
    let (den, _) = ln_gamma(1.0 + s)?;
    Ok((num - den).exp())
}

fn evaluate(
    kind: EvalKind,
    target: Target,
    alpha: Option<StabilityIndex>,
    r: Option<f64>,
    x: f64,
    series: &SeriesPolicy,
    quad: &QuadPolicy,
) -> kanter_core::Result<f64> {
    let a = || alpha.expect("validated: target needs alpha");
    match (kind, target) {
        (EvalKind::Pdf, Target::Stable) if x <= 0.0 => Ok(0.0),
        (EvalKind::Pdf, Target::Stable) => stable_pdf(a(), x, series),
        (EvalKind::Pdf, Target::Kanter) => kanter_pdf(a(), x, series),
        (EvalKind::Pdf, Target::Free) => Ok(free_stable_pdf(a(), x)),
        (EvalKind::Pdf, Target::Expv) if x <= 0.0 => Ok(0.0),
        (EvalKind::Pdf, Target::Expv) => exp_v_pdf(a(), r.expect("validated"), x, quad),
        (EvalKind::Pdf, Target::FreeLimit) => Ok(free_limit_pdf(x)),
        (EvalKind::Cdf, Target::Stable) => stable_cdf(a(), x),
        (EvalKind::Cdf, Target::Kanter) => Ok(kanter_cdf(a(), x)),
        (EvalKind::Cdf, Target::Free) => free_stable_cdf(a(), x),
        (EvalKind::Mellin, Target::Stable) => stable_neg_moment(a(), x),
        (EvalKind::Mellin, Target::Kanter) => {
            let v = a().value();
            exp_v_mellin(a(), v / (1.0 - v), x)
        }
        (EvalKind::Mellin, Target::Expv) => exp_v_mellin(a(), r.expect("validated"), x),
        (EvalKind::Cdf, Target::Expv | Target::FreeLimit)
        | (EvalKind::Mellin, Target::Free | Target::FreeLimit) => {
            unreachable!("rejected during validation")
        }
    }
}

/// Renders the artifact for `config` and the status it should exit with.
pub fn render(config: &CliConfig) -> Result<(String, ExitStatus), AppError> {
    let format = config.format;
    match config.job {
        Job::Eval {
            kind,
            target,
            alpha,
            r,
            ref points,
            ref series,
            ref quad,
        } => {
            let values = points
                .iter()
                .map(|&x| evaluate(kind, target, alpha, r, x, series, quad))
                .collect::<Result<Vec<_>, _>>()?;
            let note = (target == Target::FreeLimit).then_some(FREE_LIMIT_NOTE);
            let header = match kind {
                EvalKind::Mellin => ["s", "value"],
                _ => ["x", "value"],
            };
            let text = match format {
                Format::Csv => {
                    if let Some(n) = note {
                        eprintln!("note: {n}");
                    }
                    let rows: Vec<_> = points
                        .iter()
                        .zip(&values)
                        .map(|(&x, &v)| vec![Cell::Real(x), Cell::Real(v)])
                        .collect();
                    csv(&header, &rows)
                }
                Format::Json => json(&EvalDocument {
                    command: kind.label(),
                    target: target.label(),
                    alpha,
                    r,
                    normalizable: target != Target::FreeLimit,
                    points: points
                        .iter()
                        .zip(&values)
                        .map(|(&x, &value)| {
                            let mut m = serde_json::Map::new();
                            m.insert(String::from(header[0]), json_number(x));
                            m.insert(String::from(header[1]), json_number(value));
                            m
                        })
                        .collect(),
                    note,
                })?,
            };
            Ok((text, ExitStatus::Ok))
        }
        Job::Sample {
            target,
            alpha,
            r,
            n,
            seed,
            stream,
        } => {
            let mut rng = RandomStream::new(seed, stream);
            let batch = match target {
                Target::Stable => sample_positive_stable(alpha, n, &mut rng),
                Target::Kanter => sample_kanter(alpha, n, &mut rng),
                Target::Expv => sample_exp_v(alpha, r.expect("validated"), n, &mut rng)?,
                Target::Free | Target::FreeLimit => unreachable!("rejected during validation"),
            };
            if let Some(w) = batch.warning {
                eprintln!("warning: {w}");
            }
            let text = match format {
                Format::Csv => {
                    let rows: Vec<_> = batch
                        .values
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| vec![Cell::Count(i as u64), Cell::Real(v)])
                        .collect();
                    csv(&["index", "value"], &rows)
                }
                Format::Json => json(&batch)?,
            };
            Ok((text, ExitStatus::Ok))
        }
        Job::Contour {
            alpha,
            curve,
            points,
        } => {
            let rows = (0..points)
                .map(|k| {
                    let theta = PI * k as f64 / points as f64;
                    let p = match curve {
                        Curve::C => contour_c(alpha, theta),
                        Curve::Omega => contour_omega_boundary(alpha, theta),
                    }?;
                    Ok(ContourRow {
                        theta,
                        re: p.u.re,
                        im: p.u.im,
                    })
                })
                .collect::<kanter_core::Result<Vec<_>>>()?;
            let text = match format {
                Format::Csv => csv(
                    &["theta", "re", "im"],
                    &rows
                        .iter()
                        .map(|p| vec![Cell::Real(p.theta), Cell::Real(p.re), Cell::Real(p.im)])
                        .collect::<Vec<_>>(),
                ),
                Format::Json => json(&ContourDocument {
                    curve: match curve {
                        Curve::C => "C",
                        Curve::Omega => "omega",
                    },
                    alpha,
                    points: rows,
                })?,
            };
            Ok((text, ExitStatus::Ok))
        }
        Job::Verify {
            ref suite,
            seed,
            n,
            chunks,
            threads,
        } => {
            let pool = threads.map_or_else(ThreadPool::available, ThreadPool::new);
            let mc = MonteCarlo::new(pool, chunks);
            let reports = run_suite(suite, &SuiteConfig { seed, n }, &mc)?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            eprintln!("{} checks, {failed} failed", reports.len());
            let text = match format {
                Format::Json => json(&reports)?,
                Format::Csv => {
                    let rows: Vec<_> = reports
                        .iter()
                        .map(|r| {
                            vec![
                                Cell::Text(r.check_name.clone()),
                                Cell::Real(r.statistic),
                                Cell::Real(r.reference),
                                Cell::Real(r.tolerance),
                                Cell::Count(r.n_samples),
                                Cell::Text(String::from(if r.passed { "true" } else { "false" })),
                                Cell::Text(r.diagnostics.clone()),
                            ]
                        })
                        .collect();
                    csv(
                        &[
                            "check_name",
                            "statistic",
                            "reference",
                            "tolerance",
                            "n_samples",
                            "passed",
                            "diagnostics",
                        ],
                        &rows,
                    )
                }
            };
            let status = if failed > 0 {
                ExitStatus::VerificationFailed
            } else {
                ExitStatus::Ok
            };
            Ok((text, status))
        }
    }
}

/// Renders and writes; errors are reported on stderr.
pub fn run(config: &CliConfig) -> ExitStatus {
    match render(config).and_then(|(text, status)| {
        emit(&config.destination, &text)?;
        Ok(status)
    }) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::Failure
        }
    }
}
