//! Flag validation and the values derived from it.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use snyder_core::realizations::{Model, RealizationError};
use snyder_core::series::{parse_series, ParseError, SeriesError, TruncatedSeries};
use snyder_core::verifier::{OracleError, OracleParams};
use snyder_core::weyl::{Algebra, AlgebraError, Metric};

use crate::{MetricKind, Opts};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse { flag: &'static str, text: String, err: ParseError },
    Realization(RealizationError),
    Oracle(OracleError),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Parse { flag, text, err } => write!(f, "{flag} {text:?}: {err}"),
            CliError::Realization(e) => write!(f, "{e}"),
            CliError::Oracle(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        CliError::Realization(e)
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Realization(e.into())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Realization(e.into())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Oracle(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub const DEFAULT_ORDER: usize = 8;

/// Grade and series order after defaults and consistency checks.
#[derive(Clone, Copy, Debug)]
pub struct Truncation {
    pub grade: u32,
    pub order: usize,
}

pub fn require_model(o: &Opts) -> Result<Model> {
    o.model.ok_or_else(|| CliError::Usage("--model is required".into()))
}

/// Resolve `--grade` and `--order` for `model` (`None` for model-free commands).
pub fn truncation(o: &Opts, model: Option<Model>) -> Result<Truncation> {
    let grade = o.grade.or(model.map(Model::default_grade));
    if let (Some(m), Some(g)) = (model, grade) {
        if m.is_kappa() && (g < 2 || g % 2 != 0) {
            return Err(CliError::Usage(format!("model {m} needs an even grade >= 2, got {g}")));
        }
    }
    let half = grade.map_or(0, |g| (g / 2) as usize);
    let order = match o.order {
        Some(k) if o.grade.is_some() && k < half => {
            return Err(CliError::Usage(format!("--order {k} is below grade/2 = {half}")));
        }
        Some(k) => k.max(half),
        None => DEFAULT_ORDER.max(half),
    };
    Ok(Truncation { grade: grade.unwrap_or(0), order })
}

pub fn metric(o: &Opts) -> Result<Metric> {
    let d = o.dim as usize;
    let m = match o.metric {
        MetricKind::Lorentzian => Metric::lorentzian(d),
        MetricKind::Euclidean => Metric::euclidean(d),
    };
    m.map_err(|e| CliError::Usage(e.to_string()))
}

pub fn algebra(o: &Opts, grade: u32) -> Result<Algebra> {
    Ok(Algebra::new(metric(o)?, grade))
}

/// Parse an expression flag to `order`.
pub fn series_flag(flag: &'static str, text: &str, order: usize) -> Result<TruncatedSeries> {
    parse_series(text, order).map_err(|err| CliError::Parse { flag, text: text.to_string(), err })
}

pub fn optional_series(flag: &'static str, text: Option<&str>, order: usize) -> Result<Option<TruncatedSeries>> {
    text.map(|t| series_flag(flag, t, order)).transpose()
}

fn rational(flag: &str, s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| CliError::Usage(format!("{flag}: '{s}' is not a rational number")))
}

pub fn oracle_params(o: &Opts) -> Result<OracleParams> {
    let a = o.a.split(',').map(|s| rational("--a", s)).collect::<Result<Vec<_>>>()?;
    if a.len() > o.dim as usize {
        return Err(CliError::Usage(format!("--a has {} components for dimension {}", a.len(), o.dim)));
    }
    Ok(OracleParams { poly_degree: o.poly_degree, beta: rational("--beta", &o.beta)?, a, ..OracleParams::default() })
}
