use hankel_core::bounds::BoundsError;
use hankel_core::hankel::HankelError;
use hankel_core::rationality::RationalityError;
use hankel_core::sequences::SeriesError;

/// Failures that end a command; each maps to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("precision exhausted for {series} (n = {n}, r = {r}) at {bits} bits")]
    PrecisionExhausted { series: String, n: usize, r: i64, bits: u32 },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub const EXIT_HARD_CHECK_FAILED: i32 = 1;
pub const EXIT_PRECISION_EXHAUSTED: i32 = 2;
pub const EXIT_INVALID_SERIES: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PrecisionExhausted { .. } => EXIT_PRECISION_EXHAUSTED,
            CliError::InvalidSeries(_) => EXIT_INVALID_SERIES,
            CliError::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        }
    }

    pub(crate) fn from_series(e: SeriesError) -> Self {
        match e {
            SeriesError::Numerics(e) => CliError::Computation(e.to_string()),
            SeriesError::PrecisionExhausted => CliError::Computation(e.to_string()),
            other => CliError::InvalidSeries(other.to_string()),
        }
    }

    pub(crate) fn from_hankel(series: &str, e: HankelError) -> Self {
        match e {
            HankelError::PrecisionExhausted(last) => CliError::PrecisionExhausted {
                series: series.into(),
                n: last.n,
                r: last.r,
                bits: last.bits_used,
            },
            HankelError::InvalidQuery(m) | HankelError::EngineUnavailable(m) => CliError::InvalidConfig(m),
            HankelError::NotRationalSeries(_) | HankelError::NotDirichletKind(_) => {
                CliError::InvalidSeries(e.to_string())
            }
            HankelError::Series(s) => CliError::from_series(s),
            other => CliError::Computation(other.to_string()),
        }
    }

    pub(crate) fn from_bounds(series: &str, e: BoundsError) -> Self {
        match e {
            BoundsError::Hankel(h) => CliError::from_hankel(series, h),
            BoundsError::Series(s) => CliError::from_series(s),
            BoundsError::InvalidQuery(m) => CliError::InvalidConfig(m),
            BoundsError::EnvelopeDomainViolated { .. } => CliError::InvalidConfig(e.to_string()),
            BoundsError::NoPositivity(_) | BoundsError::Degenerate(_) => CliError::InvalidSeries(e.to_string()),
            BoundsError::Numerics(n) => CliError::Computation(n.to_string()),
        }
    }

    pub(crate) fn from_rationality(series: &str, e: RationalityError) -> Self {
        match e {
            RationalityError::Hankel(h) => CliError::from_hankel(series, h),
            RationalityError::NotRationalSeries(_) => CliError::InvalidSeries(e.to_string()),
            RationalityError::OffsetTooSmall { .. } | RationalityError::InvalidQuery(_) => {
                CliError::InvalidConfig(e.to_string())
            }
            other => CliError::Computation(other.to_string()),
        }
    }
}
