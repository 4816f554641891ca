//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A quaternion with zero norm cannot be normalized.
    #[error("cannot normalize a zero-norm quaternion")]
    ZeroNorm,

    /// A time argument fell outside the update interval.
    #[error("time {t} s outside the interval [0, {interval}] s")]
    TimeOutOfInterval { t: f64, interval: f64 },

    /// Requested fit degree exceeds what the sample count supports.
    #[error("fit degree {degree} exceeds the maximum N - 1 = {max} for {n_samples} samples")]
    FitDegreeTooHigh {
        degree: usize,
        max: usize,
        n_samples: usize,
    },

    /// The least-squares design matrix did not have full column rank.
    #[error("rank-deficient design matrix: rank {rank} < {cols} columns")]
    RankDeficientFit { rank: usize, cols: usize },

    /// An iteration state and a rate fit disagree on the interval length.
    #[error("interval length mismatch: state {state} s vs fit {fit} s")]
    IntervalMismatch { state: f64, fit: f64 },

    /// The iteration produced non-finite coefficients.
    #[error("iteration diverged: non-finite coefficients at iteration {iteration}")]
    Diverged { iteration: usize },

    /// The Rodrigues-vector iteration is outside its contraction region.
    #[error("contraction guard violated: interval * sup|omega| = {product:.6} >= 2")]
    ContractionGuard { product: f64 },

    /// An operation that requires unit quaternions received a non-unit one.
    #[error("expected a unit quaternion, got norm {norm}")]
    NotUnit { norm: f64 },

    /// A failure attributed to one update interval of a long run.
    #[error("update interval {index}: {source}")]
    Interval {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// Invalid value for a domain type or configuration field.
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    /// Malformed input file.
    #[error("{path}:{line}: {why}")]
    Parse {
        path: String,
        line: usize,
        why: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wrap an error with the index of the update interval it occurred in.
    pub fn in_interval(self, index: usize) -> Self {
        Error::Interval {
            index,
            source: Box::new(self),
        }
    }

    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}
