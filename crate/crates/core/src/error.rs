use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The target value could not be bracketed.
    #[error("could not bracket target {target} (last interval [{lo}, {hi}])")]
    Bracket { target: f64, lo: f64, hi: f64 },

    /// An iterative method hit its iteration cap.
    #[error("no convergence after {iterations} iterations (bracket [{lo}, {hi}], best {best})")]
    Convergence {
        iterations: usize,
        lo: f64,
        hi: f64,
        best: f64,
    },

    /// Too few tail events for a reliable quantile estimate.
    #[error("only {tail_events} samples below the quantile (need at least {required}); increase n_samples")]
    Precision { tail_events: usize, required: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors raised by numerical routines rather than bad input or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Bracket { .. } | Error::Convergence { .. } | Error::Precision { .. }
        )
    }
}
