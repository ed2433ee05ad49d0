use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("{0} is an atom and has no density")]
    NoDensity(&'static str),

    #[error("quadrature did not converge: estimate {value:e} with error {error:e} > requested {requested:e}")]
    Quadrature { value: f64, error: f64, requested: f64 },

    #[error("series did not converge after {terms} terms (last term {last_term:e}, band {band})")]
    SeriesNonConvergence { terms: usize, last_term: f64, band: usize },

    #[error("threshold {eps_th:e} W is at or above saturation {pm:e} W; coverage is zero")]
    CoverageZero { eps_th: f64, pm: f64 },

    #[error("invalid parameter {field}: {msg}")]
    InvalidParameter { field: &'static str, msg: String },
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { func, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
