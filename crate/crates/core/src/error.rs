use thiserror::Error;

/// Errors raised by the elliptic, series and catalog layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("complete elliptic integral K diverges at k = 1")]
    Divergence,
    #[error("modulus solver did not converge in {iterations} iterations; last bracket [{lo}, {hi}]")]
    Solver { iterations: usize, lo: f64, hi: f64 },
    #[error("quadrature did not reach tolerance {requested:e}: best estimate {value} ± {error_estimate:e}")]
    Accuracy {
        value: f64,
        error_estimate: f64,
        requested: f64,
    },
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("case {case} rejects parameters {params}: requires {requirement}")]
    OutOfDomain {
        case: String,
        params: String,
        requirement: String,
    },
    #[error("missing parameter `{name}` for case {case}")]
    MissingParameter { case: String, name: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
