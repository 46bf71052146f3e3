//! Quadrature for the log-trigonometric integrands.
//!
//! Three engines live here: a globally adaptive 21-point Gauss–Kronrod rule for
//! smooth panels, a tanh-sinh rule used as an independent oracle, and the
//! endpoint transform that maps the `ln(2 cos x)` singularity onto a damped
//! periodic tail.

mod endpoint;
mod kronrod;
mod tanh_sinh;

use thiserror::Error;

pub use endpoint::{integrate_endpoint_oscillatory, jump_points_arctan, EndpointOscillation, LogMap};
pub use kronrod::{integrate_adaptive, integrate_adaptive_with, QuadratureOptions};
pub use tanh_sinh::integrate_tanh_sinh;

/// Outcome of one integration run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    /// A-posteriori bound built from nested-rule differences plus a rounding floor.
    pub error_estimate: T,
    pub evaluations: usize,
    pub subdivisions: usize,
}

impl<T: crate::Real> QuadratureResult<T> {
    pub(crate) fn merge(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            subdivisions: self.subdivisions + other.subdivisions,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QuadratureError<T: std::fmt::Debug + std::fmt::Display + std::fmt::LowerExp> {
    /// Subdivision budget exhausted before the requested tolerance was met.
    #[error("tolerance {requested:e} not reached; best estimate {} ± {:e}", best.value, best.error_estimate)]
    Accuracy { best: QuadratureResult<T>, requested: T },
    #[error("invalid interval [{a}, {b}]: {reason}")]
    InvalidInterval { a: T, b: T, reason: &'static str },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: T },
}

impl<T> From<QuadratureError<T>> for crate::Error
where
    T: crate::Real,
{
    fn from(e: QuadratureError<T>) -> Self {
        match e {
            QuadratureError::Accuracy { best, requested } => crate::Error::Accuracy {
                value: best.value.to_f64_lossy(),
                error_estimate: best.error_estimate.to_f64_lossy(),
                requested: requested.to_f64_lossy(),
            },
            other => crate::Error::Domain(other.to_string()),
        }
    }
}
