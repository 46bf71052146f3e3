//! Log-trigonometric integrals and the elliptic-function closed forms they equal.
//!
//! The numerical layers (elliptic integrals, modulus inversion, q-series,
//! quadrature) are generic over [`Real`]; the identity catalog and reports
//! work in `f64`.

pub mod catalog;
pub mod elliptic;
pub mod error;
pub mod modulus;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Params = elliptic::EllipticParams<f64>;
pub type Params32 = elliptic::EllipticParams<f32>;
pub type Series = series::SeriesValue<f64>;
pub type Quadrature = quadrature::QuadratureResult<f64>;
pub type Solver = modulus::SolverConfig<f64>;
