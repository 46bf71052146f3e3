//! Complete elliptic integrals through the arithmetic-geometric mean.
//!
//! `K(k) = π / (2·agm(1, k'))` and `E(k) = K(k)·(1 - Σ 2^{n-1} c_n²)` with the
//! companion sequence `c_0 = k`, `c_{n+1} = c_n² / (4 a_{n+1})`. Every routine
//! here works from the pair `(k, k')` so that neither modulus loses relative
//! accuracy when the other is close to one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::integrate_tanh_sinh;
use crate::scalar::Real;

const MAX_AGM_STEPS: usize = 64;

/// The parameter bundle every closed form consumes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipticParams<T> {
    /// `K'/K`.
    pub alpha: T,
    pub k: T,
    pub k_prime: T,
    pub big_k: T,
    pub big_k_prime: T,
    pub big_e: T,
    pub big_e_prime: T,
    /// Nome `e^{-πα}`.
    pub q: T,
}

struct AgmRun<T> {
    mean: T,
    /// `Σ_{n≥0} 2^{n-1} c_n²`.
    companion: T,
}

fn agm_run<T: Real>(a0: T, b0: T, c0: T) -> AgmRun<T> {
    let four_eps = T::lit(4.0) * T::epsilon();
    let (mut a, mut b, mut c) = (a0, b0, c0);
    let mut weight = T::lit(0.5);
    let mut companion = weight * c * c;
    for _ in 0..MAX_AGM_STEPS {
        if (a - b).abs() <= four_eps * a {
            break;
        }
        let a_next = (a + b) * T::lit(0.5);
        let b_next = (a * b).sqrt();
        c = c * c / (T::lit(4.0) * a_next);
        weight = weight + weight;
        companion = companion + weight * c * c;
        a = a_next;
        b = b_next;
    }
    AgmRun { mean: a, companion }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm<T: Real>(a: T, b: T) -> Result<T> {
    if !(a > T::zero() && b > T::zero()) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "agm requires positive finite arguments, got ({a}, {b})"
        )));
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    Ok(agm_run(hi, lo, T::zero()).mean)
}

fn complement<T: Real>(k: T) -> T {
    ((T::one() - k) * (T::one() + k)).sqrt()
}

fn k_from_pair<T: Real>(k_prime: T) -> T {
    T::FRAC_PI_2() / agm_run(T::one(), k_prime, T::zero()).mean
}

fn ke_from_pair<T: Real>(k: T, k_prime: T) -> (T, T) {
    let run = agm_run(T::one(), k_prime, k);
    let big_k = T::FRAC_PI_2() / run.mean;
    (big_k, big_k * (T::one() - run.companion))
}

/// Complete elliptic integral of the first kind.
pub fn complete_k<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero()) {
        return Err(Error::Domain(format!("complete_k requires k >= 0, got {k}")));
    }
    if k >= T::one() {
        return Err(Error::Divergence);
    }
    Ok(k_from_pair(complement(k)))
}

/// Complete elliptic integral of the second kind.
pub fn complete_e<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero() && k <= T::one()) {
        return Err(Error::Domain(format!("complete_e requires 0 <= k <= 1, got {k}")));
    }
    if k == T::one() {
        return Ok(T::one());
    }
    Ok(ke_from_pair(k, complement(k)).1)
}

/// The defining integral of `K` evaluated by tanh-sinh quadrature.
///
/// This route shares nothing with the AGM code and exists to cross-check it.
pub fn oracle_k_quadrature<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero()) {
        return Err(Error::Domain(format!("oracle_k_quadrature requires k >= 0, got {k}")));
    }
    if k >= T::one() {
        return Err(Error::Divergence);
    }
    let kp2 = (T::one() - k) * (T::one() + k);
    let tol = T::epsilon().sqrt() * T::epsilon().sqrt().sqrt();
    let r = integrate_tanh_sinh(
        |phi: T| {
            let (s, c) = phi.sin_cos();
            (c * c + kp2 * s * s).sqrt().recip()
        },
        T::zero(),
        T::FRAC_PI_2(),
        tol,
    )?;
    Ok(r.value)
}

impl<T: Real> EllipticParams<T> {
    /// Builds the bundle from a modulus and its complement, which the caller
    /// guarantees satisfy `k² + k'² = 1`.
    pub(crate) fn from_pair(k: T, k_prime: T) -> Self {
        let (big_k, big_e) = ke_from_pair(k, k_prime);
        let (big_k_prime, big_e_prime) = ke_from_pair(k_prime, k);
        let alpha = big_k_prime / big_k;
        Self {
            alpha,
            k,
            k_prime,
            big_k,
            big_k_prime,
            big_e,
            big_e_prime,
            q: (-T::PI() * alpha).exp(),
        }
    }

    /// Swaps the roles of `k` and `k'`, which maps `α` to `1/α`.
    pub fn complementary(&self) -> Self {
        let alpha = self.big_k / self.big_k_prime;
        Self {
            alpha,
            k: self.k_prime,
            k_prime: self.k,
            big_k: self.big_k_prime,
            big_k_prime: self.big_k,
            big_e: self.big_e_prime,
            big_e_prime: self.big_e,
            q: (-T::PI() * alpha).exp(),
        }
    }

    /// `E·K' + E'·K - K·K' - π/2`, zero up to rounding.
    pub fn legendre_residual(&self) -> T {
        self.big_e * self.big_k_prime + self.big_e_prime * self.big_k - self.big_k * self.big_k_prime - T::FRAC_PI_2()
    }
}

/// Fills every field of [`EllipticParams`] from the modulus.
pub fn params_from_modulus<T: Real>(k: T) -> Result<EllipticParams<T>> {
    if !(k > T::zero() && k < T::one()) {
        return Err(Error::Domain(format!(
            "params_from_modulus requires 0 < k < 1, got {k}"
        )));
    }
    Ok(EllipticParams::from_pair(k, complement(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    // Reference values from the defining integrals at k = 1/√2, computed by
    // tanh-sinh quadrature in 30-digit arithmetic.
    const K_HALF: f64 = 1.854_074_677_301_371_918_4;
    const E_HALF: f64 = 1.350_643_881_047_675_502_5;

    #[test]
    fn agm_fixed_points() {
        assert_eq!(agm(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(agm(4.0, 4.0).unwrap(), 4.0);
    }

    #[test]
    fn agm_symmetric_and_defines_k() {
        let a = agm(1.0, FRAC_1_SQRT_2).unwrap();
        assert_eq!(a, agm(FRAC_1_SQRT_2, 1.0).unwrap());
        assert!((PI / (2.0 * a) - K_HALF).abs() < 1e-14);
    }

    #[test]
    fn agm_rejects_nonpositive() {
        assert!(matches!(agm(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(agm(1.0, -2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn k_values_and_errors() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!((complete_k(FRAC_1_SQRT_2).unwrap() - K_HALF).abs() < 1e-14);
        assert!(complete_k(0.9999).unwrap() > complete_k(0.999).unwrap());
        assert_eq!(complete_k(1.0), Err(Error::Divergence));
        assert!(matches!(complete_k(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn e_values_and_errors() {
        assert!((complete_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(complete_e(1.0).unwrap(), 1.0);
        assert!((complete_e(FRAC_1_SQRT_2).unwrap() - E_HALF).abs() < 1e-14);
        assert!(matches!(complete_e(1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn oracle_agrees_with_agm() {
        assert!((oracle_k_quadrature(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        for (k, tol) in [(0.3, 1e-12), (0.95, 1e-11), (FRAC_1_SQRT_2, 1e-13)] {
            let d = (oracle_k_quadrature(k).unwrap() - complete_k(k).unwrap()).abs();
            assert!(d <= tol, "k = {k}: {d:e}");
        }
    }

    #[test]
    fn params_at_lemniscatic_point() {
        let p = params_from_modulus(FRAC_1_SQRT_2).unwrap();
        assert!((p.alpha - 1.0).abs() < 1e-15);
        assert!((p.k_prime - FRAC_1_SQRT_2).abs() <= f64::EPSILON);
        assert_eq!(p.q, (-PI * p.alpha).exp());
    }

    #[test]
    fn params_legendre_at_point_three() {
        let p = params_from_modulus(0.3_f64).unwrap();
        assert!(p.legendre_residual().abs() <= 1e-12);
        assert!((p.k * p.k + p.k_prime * p.k_prime - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn params_reject_endpoints() {
        assert!(params_from_modulus(0.0).is_err());
        assert!(params_from_modulus(1.0).is_err());
    }

    #[test]
    fn complementary_inverts_alpha() {
        let p = params_from_modulus(0.2_f64).unwrap();
        let c = p.complementary();
        assert!((c.alpha * p.alpha - 1.0).abs() < 1e-14);
        assert_eq!(c.complementary().k, p.k);
    }

    #[test]
    fn single_precision_k() {
        let k = complete_k(FRAC_1_SQRT_2 as f32).unwrap();
        assert!((k as f64 - K_HALF).abs() < 1e-6);
    }
}
