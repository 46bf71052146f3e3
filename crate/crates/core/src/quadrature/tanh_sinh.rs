use crate::scalar::{CompensatedSum, Real};

use super::{QuadratureError, QuadratureResult};

const MAX_LEVEL: usize = 12;

/// Tanh-sinh (double exponential) quadrature on `[a, b]`.
///
/// Step halving continues until two successive levels agree to `tol`
/// relative. Nodes are placed by their distance to the nearest endpoint, so
/// integrable endpoint singularities are never sampled exactly.
pub fn integrate_tanh_sinh<T, F>(mut f: F, a: T, b: T, tol: T) -> Result<QuadratureResult<T>, QuadratureError<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(QuadratureError::InvalidInterval {
            a,
            b,
            reason: "requires finite a < b",
        });
    }
    let half = (b - a) * T::lit(0.5);
    let center = (a + b) * T::lit(0.5);
    let pi_2 = T::FRAC_PI_2();
    // Past this the node distance underflows.
    let t_max = (-T::min_positive_value().ln() / T::PI()).asinh();

    let mut evaluations = 1usize;
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFinite { x: center });
    }
    let mut sum = CompensatedSum::new();
    sum.add(pi_2 * fc);
    let mut h = T::one();
    let mut previous: Option<T> = None;
    let mut estimate = T::zero();
    for level in 0..=MAX_LEVEL {
        // Level 0 samples all integer multiples of h = 1; finer levels add the odd multiples.
        let (step, start) = if level == 0 {
            (T::one(), T::one())
        } else {
            (h * T::lit(2.0), h)
        };
        let mut t = start;
        while t <= t_max {
            let u = pi_2 * t.sinh();
            let cu = u.cosh();
            let dist = half * (-u).exp() / cu;
            let w = pi_2 * t.cosh() / (cu * cu);
            if dist == T::zero() || w == T::zero() {
                break;
            }
            // Each side is kept only while its node is distinct from the endpoint.
            for x in [a + dist, b - dist] {
                if x > a && x < b {
                    let fx = f(x);
                    evaluations += 1;
                    if !fx.is_finite() {
                        return Err(QuadratureError::NonFinite { x });
                    }
                    sum.add(w * fx);
                }
            }
            t = t + step;
        }
        estimate = sum.value() * h * half;
        if let Some(prev) = previous {
            let diff = (estimate - prev).abs();
            if level >= 3 && diff <= tol * estimate.abs() {
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate: diff.max(T::epsilon() * estimate.abs()),
                    evaluations,
                    subdivisions: level,
                });
            }
        }
        previous = Some(estimate);
        h = h * T::lit(0.5);
    }
    Err(QuadratureError::Accuracy {
        best: QuadratureResult {
            value: estimate,
            error_estimate: (estimate - previous.unwrap_or(estimate)).abs(),
            evaluations,
            subdivisions: MAX_LEVEL,
        },
        requested: tol,
    })
}
