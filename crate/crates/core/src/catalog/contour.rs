use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_endpoint_oscillatory, EndpointOscillation, LogMap};

/// Result of [`contour_trace`].
#[derive(Clone, Debug, PartialEq)]
pub struct ContourTrace {
    pub alpha: f64,
    /// `(1/8i) ∮_C dz / ((1 - e^{-z}) cos(z/(2α)))`.
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Samples `(x, Re z, Im z)` of the path, symmetric about `x = 0`.
    pub points: Vec<(f64, f64, f64)>,
}

/// Evaluates the path integral along `z(x) = ln(2 cos x) + ix`, `x ∈ (-π/2, π/2)`.
///
/// `n_points` (at least 64) only controls the exported path samples; it is
/// rounded up to an odd count so that `x = 0` is among them.
pub fn contour_trace(alpha: f64, n_points: usize, tol: f64) -> Result<ContourTrace> {
    if !(alpha > LN_2 / PI) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "contour_trace requires alpha > ln2/pi, got {alpha}"
        )));
    }
    if n_points < 64 {
        return Err(Error::Domain(format!(
            "contour_trace needs at least 64 points, got {n_points}"
        )));
    }
    let n = n_points | 1;
    let step = PI / n as f64;
    let points = (0..n)
        .map(|j| {
            let x = -FRAC_PI_2 + (j as f64 + 0.5) * step;
            let x = if 2 * j + 1 == n { 0.0 } else { x };
            (x, (2.0 * x.cos()).ln(), x)
        })
        .collect();

    // dz = (i - tan x) dx, and tan x · e^z = 2 sin x · e^{ix}.
    let h = move |x: f64, l: f64| {
        let z = Complex64::new(l, x);
        let ez = z.exp();
        let num = Complex64::i() * ez - 2.0 * x.sin() * Complex64::new(0.0, x).exp();
        num / ((ez - 1.0) * Complex64::new(0.0, 8.0) * (z / (2.0 * alpha)).cos())
    };
    let folded = move |x: f64, l: f64| h(x, l) + h(-x, l);
    let osc = EndpointOscillation::new(LogMap::LogCos, alpha).with_frequency(0.5);
    let re = integrate_endpoint_oscillatory(|x, l| folded(x, l).re, 0.0, FRAC_PI_2, &osc, &[], tol)?;
    let im = integrate_endpoint_oscillatory(|x, l| folded(x, l).im, 0.0, FRAC_PI_2, &osc, &[], tol)?;
    Ok(ContourTrace {
        alpha,
        value: Complex64::new(re.value, im.value),
        error_estimate: re.error_estimate.hypot(im.error_estimate),
        evaluations: re.evaluations + im.evaluations,
        points,
    })
}

/// Number of poles of `1/((z + iθ - a)(1 - e^{-z}))` enclosed by the path.
///
/// `z = 0` is always inside; `z = a - iθ` is inside exactly when `a < ln(2 cos θ)`.
pub fn residue_count_appa(theta: f64, a: f64) -> Result<u8> {
    if !(theta.abs() < FRAC_PI_2) || !a.is_finite() {
        return Err(Error::Domain(format!(
            "residue_count_appa requires |theta| < pi/2, got {theta}"
        )));
    }
    let edge = (2.0 * theta.cos()).ln();
    if a == edge {
        return Err(Error::Domain(format!(
            "a = ln(2 cos theta) = {edge} puts the pole on the path"
        )));
    }
    Ok(if a < edge { 2 } else { 1 })
}
