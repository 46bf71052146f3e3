//! q-products, Lambert series and hyperbolic sums, each with a certified direct
//! summation and (where one exists) its elliptic closed form.

mod gamma;
mod jacobi;

pub use gamma::gamma_fn;
pub use jacobi::{cn_imag_third, jacobi_cn, jacobi_cn_pair};

use serde::Serialize;

use crate::elliptic::EllipticParams;
use crate::scalar::{CompensatedSum, Real};

const MAX_TERMS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue<T> {
    /// Truncated direct summation.
    pub direct: T,
    /// Elliptic closed form, or `None` when the series has none.
    pub closed: Option<T>,
    /// Geometric majorant of everything dropped from `direct`.
    pub tail_bound: T,
    pub terms_used: usize,
}

impl<T: Real> SeriesValue<T> {
    /// `|direct - closed|`, if there is a closed form.
    pub fn discrepancy(&self) -> Option<T> {
        self.closed.map(|c| (self.direct - c).abs())
    }
}

/// Sums `term(m, x0 + m·step)` for `m = 0, 1, …`.
///
/// `tail(x)` must bound `Σ_{m≥0} |term(x + m·step)|` (or return infinity when
/// no bound is available yet). Summation stops once the bound on the rest is
/// below half an ulp of the running sum.
fn geometric_sum<T: Real>(x0: T, step: T, term: impl Fn(usize, T) -> T, tail: impl Fn(T) -> T) -> (T, T, usize) {
    let mut acc = CompensatedSum::<T>::new();
    let mut n = 0usize;
    loop {
        let x = x0 + step * T::from_usize_lossy(n);
        let rest = tail(x);
        let sum = acc.value();
        if rest <= T::epsilon() * T::lit(0.5) * sum.abs() || rest <= T::min_positive_value() || n >= MAX_TERMS {
            return (sum, rest, n);
        }
        acc.add(term(n, x));
        n += 1;
    }
}

/// Bound on `Σ_{m≥0} scale·e^{-p(x+m·step)} / (1 - r e^{-p·x})^d`, the shape
/// shared by every majorant below.
fn exp_tail<T: Real>(x: T, step: T, p: T, scale: T, r: T, d: i32) -> T {
    let e = (-p * x).exp();
    let denom = T::one() - r * e;
    if denom <= T::zero() {
        return T::infinity();
    }
    scale * e / (denom.powi(d) * -(-p * step).exp_m1())
}

fn exp_pi_alpha<T: Real>(p: &EllipticParams<T>) -> T {
    T::PI() * p.alpha
}

/// `∏_{n≥1} (1 - e^{-2παn})`.
pub fn product_one_minus<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let c = T::lit(2.0) * exp_pi_alpha(p);
    // |ln(1 - u)| ≤ u/(1 - u)
    let (log_sum, log_tail, n) = geometric_sum(
        c,
        c,
        |_, x| (-(-x).exp()).ln_1p(),
        |x| exp_tail(x, c, T::one(), T::one(), T::one(), 1),
    );
    let direct = log_sum.exp();
    let pi3 = T::PI().powi(3);
    let closed = (exp_pi_alpha(p) / T::lit(12.0)).exp()
        * (T::lit(2.0) * p.k * p.k_prime * p.big_k.powi(3) / pi3).powf(T::lit(6.0).recip());
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound: direct * log_tail.exp_m1(),
        terms_used: n,
    }
}

/// `∏_{n≥1} (1 + e^{-παn})`.
pub fn product_one_plus<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let c = exp_pi_alpha(p);
    let (log_sum, log_tail, n) = geometric_sum(
        c,
        c,
        |_, x| (-x).exp().ln_1p(),
        |x| exp_tail(x, c, T::one(), T::one(), T::zero(), 1),
    );
    let direct = log_sum.exp();
    let closed = (c / T::lit(24.0)).exp() * (p.k.sqrt() / (T::lit(2.0) * p.k_prime)).powf(T::lit(6.0).recip());
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound: direct * log_tail.exp_m1(),
        terms_used: n,
    }
}

/// `Σ_{n≥0} (-1)^n / (e^{πα(2n+1)} - 1)`.
pub fn lambert_alternating<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let c = exp_pi_alpha(p);
    let step = T::lit(2.0) * c;
    let (direct, tail_bound, n) = geometric_sum(
        c,
        step,
        |m, x| {
            let sign = if m % 2 == 0 { T::one() } else { -T::one() };
            sign / x.exp_m1()
        },
        |x| exp_tail(x, step, T::one(), T::one(), T::one(), 1),
    );
    SeriesValue {
        direct,
        closed: Some(p.big_k / (T::lit(2.0) * T::PI()) - T::lit(0.25)),
        tail_bound,
        terms_used: n,
    }
}

fn inv_sinh2<T: Real>(x: T) -> T {
    let s = x.sinh();
    (s * s).recip()
}

// 1/sinh² x = 4e^{-2x}/(1 - e^{-2x})²
fn sinh2_tail<T: Real>(x: T, step: T) -> T {
    exp_tail(x, step, T::lit(2.0), T::lit(4.0), T::one(), 2)
}

/// `Σ_{n≥1} 1/sinh²(παn)`.
pub fn sinh2_sum_integer<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let c = exp_pi_alpha(p);
    let (direct, tail_bound, n) = geometric_sum(c, c, |_, x| inv_sinh2(x), |x| sinh2_tail(x, c));
    let pi2 = T::PI() * T::PI();
    let (k, kk, e) = (p.k, p.big_k, p.big_e);
    let closed = T::lit(6.0).recip() - T::lit(2.0) * kk * e / pi2
        + T::lit(2.0) * (T::lit(2.0) - k * k) * kk * kk / (T::lit(3.0) * pi2);
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound,
        terms_used: n,
    }
}

/// `Σ_{n≥0} 1/sinh²(πα(2n+1)/2)`.
pub fn sinh2_sum_odd<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let c = exp_pi_alpha(p);
    let (direct, tail_bound, n) = geometric_sum(c * T::lit(0.5), c, |_, x| inv_sinh2(x), |x| sinh2_tail(x, c));
    let closed = T::lit(2.0) * p.big_k * (p.big_k - p.big_e) / (T::PI() * T::PI());
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound,
        terms_used: n,
    }
}

// 1/(s·cosh x + d) ≤ (2/s)e^{-x}/(1 - (2|d|/s)e^{-x})
fn cosh_tail<T: Real>(x: T, step: T, s: T, d: T) -> T {
    let two_s = T::lit(2.0) / s;
    exp_tail(x, step, T::one(), two_s, two_s * d.abs(), 1)
}

/// `Σ_{n≥0} 1/(√2·cosh(πα(2n+1)/4) - 1)`.
pub fn sqrt2_cosh_sum_odd<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let s = T::SQRT_2();
    let step = exp_pi_alpha(p) * T::lit(0.5);
    let (direct, tail_bound, n) = geometric_sum(
        step * T::lit(0.5),
        step,
        |_, x| (s * x.cosh() - T::one()).recip(),
        |x| cosh_tail(x, step, s, -T::one()),
    );
    let closed = p.k * p.big_k / T::PI() * (T::one() + (T::lit(2.0) + T::lit(2.0) / p.k).sqrt());
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound,
        terms_used: n,
    }
}

fn bilateral_sqrt2_cosh<T: Real>(p: &EllipticParams<T>, d: T) -> (T, T, usize) {
    let s = T::SQRT_2();
    let step = exp_pi_alpha(p) * T::lit(0.5);
    let (half, tail, n) = geometric_sum(
        step,
        step,
        |_, x| (s * x.cosh() + d).recip(),
        |x| cosh_tail(x, step, s, d),
    );
    ((s + d).recip() + T::lit(2.0) * half, T::lit(2.0) * tail, 2 * n + 1)
}

/// `S₂ = Σ_{n∈ℤ} 1/(√2·cosh(παn/2) - 1)`.
pub fn sqrt2_cosh_sum_bilateral<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let (direct, tail_bound, terms_used) = bilateral_sqrt2_cosh(p, -T::one());
    let closed = T::lit(2.0) * p.big_k / T::PI() * (T::one() + (T::lit(2.0) + T::lit(2.0) * p.k).sqrt());
    SeriesValue {
        direct,
        closed: Some(closed),
        tail_bound,
        terms_used,
    }
}

/// `S₁ = Σ_{n∈ℤ} 1/(√2·cosh(παn/2) + 1)`, direct summation only.
pub fn sqrt2_cosh_sum_bilateral_plus<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let (direct, tail_bound, terms_used) = bilateral_sqrt2_cosh(p, T::one());
    SeriesValue {
        direct,
        closed: None,
        tail_bound,
        terms_used,
    }
}

/// `Σ_{n≥0} 1/(2·cosh(πα(2n+1)/3) - 1)`.
pub fn cosh_third_sum<T: Real>(p: &EllipticParams<T>) -> SeriesValue<T> {
    let two = T::lit(2.0);
    let step = two * exp_pi_alpha(p) / T::lit(3.0);
    let (direct, tail_bound, n) = geometric_sum(
        step * T::lit(0.5),
        step,
        |_, x| (two * x.cosh() - T::one()).recip(),
        |x| cosh_tail(x, step, two, -T::one()),
    );
    SeriesValue {
        direct,
        closed: Some(p.k * p.big_k / T::PI() * cn_imag_third(p)),
        tail_bound,
        terms_used: n,
    }
}

fn lambert<T: Real>(x0: T, step: T) -> SeriesValue<T> {
    let (direct, tail_bound, n) = geometric_sum(
        x0,
        step,
        |_, x| x.exp_m1().recip(),
        |x| exp_tail(x, step, T::one(), T::one(), T::one(), 1),
    );
    SeriesValue {
        direct,
        closed: None,
        tail_bound,
        terms_used: n,
    }
}

/// `Σ_{n≥1} 1/(e^{2παn} - 1)`; no elliptic closed form.
pub fn lambert_plain<T: Real>(alpha: T) -> SeriesValue<T> {
    let c = T::lit(2.0) * T::PI() * alpha;
    lambert(c, c)
}

/// `Σ_{n≥0} 1/(e^{πα(2n+1)} - 1)`; no elliptic closed form.
pub fn lambert_plain_odd<T: Real>(alpha: T) -> SeriesValue<T> {
    let c = T::PI() * alpha;
    lambert(c, T::lit(2.0) * c)
}
