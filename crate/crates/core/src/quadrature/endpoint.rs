use crate::scalar::{CompensatedSum, Real};

use super::kronrod::{adaptive_detailed, default_abs_floor, QuadratureOptions};
use super::{QuadratureError, QuadratureResult};

/// Longest tail chunk in the substituted variable when no period forces a break.
const MAX_CHUNK: f64 = 2.0;
/// Consecutive negligible chunks required before the tail is truncated.
const QUIET_CHUNKS: usize = 3;

/// Which logarithmic term diverges at the ends of the interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogMap {
    /// `ln(2 cos x)` on `(-π/2, π/2)`.
    LogCos,
    /// `ln(2 sin(x/2))` on `(0, 2π)`.
    LogSinHalf,
    /// `ln(2 sin x)` on `(0, π)`.
    LogSin,
}

impl LogMap {
    /// Abscissae where the log term tends to `-∞`.
    pub fn singular_points<T: Real>(self) -> (T, T) {
        match self {
            LogMap::LogCos => (-T::FRAC_PI_2(), T::FRAC_PI_2()),
            LogMap::LogSin => (T::zero(), T::PI()),
            LogMap::LogSinHalf => (T::zero(), T::TAU()),
        }
    }

    pub fn log_term<T: Real>(self, x: T) -> T {
        let two = T::lit(2.0);
        match self {
            LogMap::LogCos => (two * x.cos()).ln(),
            LogMap::LogSin => (two * x.sin()).ln(),
            LogMap::LogSinHalf => (two * (x / two).sin()).ln(),
        }
    }

    /// The abscissa next to the lower (or upper) singular point where the log term equals `-t`.
    pub fn abscissa<T: Real>(self, t: T, upper: bool) -> T {
        let s = ((-t).exp() * T::lit(0.5)).asin();
        match (self, upper) {
            (LogMap::LogCos, false) => -T::FRAC_PI_2() + s,
            (LogMap::LogCos, true) => T::FRAC_PI_2() - s,
            (LogMap::LogSin, false) => s,
            (LogMap::LogSin, true) => T::PI() - s,
            (LogMap::LogSinHalf, false) => s + s,
            (LogMap::LogSinHalf, true) => T::TAU() - (s + s),
        }
    }

    /// `|dx/dt|` for the substitution `t = -log_term(x)`.
    pub fn jacobian<T: Real>(self, t: T) -> T {
        let e = (-t).exp();
        let j = e / (T::lit(4.0) - e * e).sqrt();
        match self {
            LogMap::LogSinHalf => j + j,
            _ => j,
        }
    }
}

/// How an integrand oscillates as the log term runs to `-∞`.
///
/// In the substituted variable `t = -log_term(x)` an integrand built from
/// `trig(frequency·log_term/α)` has period `2πα/frequency`. Tail chunks are
/// cut at `phase + j·period`, which lets callers align them with jump points or
/// near-poles of the integrand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointOscillation<T> {
    pub map: LogMap,
    pub alpha: T,
    /// Multiplier `c` of `log_term/α` inside the trigonometric factor; zero when nothing oscillates.
    pub frequency: T,
    pub phase: T,
    /// Value of `t` where the interior panel hands over to the tail.
    pub tail_start: T,
    /// The integrand peaks at each break with width about `e^{-t}/2`; chunk
    /// ends at breaks are then graded geometrically toward the break.
    pub peaks_at_breaks: bool,
}

impl<T: Real> EndpointOscillation<T> {
    pub fn new(map: LogMap, alpha: T) -> Self {
        Self {
            map,
            alpha,
            frequency: T::one(),
            phase: T::zero(),
            tail_start: T::zero(),
            peaks_at_breaks: false,
        }
    }

    /// Descriptor for integrands whose log term does not sit inside a trigonometric factor.
    pub fn non_oscillatory(map: LogMap) -> Self {
        Self {
            frequency: T::zero(),
            ..Self::new(map, T::one())
        }
    }

    pub fn with_frequency(mut self, frequency: T) -> Self {
        self.frequency = frequency;
        self
    }

    pub fn with_phase(mut self, phase: T) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_peaks_at_breaks(mut self) -> Self {
        self.peaks_at_breaks = true;
        self
    }

    pub fn period(&self) -> Option<T> {
        (self.frequency != T::zero()).then(|| T::TAU() * self.alpha / self.frequency.abs())
    }

    fn next_break(&self, t: T) -> T {
        let Some(p) = self.period() else {
            return T::infinity();
        };
        let guard = T::epsilon() * T::lit(16.0) * t.abs().max(T::one());
        let mut j = ((t - self.phase) / p).floor() + T::one();
        let mut b = self.phase + j * p;
        while b <= t + guard {
            j = j + T::one();
            b = self.phase + j * p;
        }
        b
    }
}

fn near<T: Real>(x: T, y: T) -> bool {
    (x - y).abs() <= T::epsilon() * T::lit(8.0) * y.abs().max(T::one())
}

/// Integrates `f(x, ℓ)` over `[a, b]`, where `ℓ = osc.map.log_term(x)`.
///
/// Ends of `[a, b]` that coincide with a singular point of the map are handled
/// by the substitution `t = -ℓ`: the tail becomes an integral over
/// `t ∈ (tail_start, ∞)` whose integrand carries the factor `|dx/dt| ~ e^{-t}`.
/// The tail is integrated chunk by chunk and truncated once successive chunks
/// no longer contribute at the requested tolerance. On the tail `ℓ` is passed
/// exactly, so integrands should derive `cos x` (or `sin x`) from `e^ℓ/2`
/// instead of from `x` when they need it near the endpoint.
///
/// `breakpoints` split the interior panel (for example at jump points).
pub fn integrate_endpoint_oscillatory<T, F>(
    f: F,
    a: T,
    b: T,
    osc: &EndpointOscillation<T>,
    breakpoints: &[T],
    tol: T,
) -> Result<QuadratureResult<T>, QuadratureError<T>>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let map = osc.map;
    let (s_lo, s_hi) = map.singular_points::<T>();
    let lower = near(a, s_lo);
    let upper = near(b, s_hi);
    if !(a < b) || (!lower && a < s_lo) || (!upper && b > s_hi) {
        return Err(QuadratureError::InvalidInterval {
            a,
            b,
            reason: "interval must lie inside the domain of the log map",
        });
    }
    let x_lo = if lower { map.abscissa(osc.tail_start, false) } else { a };
    let x_hi = if upper { map.abscissa(osc.tail_start, true) } else { b };
    let no_interior = near(x_lo, x_hi);
    if !(x_lo < x_hi) && !no_interior {
        return Err(QuadratureError::InvalidInterval {
            a,
            b,
            reason: "tail start leaves no interior panel",
        });
    }

    let mut cuts: Vec<T> = breakpoints.iter().copied().filter(|&p| p > x_lo && p < x_hi).collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap_or(std::cmp::Ordering::Equal));
    cuts.dedup_by(|p, q| near(*p, *q));
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(x_lo);
    edges.extend(cuts);
    edges.push(x_hi);

    let interior_opts = QuadratureOptions::new(tol).with_abs_tol(default_abs_floor::<T>() * T::lit(0.1));
    let mut total = QuadratureResult {
        value: T::zero(),
        error_estimate: T::zero(),
        evaluations: 0,
        subdivisions: 0,
    };
    let mut value = CompensatedSum::new();
    let mut scale = T::zero();
    for w in edges.windows(2).filter(|_| !no_interior) {
        let d = adaptive_detailed(|x| f(x, map.log_term(x)), w[0], w[1], &interior_opts)?;
        value.add(d.result.value);
        scale = scale + d.abs_value;
        total = total.merge(d.result);
    }
    for side in [lower, upper]
        .into_iter()
        .zip([false, true])
        .filter_map(|(is_singular, up)| is_singular.then_some(up))
    {
        let (r, _) = integrate_tail(&f, osc, side, tol, scale)?;
        value.add(r.value);
        total = total.merge(r);
    }
    total.value = value.value();
    Ok(total)
}

fn integrate_tail<T, F>(
    f: &F,
    osc: &EndpointOscillation<T>,
    upper: bool,
    tol: T,
    interior_scale: T,
) -> Result<(QuadratureResult<T>, T), QuadratureError<T>>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let map = osc.map;
    let t_cap = -T::min_positive_value().ln() * T::lit(0.95);
    let max_chunk = T::lit(MAX_CHUNK);
    let g = |t: T| {
        let j = map.jacobian(t);
        if j == T::zero() {
            T::zero()
        } else {
            f(map.abscissa(t, upper), -t) * j
        }
    };
    let mut acc = CompensatedSum::new();
    let mut abs_acc = T::zero();
    let mut out = QuadratureResult {
        value: T::zero(),
        error_estimate: T::zero(),
        evaluations: 0,
        subdivisions: 0,
    };
    let mut t = osc.tail_start;
    let mut quiet = 0usize;
    let mut last_mass = T::zero();
    let mut start_is_break = false;
    while quiet < QUIET_CHUNKS && t < t_cap {
        let brk = osc.next_break(t);
        let end = brk.min(t + max_chunk);
        let end_is_break = end == brk;
        let scale = interior_scale + abs_acc;
        let opts = QuadratureOptions::new(tol).with_abs_tol(tol * scale * T::lit(0.1));
        let edges = if osc.peaks_at_breaks {
            graded_edges(t, end, start_is_break, end_is_break)
        } else {
            vec![t, end]
        };
        let mut chunk = QuadratureResult {
            value: T::zero(),
            error_estimate: T::zero(),
            evaluations: 0,
            subdivisions: 0,
        };
        let mut part = CompensatedSum::new();
        let mut mass = T::zero();
        for w in edges.windows(2) {
            let (r, m) = match adaptive_detailed(g, w[0], w[1], &opts) {
                Ok(d) => (d.result, d.abs_value),
                Err(QuadratureError::Accuracy { best, requested }) => {
                    if best.error_estimate <= tol * scale {
                        let m = best.value.abs();
                        (best, m)
                    } else {
                        return Err(QuadratureError::Accuracy { best, requested });
                    }
                }
                Err(e) => return Err(e),
            };
            part.add(r.value);
            mass = mass + m;
            chunk = chunk.merge(r);
        }
        chunk.value = part.value();
        start_is_break = end_is_break;
        acc.add(chunk.value);
        abs_acc = abs_acc + mass;
        out = out.merge(chunk);
        last_mass = mass;
        let quiet_level = T::lit(0.01) * tol * (interior_scale + abs_acc);
        // A peak of width w at a break carries mass of order period·w.
        let next_peak = match osc.period() {
            Some(p) if osc.peaks_at_breaks => p * (-osc.next_break(end)).exp(),
            _ => T::zero(),
        };
        if mass <= quiet_level && next_peak <= quiet_level {
            quiet += 1;
        } else {
            quiet = 0;
        }
        t = end;
    }
    out.value = acc.value();
    out.error_estimate = out.error_estimate + last_mass;
    Ok((out, abs_acc))
}

/// Panel edges for `[t0, t1]`, graded toward ends that carry a peak of width `e^{-t}/2`.
fn graded_edges<T: Real>(t0: T, t1: T, at_start: bool, at_end: bool) -> Vec<T> {
    let half = (t1 - t0) * T::lit(0.5);
    let ladder = |t: T| {
        let mut steps = Vec::new();
        let mut w = (-t).exp() * T::lit(0.5);
        while w < half {
            if w > T::epsilon() * t.abs().max(T::one()) * T::lit(4.0) {
                steps.push(w);
            }
            w = w * T::lit(4.0);
        }
        steps
    };
    let mut edges = vec![t0];
    if at_start {
        edges.extend(ladder(t0).into_iter().map(|w| t0 + w));
    }
    let mut right: Vec<T> = if at_end {
        ladder(t1).into_iter().map(|w| t1 - w).collect()
    } else {
        Vec::new()
    };
    right.reverse();
    edges.extend(right);
    edges.push(t1);
    edges
}

/// Abscissae in `(0, 2π)` where `tan(3·ln(2 sin(x/2))/(2α))` is infinite with a
/// positive log term, in ascending order.
///
/// These are the levels `sin(x/2) = e^{(2m+1)πα/3}/2`, `m ≥ 0`. The infinitely
/// many jumps with negative log term accumulate at `0` and `2π`; the endpoint
/// tail handles those through its phase.
pub fn jump_points_arctan<T: Real>(alpha: T) -> Vec<T> {
    let mut out = Vec::new();
    if !(alpha > T::zero()) {
        return out;
    }
    let step = T::PI() * alpha / T::lit(3.0);
    let mut m = 0usize;
    loop {
        let level = step * T::from_usize_lossy(2 * m + 1);
        let v = level.exp() * T::lit(0.5);
        if v > T::one() {
            break;
        }
        let x = T::lit(2.0) * v.asin();
        out.push(x);
        if !near(x, T::PI()) {
            out.push(T::TAU() - x);
        }
        m += 1;
    }
    out.sort_by(|p, q| p.partial_cmp(q).unwrap_or(std::cmp::Ordering::Equal));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, LN_2, PI};

    // Composite 5-point Gauss–Legendre on panels graded geometrically toward
    // x = π/2, computed in the distance-to-endpoint variable without any
    // substitution of the log term.
    fn graded_oracle(f: impl Fn(f64, f64) -> f64, x0: f64) -> f64 {
        const GL: [(f64, f64); 5] = [
            (0.0, 0.568_888_888_888_888_9),
            (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let mut hi = FRAC_PI_2 - x0;
        let mut sum = 0.0;
        while hi > 1e-15 {
            let lo = hi * 0.97;
            let (c, h) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
            for &(node, w) in &GL {
                let d = c + h * node;
                let ell = (2.0 * d.sin()).ln();
                sum += w * h * f(FRAC_PI_2 - d, ell);
            }
            hi = lo;
        }
        sum
    }

    #[test]
    fn abscissa_inverts_log_term() {
        for map in [LogMap::LogCos, LogMap::LogSin, LogMap::LogSinHalf] {
            for &t in &[0.0_f64, 0.5, 3.0] {
                for upper in [false, true] {
                    let x = map.abscissa(t, upper);
                    assert!((map.log_term(x) + t).abs() < 1e-12, "{map:?} {t} {upper}");
                }
            }
        }
    }

    #[test]
    fn jacobian_matches_finite_difference() {
        for map in [LogMap::LogCos, LogMap::LogSin, LogMap::LogSinHalf] {
            let t = 0.7_f64;
            let h = 1e-6;
            let fd = (map.abscissa(t + h, false) - map.abscissa(t - h, false)) / (2.0 * h);
            assert!((fd.abs() - map.jacobian(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn period_follows_frequency() {
        let osc = EndpointOscillation::new(LogMap::LogSin, 0.5).with_frequency(4.0);
        assert!((osc.period().unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(EndpointOscillation::<f64>::non_oscillatory(LogMap::LogCos)
            .period()
            .is_none());
    }

    #[test]
    fn next_break_respects_phase() {
        let osc = EndpointOscillation::new(LogMap::LogCos, 1.0_f64).with_phase(1.0);
        let p = osc.period().unwrap();
        assert!((osc.next_break(0.0) - 1.0).abs() < 1e-15);
        assert!((osc.next_break(1.0) - (1.0 + p)).abs() < 1e-14);
    }

    #[test]
    fn tail_matches_graded_panel_oracle() {
        let alpha = 1.0;
        let f = |_x: f64, ell: f64| (ell / alpha).cos();
        let osc = EndpointOscillation::new(LogMap::LogCos, alpha);
        let r = integrate_endpoint_oscillatory(f, FRAC_PI_3, FRAC_PI_2, &osc, &[], 1e-13).unwrap();
        let oracle = graded_oracle(f, FRAC_PI_3);
        assert!((r.value - oracle).abs() < 1e-12, "{} vs {}", r.value, oracle);
    }

    #[test]
    fn vanishing_frequency_recovers_interval_length() {
        let alpha = 1e6;
        let osc = EndpointOscillation::new(LogMap::LogCos, alpha);
        let r = integrate_endpoint_oscillatory(
            |_x, ell: f64| (ell / alpha).cos(),
            FRAC_PI_3,
            FRAC_PI_2,
            &osc,
            &[],
            1e-13,
        )
        .unwrap();
        assert!((r.value - PI / 6.0).abs() < 1e-9);
    }

    #[test]
    fn log_of_log_integral_vanishes() {
        let osc = EndpointOscillation::non_oscillatory(LogMap::LogCos);
        let r = integrate_endpoint_oscillatory(
            |x: f64, ell: f64| (x * x + ell * ell).ln(),
            0.0,
            FRAC_PI_2,
            &osc,
            &[],
            1e-13,
        )
        .unwrap();
        assert!(r.value.abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn plain_adaptive_handles_the_same_integral_loosely() {
        let r = super::super::integrate_adaptive(
            |x: f64| {
                let ell = (2.0 * (FRAC_PI_2 - x).sin()).ln();
                (x * x + ell * ell).ln()
            },
            0.0,
            FRAC_PI_2,
            1e-10,
        )
        .unwrap();
        assert!(r.value.abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn both_tails_on_log_sin() {
        // ∫_0^π ln(2 sin x) dx = 0
        let osc = EndpointOscillation::non_oscillatory(LogMap::LogSin);
        let r = integrate_endpoint_oscillatory(|_x, ell: f64| ell, 0.0, PI, &osc, &[], 1e-13).unwrap();
        assert!(r.value.abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn rejects_interval_outside_map_domain() {
        let osc = EndpointOscillation::non_oscillatory(LogMap::LogCos);
        let e = integrate_endpoint_oscillatory(|_x, ell: f64| ell, 0.0, 2.0, &osc, &[], 1e-10);
        assert!(matches!(e, Err(QuadratureError::InvalidInterval { .. })));
    }

    #[test]
    fn jump_points_empty_for_large_alpha() {
        assert!(jump_points_arctan(3.0 * LN_2 / PI + 1e-9).is_empty());
        assert!(jump_points_arctan(2.0f64).is_empty());
    }

    #[test]
    fn jump_points_match_sign_scan() {
        let alpha = 0.3f64;
        let pts = jump_points_arctan(alpha);
        // Scan cos(3ℓ/(2α)) for sign changes where ℓ > 0, i.e. x ∈ (π/3, 5π/3).
        let n = 1_000_000;
        let (lo, hi) = (FRAC_PI_3, 5.0 * FRAC_PI_3);
        let g = |x: f64| (3.0 * LogMap::LogSinHalf.log_term(x) / (2.0 * alpha)).cos();
        let mut scanned = Vec::new();
        let mut prev = g(lo);
        for i in 1..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            let cur = g(x);
            if (cur > 0.0) != (prev > 0.0) {
                scanned.push(x);
            }
            prev = cur;
        }
        assert_eq!(scanned.len(), pts.len());
        let h = (hi - lo) / n as f64;
        for (s, p) in scanned.iter().zip(&pts) {
            assert!((s - p).abs() <= h, "{s} vs {p}");
        }
        for &x in &pts {
            let residual = (2.0 * (x / 2.0).sin()).ln() * 3.0 / (2.0 * alpha);
            let m = ((residual / PI) - 0.5).round();
            assert!((2.0 * (x / 2.0).sin() - ((2.0 * m + 1.0) * PI * alpha / 3.0).exp()).abs() <= 1e-12);
        }
    }
}
