use crate::scalar::{CompensatedSum, Real};

use super::{QuadratureError, QuadratureResult};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_931_967,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Tolerances and budget for [`integrate_adaptive_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> QuadratureOptions<T> {
    pub fn new(rel_tol: T) -> Self {
        Self {
            rel_tol,
            abs_tol: default_abs_floor(),
            max_subdivisions: 4000,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

pub(crate) fn default_abs_floor<T: Real>() -> T {
    T::lit(1e-14).max(T::epsilon() * T::lit(100.0))
}

#[derive(Clone, Copy, Debug)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    abs: T,
    splittable: bool,
}

/// Result of an adaptive run with the L1 mass `∫|f|` that tail truncation needs.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Detailed<T> {
    pub result: QuadratureResult<T>,
    pub abs_value: T,
}

fn kronrod21<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Result<Panel<T>, QuadratureError<T>> {
    let half = (b - a) * T::lit(0.5);
    let center = (a + b) * T::lit(0.5);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFinite { x: center });
    }
    let mut resk = T::lit(WGK[10]) * fc;
    let mut resg = T::zero();
    let mut resabs = resk.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * T::lit(XGK[j]);
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadratureError::NonFinite { x: x1 });
        }
        if !f2.is_finite() {
            return Err(QuadratureError::NonFinite { x: x2 });
        }
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        resk = resk + w * (f1 + f2);
        resabs = resabs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg = resg + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = resk * T::lit(0.5);
    let mut resasc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        resasc = resasc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let hl = half.abs();
    let value = resk * half;
    let resabs = resabs * hl;
    let resasc = resasc * hl;
    let mut err = ((resk - resg) * half).abs();
    if resasc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
        err = if scale < T::one() { resasc * scale } else { resasc };
    }
    let floor = T::lit(50.0) * T::epsilon() * resabs;
    if floor > err {
        err = floor;
    }
    let width_floor = T::lit(100.0) * T::epsilon() * center.abs().max(T::min_positive_value());
    Ok(Panel {
        a,
        b,
        value,
        error: err,
        abs: resabs,
        splittable: hl > width_floor,
    })
}

pub(crate) fn adaptive_detailed<T, F>(
    mut f: F,
    a: T,
    b: T,
    opts: &QuadratureOptions<T>,
) -> Result<Detailed<T>, QuadratureError<T>>
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
    let mut panels = vec![kronrod21(&mut f, a, b)?];
    let mut evaluations = 21usize;
    let mut subdivisions = 0usize;
    loop {
        let total: CompensatedSum<T> = panels.iter().map(|p| p.value).collect();
        let total = total.value();
        let err: T = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        let mass = panels.iter().fold(T::zero(), |acc, p| acc + p.abs);
        // Once the estimate is down to the rounding floor, refining cannot help.
        let target = opts
            .abs_tol
            .max(opts.rel_tol * total.abs())
            .max(T::lit(100.0) * T::epsilon() * mass);
        let pack = |evaluations, subdivisions| Detailed {
            result: QuadratureResult {
                value: total,
                error_estimate: err,
                evaluations,
                subdivisions,
            },
            abs_value: mass,
        };
        if err <= target {
            return Ok(pack(evaluations, subdivisions));
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(_, x), (_, y)| x.error.partial_cmp(&y.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(i) = worst.filter(|_| subdivisions < opts.max_subdivisions) else {
            return Err(QuadratureError::Accuracy {
                best: pack(evaluations, subdivisions).result,
                requested: target,
            });
        };
        let p = panels.swap_remove(i);
        let mid = (p.a + p.b) * T::lit(0.5);
        panels.push(kronrod21(&mut f, p.a, mid)?);
        panels.push(kronrod21(&mut f, mid, p.b)?);
        evaluations += 42;
        subdivisions += 1;
    }
}

/// Globally adaptive Gauss–Kronrod (G10/K21) integration of `f` over `[a, b]`.
///
/// The run stops once the summed error estimate is below
/// `max(tol·|value|, 1e-14)`.
pub fn integrate_adaptive<T, F>(f: F, a: T, b: T, tol: T) -> Result<QuadratureResult<T>, QuadratureError<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_adaptive_with(f, a, b, &QuadratureOptions::new(tol))
}

pub fn integrate_adaptive_with<T, F>(
    f: F,
    a: T,
    b: T,
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>, QuadratureError<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    adaptive_detailed(f, a, b, opts).map(|d| d.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sine_on_quarter_period() {
        let r = integrate_adaptive(f64::sin, 0.0, FRAC_PI_2, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(r.error_estimate >= 0.0 && r.evaluations >= 21);
    }

    #[test]
    fn polynomial_is_exact_on_one_panel() {
        let r = integrate_adaptive(|x: f64| x.powi(7) - 3.0 * x * x, -1.0, 2.0, 1e-12).unwrap();
        let exact = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn sqrt_endpoint_singularity_converges() {
        let r = integrate_adaptive(|x: f64| x.sqrt().recip(), 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn narrow_peak_is_found_by_refinement() {
        let w = 1e-4;
        let r = integrate_adaptive(|x: f64| w / (x * x + w * w), -1.0, 1.5, 1e-12).unwrap();
        let exact = (1.5 / w).atan() + (1.0 / w).atan();
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn f32_runs_at_single_precision() {
        let r = integrate_adaptive(|x: f32| x.cos(), 0.0f32, std::f32::consts::PI, 1e-5).unwrap();
        assert!(r.value.abs() < 1e-5);
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(matches!(
            integrate_adaptive(f64::sin, 1.0, 0.0, 1e-10),
            Err(QuadratureError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let opts = QuadratureOptions::new(1e-15).with_abs_tol(0.0);
        let opts = QuadratureOptions {
            max_subdivisions: 3,
            ..opts
        };
        let err = integrate_adaptive_with(|x: f64| (50.0 * x).sin().abs(), 0.0, PI, &opts).unwrap_err();
        match err {
            QuadratureError::Accuracy { best, .. } => assert!((best.value - 2.0).abs() < 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
