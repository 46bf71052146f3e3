//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logtrig_core::catalog::{
    case, contour_trace, evaluate_lhs, evaluate_rhs, t2_lambert_form, verify_case, CaseId, CaseParams, Tolerances,
    Value, APPA_THRESHOLD_OFFSET, DEFAULT_QUAD_TOL,
};
use logtrig_core::elliptic::{complete_k, oracle_k_quadrature, params_from_modulus};
use logtrig_core::modulus::{alpha_from_modulus, modulus_from_alpha, SolverConfig};
use logtrig_core::report::{run_verify, RunConfig};
use logtrig_core::series::{
    cosh_third_sum, gamma_fn, lambert_alternating, product_one_minus, product_one_plus, sinh2_sum_integer,
    sinh2_sum_odd, sqrt2_cosh_sum_bilateral, sqrt2_cosh_sum_odd, SeriesValue,
};
use logtrig_core::Params;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn params(alpha: f64) -> Params {
    modulus_from_alpha(alpha, &SolverConfig::default()).expect("modulus solves")
}

fn lhs(id: CaseId, p: &CaseParams) -> Value {
    evaluate_lhs(case(id), p, DEFAULT_QUAD_TOL)
        .expect("quadrature converges")
        .value
}

fn rhs(id: CaseId, p: &CaseParams) -> Value {
    evaluate_rhs(case(id), p).expect("closed form evaluates")
}

fn examples_closed_forms() -> Outcome {
    let start = Instant::now();
    let g14 = gamma_fn(0.25_f64).unwrap();
    let g13 = gamma_fn(1.0_f64 / 3.0).unwrap();
    let targets = [
        (
            CaseId::Ex1,
            SQRT_3,
            PI * PI / (8.0 * SQRT_3) - FRAC_PI_4 * (1.0 + SQRT_3).ln() + 13.0 * PI / 24.0 * 2f64.ln(),
        ),
        (
            CaseId::Ex2,
            2.0,
            PI / 2.0 - (SQRT_2 + 1.0) * g14 * g14 / (16.0 * (2.0 * PI).sqrt()),
        ),
        (
            CaseId::Ex3,
            SQRT_3,
            g13.powi(3) / (2f64.powf(10.0 / 3.0) * PI) - PI * (PI / (2.0 * SQRT_3)).tanh(),
        ),
    ];
    // mpmath, 30 digits.
    let frozen = [
        1.102_436_725_588_749_4,
        0.779_520_463_183_038_66,
        -1.653_655_809_362_135_8,
    ];
    let mut worst: f64 = 0.0;
    let mut frozen_ok = true;
    for ((id, alpha, closed), reference) in targets.into_iter().zip(frozen) {
        let v = lhs(id, &CaseParams::alpha(alpha));
        let Value::Real(v) = v else {
            return outcome(false, format!("{id} is not real"));
        };
        worst = worst.max((v - closed).abs() / closed.abs());
        frozen_ok &= (closed - reference).abs() <= 1e-14 * reference.abs();
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-8 && frozen_ok && secs <= 10.0,
        format!("max rel err {worst:.2e}, closed forms match references: {frozen_ok}, {secs:.2} s"),
    )
}

fn full_sweep() -> Outcome {
    let start = Instant::now();
    let report = match run_verify(&RunConfig::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let secs = start.elapsed().as_secs_f64();
    let s = report.summary;
    let cases: std::collections::BTreeSet<_> = report.rows.iter().map(|r| r.case_id).collect();
    let failures: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.pass && r.status != logtrig_core::catalog::RowStatus::Skipped)
        .map(|r| format!("{} {}", r.case_id, r.params))
        .collect();
    outcome(
        failures.is_empty() && s.pass > 0 && secs <= 120.0,
        format!(
            "{} cases, {} rows: {} pass, {} skipped out of domain, {} not passing{}; {secs:.1} s",
            cases.len(),
            s.total,
            s.pass,
            s.skipped,
            failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(" ({})", failures.join("; "))
            }
        ),
    )
}

fn sine_zero() -> Outcome {
    let v = lhs(CaseId::Sine0, &CaseParams::default()).to_complex();
    let err = (v - Complex64::new(0.0, -13.0 * PI / 24.0)).norm();
    outcome(
        err <= 1e-10,
        format!(
            "i*lhs = {:.16}, |lhs + 13 pi i/24| = {err:.2e}",
            (Complex64::i() * v).re
        ),
    )
}

fn proof_layer() -> Outcome {
    let pairs = [
        (CaseId::T1PA, CaseId::T1A),
        (CaseId::T1PB, CaseId::T1B),
        (CaseId::T4PA, CaseId::T4A),
        (CaseId::T4PB, CaseId::T4B),
    ];
    let mut worst: f64 = 0.0;
    for alpha in [1.0, 1.5, 2.0] {
        let p = CaseParams::alpha(alpha);
        for (product, elliptic) in pairs {
            if case(product).check_domain(&p).is_err() {
                continue;
            }
            worst = worst.max(rhs(product, &p).distance(rhs(elliptic, &p)));
            worst = worst.max(lhs(product, &p).distance(rhs(elliptic, &p)));
        }
        let t2 = rhs(CaseId::T2, &p);
        let Value::Real(t2r) = t2 else { unreachable!() };
        worst = worst.max((t2_lambert_form(alpha).unwrap() - t2r).abs());
        worst = worst.max(lhs(CaseId::T2, &p).distance(t2));
    }
    outcome(
        worst <= 1e-9,
        format!("max pairwise difference {worst:.2e} over alpha in {{1, 1.5, 2}}"),
    )
}

fn series_suite() -> Outcome {
    type F = fn(&Params) -> SeriesValue<f64>;
    let suite: [(&str, F); 8] = [
        ("prod(1-q^2n)", product_one_minus),
        ("prod(1+q^2n)", product_one_plus),
        ("sinh^-2 all", sinh2_sum_integer),
        ("sinh^-2 odd", sinh2_sum_odd),
        ("alternating lambert", lambert_alternating),
        ("sqrt2-cosh odd", sqrt2_cosh_sum_odd),
        ("sqrt2-cosh bilateral", sqrt2_cosh_sum_bilateral),
        ("cosh-third", cosh_third_sum),
    ];
    let mut worst: (f64, &str, f64) = (0.0, "", 0.0);
    for alpha in [0.5, 1.0, SQRT_3, 2.0] {
        let p = params(alpha);
        for (name, f) in suite {
            let v = f(&p);
            let Some(closed) = v.closed else {
                return outcome(false, format!("{name} has no closed form"));
            };
            let err = (v.direct - closed).abs() / closed.abs().max(1.0);
            if err >= worst.0 {
                worst = (err, name, alpha);
            }
        }
    }
    outcome(
        worst.0 <= 1e-11,
        format!(
            "8 series x 4 alphas, worst {:.2e} ({} at alpha {})",
            worst.0, worst.1, worst.2
        ),
    )
}

fn elliptic_core() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut legendre, mut agm_vs_integral, mut round_trip): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..100 {
        let k: f64 = rng.gen_range(1e-3..0.999);
        let p = params_from_modulus(k).unwrap();
        legendre = legendre.max(p.legendre_residual().abs());
        let direct = complete_k(k).unwrap();
        let oracle = oracle_k_quadrature(k).unwrap();
        agm_vs_integral = agm_vs_integral.max((direct - oracle).abs() / oracle);
        let alpha = alpha_from_modulus(k).unwrap();
        let back = modulus_from_alpha(alpha, &SolverConfig::default()).unwrap();
        round_trip = round_trip.max((back.k - k).abs() / k);
    }
    outcome(
        legendre <= 1e-12 && agm_vs_integral <= 1e-11 && round_trip <= 1e-11,
        format!("legendre {legendre:.1e}, agm vs integral {agm_vs_integral:.1e}, round trip {round_trip:.1e}"),
    )
}

/// Limit of `d(δ)` as `δ → 0` by Neville extrapolation over `δ_j = δ0 / 2^j`.
fn extrapolate(d: &[Complex64], deltas: &[f64]) -> Complex64 {
    let mut t = d.to_vec();
    let n = t.len();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, lo) = (deltas[i], deltas[i + m]);
            t[i] = (t[i + 1] * hi - t[i] * lo) / (hi - lo);
        }
    }
    t[0]
}

fn appa_jump() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    let mut rows_pass = true;
    for theta in [0.0, FRAC_PI_4, -0.4] {
        let edge = (2.0 * f64::cos(theta)).ln();
        let at = |a: f64| CaseParams::a_theta(a, theta);
        for a in [edge - APPA_THRESHOLD_OFFSET, edge + APPA_THRESHOLD_OFFSET] {
            rows_pass &= verify_case(case(CaseId::AppA), &at(a), &tol).pass;
        }
        let deltas: Vec<f64> = (0..4).map(|j| APPA_THRESHOLD_OFFSET / f64::from(1 << j)).collect();
        let d: Vec<Complex64> = deltas
            .iter()
            .map(|&dl| lhs(CaseId::AppA, &at(edge - dl)).to_complex() - lhs(CaseId::AppA, &at(edge + dl)).to_complex())
            .collect();
        let jump = extrapolate(&d, &deltas);
        let expected = PI / (1.0 - Complex64::new(-edge, theta).exp());
        worst = worst.max((jump - expected).norm());
    }
    outcome(
        rows_pass && worst <= 1e-6,
        format!("threshold rows pass: {rows_pass}, extrapolated jump error {worst:.2e}"),
    )
}

fn contour_route() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_im: f64 = 0.0;
    for alpha in [1.0, 2.0] {
        let t = match contour_trace(alpha, 65, DEFAULT_QUAD_TOL) {
            Ok(t) => t,
            Err(e) => return outcome(false, e.to_string()),
        };
        let Value::Real(target) = rhs(CaseId::T2, &CaseParams::alpha(alpha)) else {
            unreachable!()
        };
        worst = worst.max((t.value.re - target).abs());
        worst_im = worst_im.max(t.value.im.abs());
    }
    outcome(
        worst <= 1e-8 && worst_im <= 1e-9,
        format!("|Re - T2 rhs| {worst:.2e}, |Im| {worst_im:.2e}"),
    )
}

fn determinism() -> Outcome {
    let single = RunConfig {
        jobs: Some(1),
        ..RunConfig::default()
    };
    let a = run_verify(&RunConfig::default()).unwrap();
    let b = run_verify(&RunConfig::default()).unwrap();
    let c = run_verify(&single).unwrap();
    let same = a.rows_json() == b.rows_json() && a.rows_json() == c.rows_json();
    let full_same = a.to_json() == b.to_json();
    outcome(
        same && full_same,
        format!(
            "{} rows, byte-identical across repeated and single-threaded runs: {same}",
            a.rows.len()
        ),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 9] = [
        ("closed-form examples", examples_closed_forms),
        ("full catalog sweep", full_sweep),
        ("SINE0 = -13 pi i/24", sine_zero),
        ("product and Lambert forms", proof_layer),
        ("series suite", series_suite),
        ("elliptic core", elliptic_core),
        ("APPA threshold jump", appa_jump),
        ("contour route", contour_route),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            n + 1,
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
