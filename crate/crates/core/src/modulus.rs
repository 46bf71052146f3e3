//! Inversion of `α = K'(k)/K(k)`.
//!
//! The map is strictly decreasing in `k` and satisfies `α(k') = 1/α(k)`, so the
//! solver only ever searches for the smaller of the two moduli (the one with
//! `α ≥ 1`) and flips the result when `α < 1`. Working on the small side keeps
//! both `k` and `k'` at full relative accuracy.

use crate::elliptic::{agm, EllipticParams};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig<T> {
    /// Relative tolerance on the `K'/K` residual.
    pub tol_alpha: T,
    pub max_iter: usize,
    /// Initial bracket for the modulus `k`.
    pub bracket_lo: T,
    pub bracket_hi: T,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            tol_alpha: T::lit(1e-13).max(T::epsilon() * T::lit(8.0)),
            max_iter: 200,
            bracket_lo: T::lit(1e-12),
            bracket_hi: T::one() - T::lit(1e-12).max(T::epsilon()),
        }
    }
}

fn complement<T: Real>(k: T) -> T {
    ((T::one() - k) * (T::one() + k)).sqrt()
}

/// `K(k')/K(k)`.
pub fn alpha_from_modulus<T: Real>(k: T) -> Result<T> {
    if !(k > T::zero() && k < T::one()) {
        return Err(Error::Domain(format!("alpha_from_modulus requires 0 < k < 1, got {k}")));
    }
    Ok(agm(T::one(), complement(k))? / agm(T::one(), k)?)
}

/// `ln(K'/K)` at small-side modulus `e^u`, with derivative in `u`.
fn log_ratio<T: Real>(u: T) -> (T, T) {
    let s = u.exp();
    let sp = complement(s);
    let m_small = agm(T::one(), sp).unwrap_or(T::nan());
    let m_comp = agm(T::one(), s).unwrap_or(T::nan());
    let big_k = T::FRAC_PI_2() / m_small;
    let big_kp = T::FRAC_PI_2() / m_comp;
    // d ln(K'/K)/dk = -π / (2 k k'² K K')
    let slope = -T::FRAC_PI_2() / (sp * sp * big_k * big_kp);
    ((m_small / m_comp).ln(), slope)
}

/// Solves `K'(k)/K(k) = alpha` for the modulus and returns the full parameter bundle.
///
/// The `alpha` field of the result is the requested value, and `q = e^{-πα}`.
pub fn modulus_from_alpha<T: Real>(alpha: T, cfg: &SolverConfig<T>) -> Result<EllipticParams<T>> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "modulus_from_alpha requires alpha > 0, got {alpha}"
        )));
    }
    if !(cfg.tol_alpha > T::zero())
        || !(cfg.bracket_lo < cfg.bracket_hi)
        || cfg.bracket_lo <= T::zero()
        || cfg.bracket_hi >= T::one()
    {
        return Err(Error::Domain(
            "solver config needs tol_alpha > 0 and 0 < bracket_lo < bracket_hi < 1".into(),
        ));
    }
    let flip = alpha < T::one();
    let beta = if flip { alpha.recip() } else { alpha };
    let s = solve_small_side(beta, cfg, flip)?;
    let mut p = EllipticParams::from_pair(s, complement(s));
    if flip {
        p = p.complementary();
    }
    p.alpha = alpha;
    p.q = (-T::PI() * alpha).exp();
    Ok(p)
}

fn solve_small_side<T: Real>(beta: T, cfg: &SolverConfig<T>, flipped: bool) -> Result<T> {
    // Past this point the default k bracket no longer reaches the flipped root.
    let seed_threshold = T::lit(8.0);
    let half_point = T::FRAC_1_SQRT_2();
    if beta == T::one() {
        return Ok(half_point);
    }
    let target = beta.ln();
    // Small side of the configured bracket: k itself, or k' when α < 1.
    let (mut lo, mut hi) = if flipped {
        (complement(cfg.bracket_hi), complement(cfg.bracket_lo).min(half_point))
    } else {
        (cfg.bracket_lo, cfg.bracket_hi.min(half_point))
    };
    let residual = |u: T| log_ratio(u).0 - target;
    let brackets = |lo: T, hi: T| lo < hi && residual(lo.ln()) > T::zero() && residual(hi.ln()) < T::zero();
    if beta > seed_threshold {
        // k ≈ 4√q for small k.
        let seed = T::lit(4.0) * (-T::FRAC_PI_2() * beta).exp();
        let (mut slo, mut shi) = (seed * T::lit(0.5), (seed * T::lit(2.0)).min(half_point));
        for _ in 0..8 {
            if brackets(slo, shi) {
                break;
            }
            slo = slo * T::lit(0.25);
            shi = (shi * T::lit(4.0)).min(half_point);
        }
        lo = slo;
        hi = shi;
    }
    if !brackets(lo, hi) {
        return Err(Error::Solver {
            iterations: 0,
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let (mut ulo, mut uhi) = (lo.ln(), hi.ln());
    let mut u = (ulo + uhi) * T::lit(0.5);
    for _ in 0..cfg.max_iter {
        let (r, slope) = log_ratio(u);
        let r = r - target;
        if r.abs() <= cfg.tol_alpha {
            return Ok(u.exp());
        }
        if r > T::zero() {
            ulo = u;
        } else {
            uhi = u;
        }
        let newton = u - r / slope;
        u = if newton > ulo && newton < uhi && newton.is_finite() {
            newton
        } else {
            (ulo + uhi) * T::lit(0.5)
        };
        if (uhi - ulo).abs() <= T::epsilon() * uhi.abs().max(T::one()) {
            let (r, _) = log_ratio(u);
            if (r - target).abs() <= cfg.tol_alpha {
                return Ok(u.exp());
            }
            break;
        }
    }
    let (lo, hi) = (ulo.exp(), uhi.exp());
    let (lo, hi) = if flipped {
        (complement(hi), complement(lo))
    } else {
        (lo, hi)
    };
    Err(Error::Solver {
        iterations: cfg.max_iter,
        lo: lo.to_f64_lossy(),
        hi: hi.to_f64_lossy(),
    })
}
