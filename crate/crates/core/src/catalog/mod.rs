//! The identity catalog: every verified integral as a case with a quadrature
//! left side and a closed-form right side.
//!
//! The catalog works in `f64`; the numerical layers underneath are generic.

mod cases;
mod contour;
mod verify;

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use cases::{
    evaluate_lhs, evaluate_rhs, lhs_integrand, s3t7_rhs_as_printed, t2_lambert_form, t3a_rhs_as_printed,
    t4a_rhs_as_printed, LhsValue, PointIntegrand,
};
pub use contour::{contour_trace, residue_count_appa, ContourTrace};
pub use verify::{verify_case, RowStatus, Tolerances, VerificationRow};

/// Default α grid for α-parameterised cases.
pub const ALPHA_GRID: [f64; 8] = [0.25, 0.5, 0.8, 1.0, 1.5, 1.732_050_807_568_877_2, 2.0, 3.0];

/// Relative tolerance handed to the quadrature layer by default.
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

const A_GRID: [f64; 4] = [-1.0, 0.3, 1.0, 2.0];
const A_GRID_SHORT: [f64; 3] = [-1.0, 0.3, 2.0];
const GAMMA_GRID: [f64; 4] = [0.0, 1.0, 2.0, 2.5];
const THETA_GRID: [f64; 3] = [0.0, FRAC_PI_4, -0.4];
const A_GRID_THETA: [f64; 3] = [-0.5, 0.2, 1.0];
/// Offset from the Heaviside threshold used for the extra APPA rows.
pub const APPA_THRESHOLD_OFFSET: f64 = 1e-3;

/// Stable case identifiers, in canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Intro1,
    Intro2,
    Intro3,
    Intro4,
    T1A,
    T1B,
    T1PA,
    T1PB,
    T2,
    Sine,
    Sine0,
    T3A,
    T3B,
    Cos,
    T4A,
    T4B,
    T4PA,
    T4PB,
    S3T5A,
    S3T5B,
    S3T6,
    S3T7,
    Theta2,
    Ex1,
    Ex2,
    Ex3,
    DiscContour,
    DiscL1,
    DiscL2,
    DiscP1,
    DiscP2,
    DiscP3,
    DiscP4,
    DiscIm,
    AppA,
}

impl CaseId {
    pub fn as_str(self) -> &'static str {
        use CaseId::*;
        match self {
            Intro1 => "INTRO-1",
            Intro2 => "INTRO-2",
            Intro3 => "INTRO-3",
            Intro4 => "INTRO-4",
            T1A => "T1-A",
            T1B => "T1-B",
            T1PA => "T1-PA",
            T1PB => "T1-PB",
            T2 => "T2",
            Sine => "SINE",
            Sine0 => "SINE0",
            T3A => "T3-A",
            T3B => "T3-B",
            Cos => "COS",
            T4A => "T4-A",
            T4B => "T4-B",
            T4PA => "T4-PA",
            T4PB => "T4-PB",
            S3T5A => "S3-T5A",
            S3T5B => "S3-T5B",
            S3T6 => "S3-T6",
            S3T7 => "S3-T7",
            Theta2 => "THETA2",
            Ex1 => "EX-1",
            Ex2 => "EX-2",
            Ex3 => "EX-3",
            DiscContour => "DISC-CONTOUR",
            DiscL1 => "DISC-L1",
            DiscL2 => "DISC-L2",
            DiscP1 => "DISC-P1",
            DiscP2 => "DISC-P2",
            DiscP3 => "DISC-P3",
            DiscP4 => "DISC-P4",
            DiscIm => "DISC-IM",
            AppA => "APPA",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    /// Case-insensitive lookup by id.
    fn from_str(s: &str) -> Result<Self> {
        CATALOG
            .iter()
            .map(|c| c.id)
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Integration range of a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interval {
    /// `(0, π/2)` with `ℓ = ln(2 cos x)`.
    ZeroToHalfPi,
    /// `(-π/2, π/2)` with `ℓ = ln(2 cos x)`.
    SymmetricHalfPi,
    /// `(0, π)` with `ℓ = ln(2 sin x)`.
    ZeroToPi,
    /// `(0, 2π)` with `ℓ = ln(2 sin(x/2))`.
    ZeroToTwoPi,
}

impl Interval {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Interval::ZeroToHalfPi => (0.0, FRAC_PI_2),
            Interval::SymmetricHalfPi => (-FRAC_PI_2, FRAC_PI_2),
            Interval::ZeroToPi => (0.0, PI),
            Interval::ZeroToTwoPi => (0.0, 2.0 * PI),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Alpha,
    A,
    AAndTheta,
    AAndGamma,
    /// No free parameter; the case carries its own values.
    Fixed,
}

/// Parameters of one evaluation point. Unused fields are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct CaseParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

impl CaseParams {
    pub fn alpha(alpha: f64) -> Self {
        Self {
            alpha: Some(alpha),
            ..Self::default()
        }
    }

    pub fn a(a: f64) -> Self {
        Self {
            a: Some(a),
            ..Self::default()
        }
    }

    pub fn a_theta(a: f64, theta: f64) -> Self {
        Self {
            a: Some(a),
            theta: Some(theta),
            ..Self::default()
        }
    }

    pub fn a_gamma(a: f64, gamma: f64) -> Self {
        Self {
            a: Some(a),
            gamma: Some(gamma),
            ..Self::default()
        }
    }

    /// `(name, value)` pairs of the parameters that are set, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        [
            ("alpha", self.alpha),
            ("a", self.a),
            ("theta", self.theta),
            ("gamma", self.gamma),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect()
    }

    fn key(&self) -> [f64; 4] {
        [self.alpha, self.a, self.theta, self.gamma].map(|v| v.unwrap_or(f64::NEG_INFINITY))
    }

    /// Total order used for canonical row ordering.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.key()
            .iter()
            .zip(other.key().iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(|(n, v)| format!("{n}={v}")).collect();
        if parts.is_empty() {
            f.write_str("(none)")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Either side of an identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
}

impl Value {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Value::Real(v) => Complex64::new(v, 0.0),
            Value::Complex(z) => z,
        }
    }

    pub fn abs(self) -> f64 {
        match self {
            Value::Real(v) => v.abs(),
            Value::Complex(z) => z.norm(),
        }
    }

    /// `|self - other|`, as a complex modulus when either side is complex.
    pub fn distance(self, other: Value) -> f64 {
        match (self, other) {
            (Value::Real(x), Value::Real(y)) => (x - y).abs(),
            _ => (self.to_complex() - other.to_complex()).norm(),
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Value::Complex(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(v) => write!(f, "{v:.16e}"),
            Value::Complex(z) => write!(f, "{:.16e}{:+.16e}i", z.re, z.im),
        }
    }
}

/// One identity of the catalog.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCase {
    pub id: CaseId,
    pub description: &'static str,
    /// Left-side integrand in plain text; `L` is the log term of the interval.
    pub integrand: &'static str,
    pub interval: Interval,
    pub param_kind: ParamKind,
    /// Parameter requirement in plain text.
    pub domain: &'static str,
    /// Right side in plain text.
    pub closed_form: &'static str,
    /// Whether the integrand is complex valued.
    pub complex: bool,
}

macro_rules! case {
    ($id:ident, $interval:ident, $kind:ident, $complex:expr, $desc:expr, $integrand:expr, $domain:expr, $closed:expr) => {
        IdentityCase {
            id: CaseId::$id,
            description: $desc,
            integrand: $integrand,
            interval: Interval::$interval,
            param_kind: ParamKind::$kind,
            domain: $domain,
            closed_form: $closed,
            complex: $complex,
        }
    };
}

static CATALOG: [IdentityCase; 35] = [
    case!(Intro1, ZeroToHalfPi, A, false, "log of a shifted modulus", "ln(x^2 + (L - a)^2)", "a != 0, a != ln 2", "pi ln(a/(e^b - 1)), b = min(a, ln 2)"),
    case!(Intro2, ZeroToHalfPi, A, false, "log of a shifted modulus against cos 2x", "ln(x^2 + (L - a)^2) cos 2x", "a != 0, a != ln 2", "(pi/2)(1 - 1/a - e^b + 1/(e^b - 1))"),
    case!(Intro3, ZeroToHalfPi, A, false, "rational kernel against x sin 2x", "x sin 2x / (x^2 + (L - a)^2)", "a != 0, a != ln 2", "(pi/4)(1/a^2 + e^b - e^b/(e^b - 1)^2)"),
    case!(Intro4, SymmetricHalfPi, AAndGamma, true, "power of 1 + e^{2ix} over a shifted log", "(1 + e^{2ix})^gamma / (ix - a + L)", "gamma >= 0, a != 0, a != ln 2", "-pi/a + pi e^{(gamma+1)a}/(e^a - 1) H(ln 2 - a)"),
    case!(T1A, ZeroToHalfPi, Alpha, false, "log of cosh minus cos, elliptic form", "ln(cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "-pi^2 alpha/12 - (pi/6) ln(16 k k' K^3 alpha^6 / pi^3)"),
    case!(T1B, ZeroToHalfPi, Alpha, false, "log of cosh plus cos, elliptic form", "ln(cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi^2 alpha/24 + (pi/6) ln(4 sqrt(k)/k')"),
    case!(T1PA, ZeroToHalfPi, Alpha, false, "log of cosh minus cos, product form", "ln(cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "-(pi/2) ln(2 alpha^2) - pi ln prod(1 - e^{-2 pi alpha n})"),
    case!(T1PB, ZeroToHalfPi, Alpha, false, "log of cosh plus cos, product form", "ln(cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "(pi/2) ln 2 + pi ln prod(1 + e^{-pi alpha n})"),
    case!(T2, ZeroToHalfPi, Alpha, false, "half-frequency ratio", "cosh(x/(2 alpha)) cos(L/(2 alpha)) / (cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi(alpha + 2)/8 - alpha K/4"),
    case!(Sine, SymmetricHalfPi, A, true, "sin 2x over the shifted complex log", "sin 2x / (ix + L - a)", "a != 0, a != ln 2", "-(pi i/2)(1/a^2 + e^b - e^b/(e^b - 1)^2)"),
    case!(Sine0, SymmetricHalfPi, Fixed, true, "sin 2x over the complex log", "sin 2x / (ix + L)", "none", "-13 pi i/24"),
    case!(T3A, ZeroToHalfPi, Alpha, false, "sin 2x sinh against cosh minus cos", "sin 2x sinh(x/alpha) / (cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "13 pi alpha/48 + pi/(24 alpha) + pi alpha/(4 tanh(pi alpha)) + (alpha/(4 pi))(E - (2 - k^2)K/3)K"),
    case!(T3B, ZeroToHalfPi, Alpha, false, "sin 2x sinh against cosh plus cos", "sin 2x sinh(x/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi/(8 alpha) + pi alpha/(4 sinh(pi alpha)) + (alpha/(4 pi))(E - K)K"),
    case!(Cos, SymmetricHalfPi, A, true, "cos 2x over the shifted complex log", "cos 2x / (ix + L - a)", "a != 0, a != ln 2", "pi e^a H(ln 2 - a) - (pi/2)(1/a^2 + e^b - e^b/(e^b - 1)^2)"),
    case!(T4A, ZeroToHalfPi, Alpha, false, "cos 2x sin against cosh minus cos, elliptic form", "cos 2x sin(L/alpha) / (cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "11 pi alpha/48 - pi/(24 alpha) + pi alpha/(4 tanh(pi alpha)) - (alpha/(4 pi))(E - (2 - k^2)K/3)K"),
    case!(T4B, ZeroToHalfPi, Alpha, false, "cos 2x sin against cosh plus cos, elliptic form", "cos 2x sin(L/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi/(8 alpha) - pi alpha/(4 sinh(pi alpha)) + (alpha/(4 pi))(E - K)K"),
    case!(T4PA, ZeroToHalfPi, Alpha, false, "cos 2x sin against cosh minus cos, series form", "cos 2x sin(L/alpha) / (cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "11 pi alpha/24 - pi/(24 alpha) + pi alpha/(2(e^{2 pi alpha} - 1)) + (pi alpha/8) sum_{n>=1} 1/sinh^2(pi alpha n)"),
    case!(T4PB, ZeroToHalfPi, Alpha, false, "cos 2x sin against cosh plus cos, series form", "cos 2x sin(L/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi/(8 alpha) - pi alpha/(4 sinh(pi alpha)) - (pi alpha/8) sum_{n>=0} 1/sinh^2(pi alpha (2n+1)/2)"),
    case!(S3T5A, ZeroToPi, Alpha, false, "quarter-turn shift, minus sign", "sinh((4x - pi)/alpha) / (cosh((4x - pi)/alpha) - cos(4L/alpha))", "alpha > ln2/pi", "pi coth(pi/(2 alpha)) - pi alpha/(8(sqrt2 - 1)) - (alpha K/4)(1 + sqrt(2 + 2k))"),
    case!(S3T5B, ZeroToPi, Alpha, false, "quarter-turn shift, plus sign", "sinh((4x - pi)/alpha) / (cosh((4x - pi)/alpha) + cos(4L/alpha))", "alpha > ln4/pi", "pi tanh(pi/(2 alpha)) - (alpha k K/4)(1 + sqrt(2 + 2/k))"),
    case!(S3T6, ZeroToPi, Alpha, false, "third-turn shift", "sinh((pi - 6x)/(2 alpha)) / (cosh((pi - 6x)/(2 alpha)) + cos(3L/alpha))", "alpha > 0", "(alpha k K/sqrt3) cn(iK'/3, k) - pi tanh(pi/(2 alpha))"),
    case!(S3T7, ZeroToTwoPi, Alpha, false, "arctan of tanh times tan, continuous branch", "atan(tanh((pi - 3x)/(4 alpha)) tan(3L/(2 alpha))) cos x", "alpha > 0", "-(pi sqrt3/(4 sinh(pi alpha/3)) - (3 pi/(2 alpha)) tanh(pi/(2 alpha)) + (sqrt3 k K/2) cn(iK'/3, k))"),
    case!(Theta2, SymmetricHalfPi, AAndTheta, true, "cos 2x over the rotated complex log", "cos 2x / (i(x + theta) - a + L)", "|theta| < pi/2, |a - ln(2 cos theta)| >= 1e-4", "-pi/(2(i theta - a)^2) + (pi/2)(w + w/(1 - w)^2) H(ln(2 cos theta) - a), w = e^{a - i theta}"),
    case!(Ex1, ZeroToHalfPi, Fixed, false, "log of cosh plus cos at alpha = sqrt3", "ln(cosh(x/sqrt3) + cos(L/sqrt3))", "alpha = sqrt3", "pi^2/(8 sqrt3) - (pi/4) ln(1 + sqrt3) + (13 pi/24) ln 2"),
    case!(Ex2, ZeroToHalfPi, Fixed, false, "half-frequency ratio at alpha = 2", "cosh(x/4) cos(L/4) / (cosh(x/2) + cos(L/2))", "alpha = 2", "pi/2 - (sqrt2 + 1) Gamma(1/4)^2 / (16 sqrt(2 pi))"),
    case!(Ex3, ZeroToPi, Fixed, false, "third-turn shift at alpha = sqrt3", "sinh((pi - 6x)/(2 sqrt3)) / (cosh((pi - 6x)/(2 sqrt3)) + cos(3L/sqrt3))", "alpha = sqrt3", "Gamma(1/3)^3 / (2^{10/3} pi) - pi tanh(pi/(2 sqrt3))"),
    case!(DiscContour, SymmetricHalfPi, Alpha, true, "half-frequency ratio as a path integral", "(i - tan x) / (8i (1 - e^{-z}) cos(z/(2 alpha))), z = L + ix", "alpha > ln2/pi", "pi(alpha + 2)/8 - alpha K/4"),
    case!(DiscL1, ZeroToHalfPi, Alpha, false, "Lambert-valued, minus sign", "sin(L/alpha) / (cosh(x/alpha) - cos(L/alpha))", "alpha > ln2/(2 pi)", "pi alpha/2 - pi alpha sum_{n>=1} 1/(e^{2 pi alpha n} - 1)"),
    case!(DiscL2, ZeroToHalfPi, Alpha, false, "Lambert-valued, plus sign", "sin(L/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > ln2/pi", "pi alpha sum_{n>=0} 1/(e^{pi alpha (2n+1)} - 1)"),
    case!(DiscP1, ZeroToPi, A, false, "right-angle rotation, x numerator", "x / (x^2 + (L + a)^2)", "any real a", "2 pi^2/(pi^2 + 4a^2)"),
    case!(DiscP2, ZeroToPi, A, false, "right-angle rotation, log numerator", "(L + a) / (x^2 + (L + a)^2)", "any real a", "4 pi a/(pi^2 + 4a^2)"),
    case!(DiscP3, ZeroToPi, Alpha, false, "right-angle rotation, sin numerator", "sin(L/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > 0", "0"),
    case!(DiscP4, ZeroToPi, Alpha, false, "right-angle rotation, sinh numerator", "sinh(x/alpha) / (cosh(x/alpha) + cos(L/alpha))", "alpha > 0", "pi tanh(pi/(4 alpha))"),
    case!(DiscIm, ZeroToHalfPi, Alpha, false, "roles of x and L exchanged", "sinh(L/alpha) / (cosh(L/alpha) - cos(x/alpha))", "alpha > 1/6", "pi alpha/2"),
    case!(AppA, SymmetricHalfPi, AAndTheta, true, "reciprocal of the rotated complex log", "1 / (i(x + theta) - a + L)", "|theta| < pi/2, |a - ln(2 cos theta)| >= 1e-4, i theta != a", "pi/(i theta - a) + pi/(1 - e^{i theta - a}) H(ln(2 cos theta) - a)"),
];

/// Every case, in canonical order.
pub fn catalog() -> &'static [IdentityCase] {
    &CATALOG
}

/// Looks a case up by id (case-insensitive).
pub fn find_case(id: &str) -> Result<&'static IdentityCase> {
    let id: CaseId = id.parse()?;
    Ok(case(id))
}

pub fn case(id: CaseId) -> &'static IdentityCase {
    CATALOG
        .iter()
        .find(|c| c.id == id)
        .expect("every id has a catalog entry")
}

const LN2_OVER_2PI: f64 = LN_2 / (2.0 * PI);
const LN2_OVER_PI: f64 = LN_2 / PI;
const LN4_OVER_PI: f64 = 2.0 * LN_2 / PI;
/// Distance below which `a` counts as sitting on a singular value.
const A_EXCLUSION: f64 = 1e-6;
/// Closest an APPA or THETA2 row may sit to the Heaviside threshold.
pub const THRESHOLD_EXCLUSION: f64 = 1e-4;

impl IdentityCase {
    /// Values used for `Fixed` cases.
    pub fn fixed_params(&self) -> Option<CaseParams> {
        match self.id {
            CaseId::Ex1 | CaseId::Ex3 => Some(CaseParams::alpha(3f64.sqrt())),
            CaseId::Ex2 => Some(CaseParams::alpha(2.0)),
            CaseId::Sine0 => Some(CaseParams::default()),
            _ => None,
        }
    }

    fn reject(&self, params: &CaseParams) -> Error {
        Error::OutOfDomain {
            case: self.id.to_string(),
            params: params.to_string(),
            requirement: self.domain.to_string(),
        }
    }

    fn need(&self, v: Option<f64>, name: &'static str) -> Result<f64> {
        v.ok_or(Error::MissingParameter {
            case: self.id.to_string(),
            name,
        })
    }

    pub(crate) fn alpha_of(&self, p: &CaseParams) -> Result<f64> {
        self.need(p.alpha, "alpha")
    }

    pub(crate) fn a_of(&self, p: &CaseParams) -> Result<f64> {
        self.need(p.a, "a")
    }

    pub(crate) fn theta_of(&self, p: &CaseParams) -> Result<f64> {
        self.need(p.theta, "theta")
    }

    pub(crate) fn gamma_of(&self, p: &CaseParams) -> Result<f64> {
        self.need(p.gamma, "gamma")
    }

    /// Checks the domain predicate. Out-of-domain points are rejected, never evaluated.
    pub fn check_domain(&self, params: &CaseParams) -> Result<()> {
        use CaseId::*;
        let ok = match self.id {
            Intro1 | Intro2 | Intro3 | Sine | Cos => {
                let a = self.a_of(params)?;
                a.is_finite() && a.abs() > A_EXCLUSION && (a - LN_2).abs() > A_EXCLUSION
            }
            Intro4 => {
                let (a, g) = (self.a_of(params)?, self.gamma_of(params)?);
                a.is_finite() && a.abs() > A_EXCLUSION && (a - LN_2).abs() > A_EXCLUSION && g >= 0.0 && g.is_finite()
            }
            T1A | T1PA | T3A | T4A | T4PA | DiscL1 => self.alpha_of(params)? > LN2_OVER_2PI,
            T1B | T1PB | T2 | T3B | T4B | T4PB | S3T5A | DiscL2 | DiscContour => self.alpha_of(params)? > LN2_OVER_PI,
            S3T5B => self.alpha_of(params)? > LN4_OVER_PI,
            S3T6 | S3T7 | DiscP3 | DiscP4 => self.alpha_of(params)? > 0.0,
            DiscIm => self.alpha_of(params)? > 1.0 / 6.0,
            DiscP1 | DiscP2 => self.a_of(params)?.is_finite(),
            Theta2 | AppA => {
                let (a, t) = (self.a_of(params)?, self.theta_of(params)?);
                let off =
                    t.abs() < FRAC_PI_2 && a.is_finite() && (a - (2.0 * t.cos()).ln()).abs() >= THRESHOLD_EXCLUSION;
                off && (self.id == Theta2 || a.hypot(t) > A_EXCLUSION)
            }
            Ex1 | Ex2 | Ex3 | Sine0 => true,
        };
        let alpha_ok = params.alpha.is_none_or(|a| a.is_finite() && a < 1e6);
        if ok && alpha_ok {
            Ok(())
        } else {
            Err(self.reject(params))
        }
    }

    /// The default parameter grid (before domain filtering).
    pub fn default_grid(&self) -> Vec<CaseParams> {
        self.grid(&GridOverride::default())
    }

    /// Parameter grid with the given per-parameter lists replacing the defaults.
    ///
    /// Lists for parameters the case does not take are ignored. APPA adds its
    /// two threshold rows per θ only while `a` is not overridden.
    pub fn grid(&self, over: &GridOverride) -> Vec<CaseParams> {
        use CaseId::*;
        let pick = |o: &Option<Vec<f64>>, d: &[f64]| o.clone().unwrap_or_else(|| d.to_vec());
        match self.param_kind {
            ParamKind::Fixed => self.fixed_params().into_iter().collect(),
            ParamKind::Alpha => pick(&over.alpha, &ALPHA_GRID)
                .into_iter()
                .map(CaseParams::alpha)
                .collect(),
            ParamKind::A => {
                let grid: &[f64] = if matches!(self.id, DiscP1 | DiscP2) {
                    &A_GRID_SHORT
                } else {
                    &A_GRID
                };
                pick(&over.a, grid).into_iter().map(CaseParams::a).collect()
            }
            ParamKind::AAndGamma => {
                let gammas = pick(&over.gamma, &GAMMA_GRID);
                pick(&over.a, &A_GRID_SHORT)
                    .into_iter()
                    .flat_map(|a| gammas.iter().map(move |&g| CaseParams::a_gamma(a, g)))
                    .collect()
            }
            ParamKind::AAndTheta => {
                let a_list = pick(&over.a, &A_GRID_THETA);
                let mut out = Vec::new();
                for t in pick(&over.theta, &THETA_GRID) {
                    out.extend(a_list.iter().map(|&a| CaseParams::a_theta(a, t)));
                    if self.id == AppA && over.a.is_none() {
                        let edge = (2.0 * t.cos()).ln();
                        out.push(CaseParams::a_theta(edge - APPA_THRESHOLD_OFFSET, t));
                        out.push(CaseParams::a_theta(edge + APPA_THRESHOLD_OFFSET, t));
                    }
                }
                out
            }
        }
    }
}

/// Per-parameter value lists that replace the default grids; `None` keeps the default.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GridOverride {
    pub alpha: Option<Vec<f64>>,
    pub a: Option<Vec<f64>>,
    pub theta: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
}
