use serde::Serialize;

use super::{evaluate_lhs, evaluate_rhs, CaseId, CaseParams, IdentityCase, Value, DEFAULT_QUAD_TOL};
use crate::error::Error;

/// Pass/fail tolerances of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    /// Relative tolerance requested from the quadrature layer.
    pub quad_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
            quad_tol: DEFAULT_QUAD_TOL,
        }
    }
}

impl Tolerances {
    pub fn accepts(&self, abs_err: f64, rhs_abs: f64) -> bool {
        abs_err <= self.atol.max(self.rtol * rhs_abs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// Parameters outside the case's domain; nothing was evaluated.
    Skipped,
    /// Quadrature or modulus solver did not converge.
    NonConvergence,
    /// Any other evaluation error.
    Error,
}

/// One `(case, parameters)` check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRow {
    pub case_id: CaseId,
    pub params: CaseParams,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub abs_err: Option<f64>,
    /// `abs_err / |rhs|`, or `abs_err` itself when the right side is zero.
    pub rel_err: Option<f64>,
    pub pass: bool,
    pub status: RowStatus,
    pub evaluations: usize,
    pub error_estimate: Option<f64>,
    pub note: Option<String>,
}

impl VerificationRow {
    fn without_values(case: &IdentityCase, params: &CaseParams, status: RowStatus, note: String) -> Self {
        Self {
            case_id: case.id,
            params: *params,
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            pass: false,
            status,
            evaluations: 0,
            error_estimate: None,
            note: Some(note),
        }
    }
}

fn status_of(e: &Error) -> RowStatus {
    match e {
        Error::OutOfDomain { .. } => RowStatus::Skipped,
        Error::Accuracy { .. } | Error::Solver { .. } => RowStatus::NonConvergence,
        _ => RowStatus::Error,
    }
}

/// Evaluates both sides and compares them. Errors become annotated rows.
pub fn verify_case(case: &IdentityCase, params: &CaseParams, tol: &Tolerances) -> VerificationRow {
    if let Err(e) = case.check_domain(params) {
        return VerificationRow::without_values(case, params, status_of(&e), e.to_string());
    }
    let rhs = match evaluate_rhs(case, params) {
        Ok(v) => v,
        Err(e) => return VerificationRow::without_values(case, params, status_of(&e), e.to_string()),
    };
    let lhs = match evaluate_lhs(case, params, tol.quad_tol) {
        Ok(v) => v,
        Err(e) => {
            let mut row = VerificationRow::without_values(case, params, status_of(&e), e.to_string());
            row.rhs = Some(rhs);
            return row;
        }
    };
    let abs_err = lhs.value.distance(rhs);
    let scale = rhs.abs();
    let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
    let pass = tol.accepts(abs_err, scale);
    VerificationRow {
        case_id: case.id,
        params: *params,
        lhs: Some(lhs.value),
        rhs: Some(rhs),
        abs_err: Some(abs_err),
        rel_err: Some(rel_err),
        pass,
        status: if pass { RowStatus::Pass } else { RowStatus::Fail },
        evaluations: lhs.evaluations,
        error_estimate: Some(lhs.error_estimate),
        note: None,
    }
}
