//! Verification sweeps and their table, JSON and CSV renderings.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::catalog::{
    catalog, verify_case, CaseId, CaseParams, ContourTrace, GridOverride, RowStatus, Tolerances, Value,
    VerificationRow, DEFAULT_QUAD_TOL,
};
use crate::elliptic::EllipticParams;
use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Domain(format!(
                "unknown format `{s}` (expected table, json or csv)"
            ))),
        }
    }
}

/// Settings of one `verify` run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    /// Cases to run; empty means the whole catalog.
    pub case_filter: Vec<CaseId>,
    pub grid: GridOverride,
    pub rtol: f64,
    pub atol: f64,
    pub quad_tol: f64,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    /// Worker threads; `None` uses one per processor. Does not affect results.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        Self {
            case_filter: Vec::new(),
            grid: GridOverride::default(),
            rtol: t.rtol,
            atol: t.atol,
            quad_tol: DEFAULT_QUAD_TOL,
            format: Format::Table,
            output_path: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rtol", self.rtol), ("atol", self.atol), ("quad_tol", self.quad_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Domain("jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            rtol: self.rtol,
            atol: self.atol,
            quad_tol: self.quad_tol,
        }
    }

    /// All `(case, parameters)` points of the run in canonical order.
    pub fn points(&self) -> Vec<(CaseId, CaseParams)> {
        let mut out = Vec::new();
        for c in catalog() {
            if !self.case_filter.is_empty() && !self.case_filter.contains(&c.id) {
                continue;
            }
            let mut grid = c.grid(&self.grid);
            grid.sort_by(|p, q| p.canonical_cmp(q));
            grid.dedup();
            out.extend(grid.into_iter().map(|p| (c.id, p)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub non_convergence: usize,
    pub error: usize,
}

impl Summary {
    pub fn tally(rows: &[VerificationRow]) -> Self {
        let mut s = Summary {
            total: rows.len(),
            ..Summary::default()
        };
        for r in rows {
            match r.status {
                RowStatus::Pass => s.pass += 1,
                RowStatus::Fail => s.fail += 1,
                RowStatus::Skipped => s.skipped += 1,
                RowStatus::NonConvergence => s.non_convergence += 1,
                RowStatus::Error => s.error += 1,
            }
        }
        s
    }

    /// 0 when nothing failed, 1 on a failed comparison or evaluation error, 3 on non-convergence alone.
    pub fn exit_status(&self) -> i32 {
        if self.fail > 0 || self.error > 0 {
            1
        } else if self.non_convergence > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub version: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub rows: Vec<VerificationRow>,
}

/// Runs every point of `cfg` on a pool of `cfg.jobs` workers.
///
/// Rows come back in canonical order whatever the completion order.
pub fn run_verify(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let tol = cfg.tolerances();
    let points = cfg.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<VerificationRow> = pool.install(|| {
        points
            .par_iter()
            .map(|(id, p)| verify_case(crate::catalog::case(*id), p, &tol))
            .collect()
    });
    Ok(VerificationReport {
        version: TOOL_VERSION.to_string(),
        config: cfg.clone(),
        summary: Summary::tally(&rows),
        rows,
    })
}

/// Shortest exact-enough text for a double: 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        // keeps -0 and 0 apart and avoids "0.0000000000000000e0"
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    format!("{x:.16e}")
}

fn fmt_value(v: Value) -> String {
    match v {
        Value::Real(x) => fmt_num(x),
        Value::Complex(z) => fmt_complex(z),
    }
}

fn fmt_complex(z: Complex64) -> String {
    let im = fmt_num(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", fmt_num(z.re))
}

/// A double serialized as a raw JSON number with 17 significant digits; `null` when not finite.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

struct NumList<'a>(&'a [f64]);

impl Serialize for NumList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&x| Num(x)))
    }
}

struct JsonParams<'a>(&'a CaseParams);

impl Serialize for JsonParams<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.0.entries();
        let mut m = s.serialize_map(Some(entries.len()))?;
        for (k, v) in entries {
            m.serialize_entry(k, &Num(v))?;
        }
        m.end()
    }
}

struct JsonValue(Value);

impl Serialize for JsonValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Value::Real(x) => Num(x).serialize(s),
            Value::Complex(z) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("re", &Num(z.re))?;
                m.serialize_entry("im", &Num(z.im))?;
                m.end()
            }
        }
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    case_id: CaseId,
    params: JsonParams<'a>,
    lhs: Option<JsonValue>,
    rhs: Option<JsonValue>,
    abs_err: Option<Num>,
    rel_err: Option<Num>,
    pass: bool,
    status: RowStatus,
    evaluations: usize,
    error_estimate: Option<Num>,
    note: Option<&'a str>,
}

impl<'a> From<&'a VerificationRow> for JsonRow<'a> {
    fn from(r: &'a VerificationRow) -> Self {
        JsonRow {
            case_id: r.case_id,
            params: JsonParams(&r.params),
            lhs: r.lhs.map(JsonValue),
            rhs: r.rhs.map(JsonValue),
            abs_err: r.abs_err.map(Num),
            rel_err: r.rel_err.map(Num),
            pass: r.pass,
            status: r.status,
            evaluations: r.evaluations,
            error_estimate: r.error_estimate.map(Num),
            note: r.note.as_deref(),
        }
    }
}

#[derive(Serialize)]
struct JsonGrid<'a> {
    alpha: Option<NumList<'a>>,
    a: Option<NumList<'a>>,
    theta: Option<NumList<'a>>,
    gamma: Option<NumList<'a>>,
}

#[derive(Serialize)]
struct JsonConfig<'a> {
    case_filter: &'a [CaseId],
    grid: JsonGrid<'a>,
    rtol: Num,
    atol: Num,
    quad_tol: Num,
    format: Format,
    output_path: Option<&'a PathBuf>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'a str,
    config: JsonConfig<'a>,
    summary: Summary,
    rows: Vec<JsonRow<'a>>,
}

impl VerificationReport {
    pub fn exit_status(&self) -> i32 {
        self.summary.exit_status()
    }

    fn json_view(&self) -> JsonReport<'_> {
        let c = &self.config;
        JsonReport {
            version: &self.version,
            config: JsonConfig {
                case_filter: &c.case_filter,
                grid: JsonGrid {
                    alpha: c.grid.alpha.as_deref().map(NumList),
                    a: c.grid.a.as_deref().map(NumList),
                    theta: c.grid.theta.as_deref().map(NumList),
                    gamma: c.grid.gamma.as_deref().map(NumList),
                },
                rtol: Num(c.rtol),
                atol: Num(c.atol),
                quad_tol: Num(c.quad_tol),
                format: c.format,
                output_path: c.output_path.as_ref(),
            },
            summary: self.summary,
            rows: self.rows.iter().map(JsonRow::from).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json_view()).expect("report serializes")
    }

    /// The `rows` array alone, the part that must not change between identical runs.
    pub fn rows_json(&self) -> String {
        let rows: Vec<JsonRow<'_>> = self.rows.iter().map(JsonRow::from).collect();
        serde_json::to_string(&rows).expect("rows serialize")
    }

    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "case_id",
            "param_name",
            "param_value",
            "lhs",
            "rhs",
            "abs_err",
            "rel_err",
            "pass",
            "evaluations",
        ])?;
        for r in &self.rows {
            let entries = r.params.entries();
            let names: Vec<&str> = entries.iter().map(|(n, _)| *n).collect();
            let values: Vec<String> = entries.iter().map(|(_, v)| fmt_num(*v)).collect();
            let opt = |v: Option<String>| v.unwrap_or_default();
            out.write_record([
                r.case_id.as_str().to_string(),
                names.join("|"),
                values.join("|"),
                opt(r.lhs.map(fmt_value)),
                opt(r.rhs.map(fmt_value)),
                opt(r.abs_err.map(fmt_num)),
                opt(r.rel_err.map(fmt_num)),
                r.pass.to_string(),
                r.evaluations.to_string(),
            ])?;
        }
        out.flush()
    }

    pub fn write_table<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "{:<13} {:<34} {:>26} {:>10} {:>8}  status",
            "case", "params", "lhs", "abs_err", "evals"
        )?;
        for r in &self.rows {
            let lhs = r.lhs.map(short_value).unwrap_or_else(|| "-".into());
            let err = r.abs_err.map(|e| format!("{e:.2e}")).unwrap_or_else(|| "-".into());
            writeln!(
                w,
                "{:<13} {:<34} {:>26} {:>10} {:>8}  {}",
                r.case_id.as_str(),
                r.params.to_string(),
                lhs,
                err,
                r.evaluations,
                status_word(r.status),
            )?;
            if let Some(n) = r.note.as_deref().filter(|_| r.status != RowStatus::Pass) {
                writeln!(w, "    {n}")?;
            }
        }
        writeln!(w, "{}", self.summary)
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        match format {
            Format::Table => self.write_table(w),
            Format::Json => writeln!(w, "{}", self.to_json()),
            Format::Csv => self.write_csv(w),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rows: {} pass, {} fail, {} skipped, {} non-convergent, {} errors",
            self.total, self.pass, self.fail, self.skipped, self.non_convergence, self.error
        )
    }
}

fn status_word(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Pass => "PASS",
        RowStatus::Fail => "FAIL",
        RowStatus::Skipped => "skipped",
        RowStatus::NonConvergence => "NO-CONV",
        RowStatus::Error => "ERROR",
    }
}

fn short_value(v: Value) -> String {
    match v {
        Value::Real(x) => format!("{x:.15}"),
        Value::Complex(z) => format!("{:.10}{:+.10}i", z.re, z.im),
    }
}

/// Lines `name value` for the elliptic parameters, plus the Legendre residual.
pub fn write_params_table<W: Write>(p: &EllipticParams<f64>, mut w: W) -> io::Result<()> {
    for (name, v) in params_entries(p) {
        writeln!(w, "{name:<18} {}", fmt_num(v))?;
    }
    Ok(())
}

pub fn params_json(p: &EllipticParams<f64>) -> String {
    let entries = params_entries(p);
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::pretty(&mut buf);
    let mut m = ser.serialize_map(Some(entries.len())).expect("in-memory map");
    for (k, v) in entries {
        m.serialize_entry(k, &Num(v)).expect("number serializes");
    }
    SerializeMap::end(m).expect("in-memory map");
    String::from_utf8(buf).expect("json is utf-8")
}

fn params_entries(p: &EllipticParams<f64>) -> [(&'static str, f64); 9] {
    [
        ("alpha", p.alpha),
        ("k", p.k),
        ("k_prime", p.k_prime),
        ("K", p.big_k),
        ("K_prime", p.big_k_prime),
        ("E", p.big_e),
        ("E_prime", p.big_e_prime),
        ("q", p.q),
        ("legendre_residual", p.legendre_residual()),
    ]
}

/// Path points and the integral value; the integral is repeated on every row.
pub fn write_contour_csv<W: Write>(t: &ContourTrace, w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "re_z", "im_z", "integral_re", "integral_im"])?;
    let (ire, iim) = (fmt_num(t.value.re), fmt_num(t.value.im));
    for &(x, re, im) in &t.points {
        out.write_record([fmt_num(x), fmt_num(re), fmt_num(im), ire.clone(), iim.clone()])?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CaseId;

    fn t2_config() -> RunConfig {
        RunConfig {
            case_filter: vec![CaseId::T2],
            grid: GridOverride {
                alpha: Some(vec![2.0, 1.0, 2.0]),
                ..GridOverride::default()
            },
            jobs: Some(2),
            ..RunConfig::default()
        }
    }

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(fmt_num(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_num(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_num(-2.5), "-2.5000000000000000e0");
        let z = fmt_complex(Complex64::new(1.0, -0.5));
        assert_eq!(z, "1.0000000000000000e0-5.0000000000000000e-1i");
    }

    #[test]
    fn sweep_is_sorted_deduplicated_and_tallied() {
        let r = run_verify(&t2_config()).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].params.alpha, Some(1.0));
        assert_eq!(r.summary.pass, 2);
        assert_eq!(r.exit_status(), 0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"]["total"], 2);
        assert_eq!(v["rows"][1]["params"]["alpha"].as_f64(), Some(2.0));
        assert_eq!(v["rows"][0]["case_id"], "T2");
        assert!(v.get("meta").is_none());
    }

    #[test]
    fn csv_has_the_fixed_columns() {
        let mut cfg = t2_config();
        cfg.case_filter = vec![CaseId::AppA];
        cfg.grid = GridOverride {
            a: Some(vec![0.2]),
            theta: Some(vec![0.0]),
            ..GridOverride::default()
        };
        let r = run_verify(&cfg).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "case_id,param_name,param_value,lhs,rhs,abs_err,rel_err,pass,evaluations"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("APPA,a|theta,2.0000000000000001e-1|0.0,"), "{row}");
    }

    #[test]
    fn invalid_tolerances_are_rejected() {
        let cfg = RunConfig {
            rtol: 0.0,
            ..RunConfig::default()
        };
        assert!(run_verify(&cfg).is_err());
    }

    #[test]
    fn exit_status_priorities() {
        let s = Summary {
            total: 2,
            pass: 1,
            non_convergence: 1,
            ..Summary::default()
        };
        assert_eq!(s.exit_status(), 3);
        assert_eq!(Summary { fail: 1, ..s }.exit_status(), 1);
        assert_eq!(
            Summary {
                total: 3,
                skipped: 3,
                ..Summary::default()
            }
            .exit_status(),
            0
        );
    }
}
