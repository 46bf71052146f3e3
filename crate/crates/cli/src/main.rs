use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logtrig_core::catalog::{
    case, contour_trace, verify_case, CaseId, CaseParams, GridOverride, ParamKind, RowStatus, Tolerances,
    DEFAULT_QUAD_TOL,
};
use logtrig_core::modulus::{modulus_from_alpha, SolverConfig};
use logtrig_core::report::{
    params_json, run_verify, write_contour_csv, write_params_table, Format, RunConfig, Summary, VerificationReport,
    TOOL_VERSION,
};
use logtrig_core::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_SKIPPED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "logtrig",
    version,
    about = "Checks log-trigonometric integral identities numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity catalog over parameter grids.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Evaluate both sides of one case at one parameter point.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Print the elliptic parameters for a ratio alpha = K'/K.
    Params(ParamsArgs),
    /// Sample the contour path and integrate along it.
    Contour(ContourArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Tol {
    #[arg(long, default_value_t = 1e-8)]
    rtol: f64,
    #[arg(long, default_value_t = 1e-10)]
    atol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Case ids, comma separated or repeated; all cases when absent.
    #[arg(long = "case", value_delimiter = ',', value_parser = parse_case)]
    cases: Vec<CaseId>,
    /// Replaces the alpha grid of alpha cases. Accepts sqrt2 and sqrt3.
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    a: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    theta: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    gamma: Option<Vec<f64>>,
    #[command(flatten)]
    tol: Tol,
    #[command(flatten)]
    output: Output,
    /// Worker threads (default: one per processor).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_parser = parse_case)]
    case: CaseId,
    #[arg(long, value_parser = parse_real)]
    alpha: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    a: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    theta: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    gamma: Option<f64>,
    #[command(flatten)]
    tol: Tol,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Args)]
struct ContourArgs {
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    alpha: f64,
    /// Number of path samples; rounded up to an odd count.
    #[arg(long, default_value_t = 65)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.trim().parse::<CaseId>().map_err(|e| e.to_string())
}

fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let v = match body.to_ascii_lowercase().as_str() {
        "sqrt2" => std::f64::consts::SQRT_2,
        "sqrt3" => 3f64.sqrt(),
        _ => return t.parse::<f64>().map_err(|_| format!("`{s}` is not a number")),
    };
    Ok(sign * v)
}

enum Failure {
    Usage(String),
    NonConvergence(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Solver { .. } | Error::Accuracy { .. } => Failure::NonConvergence(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn tolerances(t: &Tol) -> Result<Tolerances, Failure> {
    for (name, v) in [("rtol", t.rtol), ("atol", t.atol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::Usage(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(Tolerances {
        rtol: t.rtol,
        atol: t.atol,
        quad_tol: DEFAULT_QUAD_TOL,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let tol = tolerances(&args.tol)?;
    let cfg = RunConfig {
        case_filter: args.cases,
        grid: GridOverride {
            alpha: args.alpha,
            a: args.a,
            theta: args.theta,
            gamma: args.gamma,
        },
        rtol: tol.rtol,
        atol: tol.atol,
        quad_tol: tol.quad_tol,
        format: args.output.format.into(),
        output_path: args.output.out.clone(),
        jobs: args.jobs.map(|j| j as usize),
    };
    let report = run_verify(&cfg)?;
    let mut w = sink(cfg.output_path.as_deref())?;
    report.write(cfg.format, &mut w)?;
    w.flush()?;
    Ok(report.exit_status() as u8)
}

fn eval_params(args: &EvalArgs) -> Result<CaseParams, Failure> {
    let c = case(args.case);
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Failure::Usage(format!("case {} needs --{name}", c.id)));
    let given = [args.alpha, args.a, args.theta, args.gamma];
    Ok(match c.param_kind {
        ParamKind::Fixed => {
            if given.iter().any(Option::is_some) {
                return Err(Failure::Usage(format!("case {} takes no parameters", c.id)));
            }
            c.fixed_params().unwrap_or_default()
        }
        ParamKind::Alpha => CaseParams::alpha(need(args.alpha, "alpha")?),
        ParamKind::A => CaseParams::a(need(args.a, "a")?),
        ParamKind::AAndTheta => CaseParams::a_theta(need(args.a, "a")?, need(args.theta, "theta")?),
        ParamKind::AAndGamma => CaseParams::a_gamma(need(args.a, "a")?, need(args.gamma, "gamma")?),
    })
}

fn cmd_eval(args: EvalArgs) -> Result<u8, Failure> {
    let tol = tolerances(&args.tol)?;
    let params = eval_params(&args)?;
    let c = case(args.case);
    let row = verify_case(c, &params, &tol);
    let status = match row.status {
        RowStatus::Pass => 0,
        RowStatus::Fail | RowStatus::Error => 1,
        RowStatus::NonConvergence => EXIT_NON_CONVERGENCE,
        RowStatus::Skipped => EXIT_SKIPPED,
    };
    let format: Format = args.output.format.into();
    let mut w = sink(args.output.out.as_deref())?;
    if format == Format::Table {
        writeln!(w, "case      {} ({})", c.id, c.description)?;
        writeln!(w, "params    {params}")?;
        writeln!(w, "closed    {}", c.closed_form)?;
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        writeln!(w, "lhs       {}", opt(row.lhs.map(|v| v.to_string())))?;
        writeln!(w, "rhs       {}", opt(row.rhs.map(|v| v.to_string())))?;
        writeln!(w, "abs_err   {}", opt(row.abs_err.map(|e| format!("{e:.3e}"))))?;
        writeln!(w, "rel_err   {}", opt(row.rel_err.map(|e| format!("{e:.3e}"))))?;
        writeln!(w, "estimate  {}", opt(row.error_estimate.map(|e| format!("{e:.3e}"))))?;
        writeln!(w, "evals     {}", row.evaluations)?;
        writeln!(w, "status    {:?}", row.status)?;
        if let Some(n) = &row.note {
            writeln!(w, "note      {n}")?;
        }
    } else {
        let cfg = RunConfig {
            case_filter: vec![c.id],
            rtol: tol.rtol,
            atol: tol.atol,
            format,
            output_path: args.output.out.clone(),
            ..RunConfig::default()
        };
        let rows = vec![row];
        let report = VerificationReport {
            version: TOOL_VERSION.to_string(),
            config: cfg,
            summary: Summary::tally(&rows),
            rows,
        };
        report.write(format, &mut w)?;
    }
    w.flush()?;
    Ok(status)
}

fn cmd_params(args: ParamsArgs) -> Result<u8, Failure> {
    let p = modulus_from_alpha(args.alpha, &SolverConfig::default())?;
    let mut w = io::stdout().lock();
    match args.format {
        FormatArg::Json => writeln!(w, "{}", params_json(&p))?,
        FormatArg::Table => write_params_table(&p, &mut w)?,
        FormatArg::Csv => {
            return Err(Failure::Usage("params supports table and json output".into()));
        }
    }
    Ok(0)
}

fn cmd_contour(args: ContourArgs) -> Result<u8, Failure> {
    let t = contour_trace(args.alpha, args.points, DEFAULT_QUAD_TOL)?;
    let mut w = sink(args.out.as_deref())?;
    write_contour_csv(&t, &mut w)?;
    w.flush()?;
    if args.out.is_some() {
        println!(
            "integral {}{:+}i (estimate {:.2e})",
            t.value.re, t.value.im, t.error_estimate
        );
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Params(a) => cmd_params(a),
        Command::Contour(a) => cmd_contour(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NonConvergence(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_NON_CONVERGENCE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}
