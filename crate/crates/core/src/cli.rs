//! The `zpgd` command line: classify, curves, eval, verify.

use crate::harness::{self, CheckResult, EpsSchedule};
use crate::limit::{
    build_solution_with_tolerance, Breakpoint, CurveName, LimitError, LimitSolution, LimitValue,
    MajorCase,
};
use crate::oracle::QuadratureSpec;
use crate::viscous::{self, DeltaRiemannData};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "zpgd",
    version,
    about = "Viscous and limit solutions of zero-pressure gas dynamics with delta data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the sign case, interaction point and breakpoints
    Classify(Options),
    /// Sample every curve of the limit solution on a time grid
    Curves(Options),
    /// Evaluate viscous and limit fields on an (x, t) grid
    Eval(Options),
    /// Run the oracle, invariant, convergence and localization checks
    Verify(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// JSON file with the same keys as the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ua: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ub: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rhoc: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rhod: Option<f64>,
    /// Comma-separated list, or start:stop:n
    #[arg(long)]
    pub eps: Option<String>,
    /// Comma-separated list, or start:stop:n
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Treat |u_a + u_b| up to this value as zero
    #[arg(long)]
    pub sum_tolerance: Option<f64>,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub ua: Option<f64>,
    pub ub: Option<f64>,
    pub rhoc: Option<f64>,
    pub rhod: Option<f64>,
    pub eps: Option<ListValue>,
    pub t: Option<ListValue>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub nx: Option<usize>,
    pub margin: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(alias = "sum-tolerance")]
    pub sum_tolerance: Option<f64>,
    /// Shift the last segment of the named curve before verification.
    pub debug_corrupt_curve: Option<String>,
}

/// A list given either as a JSON array or as a string in flag syntax.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ListValue {
    Numbers(Vec<f64>),
    Text(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<LimitError> for CliError {
    fn from(e: LimitError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<harness::HarnessError> for CliError {
    fn from(e: harness::HarnessError) -> Self {
        match e {
            harness::HarnessError::Limit(l) => l.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub data: DeltaRiemannData,
    pub eps: Option<Vec<f64>>,
    pub t: Option<Vec<f64>>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub nx: Option<usize>,
    pub margin: f64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub sum_tolerance: f64,
    pub corrupt_curve: Option<CurveName>,
}

/// Parse `1,2,3` or `start:stop:n`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |what: &str| CliError::Input(format!("cannot parse list {s:?}: {what}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad("start"))?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad("stop"))?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad("count"))?;
        if n < 2 {
            return Err(bad("count must be at least 2"));
        }
        return Ok((0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect());
    }
    if parts.len() != 1 {
        return Err(bad("expected start:stop:n"));
    }
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad(p)))
        .collect()
}

impl RunConfig {
    pub fn resolve(opts: &Options) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| {
                    CliError::Input(format!("invalid config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };
        let need = |flag: Option<f64>, cfg: Option<f64>, name: &str| {
            flag.or(cfg)
                .ok_or_else(|| CliError::Input(format!("missing required value {name}")))
        };
        let data = DeltaRiemannData::new(
            need(opts.a, file.a, "a")?,
            need(opts.c, file.c, "c")?,
            need(opts.b, file.b, "b")?,
            need(opts.d, file.d, "d")?,
            need(opts.ua, file.ua, "ua")?,
            need(opts.ub, file.ub, "ub")?,
            need(opts.rhoc, file.rhoc, "rhoc")?,
            need(opts.rhod, file.rhod, "rhod")?,
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let list = |flag: &Option<String>,
                    cfg: &Option<ListValue>|
         -> Result<Option<Vec<f64>>, CliError> {
            match (flag, cfg) {
                (Some(s), _) => parse_list(s).map(Some),
                (None, Some(ListValue::Text(s))) => parse_list(s).map(Some),
                (None, Some(ListValue::Numbers(v))) => Ok(Some(v.clone())),
                (None, None) => Ok(None),
            }
        };
        let corrupt_curve = match &file.debug_corrupt_curve {
            Some(name) => Some(
                CurveName::parse(name)
                    .ok_or_else(|| CliError::Input(format!("unknown curve {name:?}")))?,
            ),
            None => None,
        };
        let cfg = RunConfig {
            data,
            eps: list(&opts.eps, &file.eps)?,
            t: list(&opts.t, &file.t)?,
            xmin: opts.xmin.or(file.xmin),
            xmax: opts.xmax.or(file.xmax),
            nx: opts.nx.or(file.nx),
            margin: opts.margin.or(file.margin).unwrap_or(0.1),
            format: opts.format.or(file.format),
            out: opts.out.clone().or(file.out),
            sum_tolerance: opts.sum_tolerance.or(file.sum_tolerance).unwrap_or(0.0),
            corrupt_curve,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(n) = self.nx {
            if n < 2 {
                return Err(CliError::Input("nx must be at least 2".into()));
            }
        }
        if let (Some(lo), Some(hi)) = (self.xmin, self.xmax) {
            if !(lo < hi) {
                return Err(CliError::Input(format!(
                    "need xmin < xmax, got {lo} and {hi}"
                )));
            }
        }
        if !(self.margin > 0.0) {
            return Err(CliError::Input("margin must be positive".into()));
        }
        if !(self.sum_tolerance >= 0.0) {
            return Err(CliError::Input("sum tolerance must be non-negative".into()));
        }
        if let Some(ts) = &self.t {
            if ts.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
                return Err(CliError::Input(
                    "times must be finite and non-negative".into(),
                ));
            }
        }
        if let Some(es) = &self.eps {
            if es.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
                return Err(CliError::Input("eps values must be positive".into()));
            }
        }
        Ok(())
    }

    fn solution(&self) -> Result<LimitSolution, CliError> {
        let mut sol = build_solution_with_tolerance(&self.data, self.sum_tolerance)?;
        if let Some(name) = self.corrupt_curve {
            sol.perturb_curve(name, CORRUPTION_SHIFT)?;
        }
        Ok(sol)
    }
}

const CORRUPTION_SHIFT: f64 = 0.05;

fn num(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

#[derive(Serialize)]
struct BreakpointRow {
    curve: CurveName,
    segment: usize,
    t: f64,
    printed: f64,
}

impl From<&Breakpoint> for BreakpointRow {
    fn from(b: &Breakpoint) -> Self {
        Self {
            curve: b.curve,
            segment: b.segment,
            t: b.t,
            printed: b.printed,
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    case: MajorCase,
    subcase: Option<crate::limit::Subcase>,
    x_star: Option<f64>,
    t_star: Option<f64>,
    wall: Option<f64>,
    breakpoints: Vec<BreakpointRow>,
    discrepancies: Vec<BreakpointRow>,
}

fn cmd_classify(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let sol = cfg.solution()?;
    let wall = (sol.tag.major == MajorCase::Case5).then(|| 0.5 * (sol.data.a() + sol.data.b()));
    if cfg.format == Some(Format::Json) {
        let report = ClassifyReport {
            case: sol.tag.major,
            subcase: sol.tag.subcase,
            x_star: sol.interaction.map(|p| p.0),
            t_star: sol.interaction.map(|p| p.1),
            wall,
            breakpoints: sol.breakpoints.iter().map(BreakpointRow::from).collect(),
            discrepancies: sol
                .discrepancies()
                .iter()
                .map(BreakpointRow::from)
                .collect(),
        };
        return Ok((to_json(&report)?, true));
    }
    let mut s = String::new();
    match wall {
        Some(w) => writeln!(s, "{}, wall (a+b)/2 = {w}", sol.tag.major),
        None => writeln!(s, "{}", sol.tag.major),
    }
    .expect("write to string");
    if let Some(sub) = sol.tag.subcase {
        writeln!(s, "subcase: {sub}").expect("write to string");
    }
    if let Some((x, t)) = sol.interaction {
        writeln!(s, "x_star: {x}\nt_star: {t}").expect("write to string");
    }
    for b in &sol.breakpoints {
        let flag = if b.discrepancy { "  DISCREPANCY" } else { "" };
        writeln!(
            s,
            "breakpoint {}[{}]: t = {} (tabulated {}){flag}",
            b.curve, b.segment, b.t, b.printed
        )
        .expect("write to string");
    }
    Ok((s, true))
}

fn cmd_curves(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let sol = cfg.solution()?;
    let grid = cfg
        .t
        .clone()
        .unwrap_or_else(|| parse_list("0:5:101").expect("valid default"));
    let mut rows = Vec::new();
    for c in &sol.curves {
        let bps = c.breakpoint_times();
        let mut ts: Vec<(f64, bool)> = grid.iter().map(|&t| (t, false)).collect();
        ts.extend(bps.iter().map(|&t| (t, true)));
        ts.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)));
        ts.dedup_by(|later, earlier| later.0 == earlier.0);
        for (t, is_bp) in ts {
            let seg = c
                .segments
                .iter()
                .find(|s| t <= s.t_end)
                .unwrap_or_else(|| c.segments.last().expect("segments"));
            rows.push(CurveRow {
                curve_name: c.name,
                t,
                x: c.position(t),
                segment_kind: seg.kind.label(),
                is_breakpoint: is_bp,
            });
        }
    }
    if cfg.format == Some(Format::Json) {
        return Ok((to_json(&rows)?, true));
    }
    let mut s = String::from("curve_name,t,x,segment_kind,is_breakpoint\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{}",
            r.curve_name,
            num(r.t),
            num(r.x),
            r.segment_kind,
            r.is_breakpoint
        )
        .expect("write to string");
    }
    Ok((s, true))
}

#[derive(Serialize)]
struct CurveRow {
    curve_name: CurveName,
    t: f64,
    x: f64,
    segment_kind: &'static str,
    is_breakpoint: bool,
}

#[derive(Serialize)]
struct EvalRow {
    x: f64,
    t: f64,
    u_eps: f64,
    #[serde(rename = "R_eps")]
    r_eps: f64,
    u_limit: Option<f64>,
    #[serde(rename = "R_plateau")]
    r_plateau: Option<f64>,
    on_curve: bool,
}

fn cmd_eval(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let sol = cfg.solution()?;
    let eps = match cfg.eps.as_deref() {
        None => 0.01,
        Some([e]) => *e,
        Some(_) => return Err(CliError::Input("eval takes a single eps value".into())),
    };
    let ts = cfg.t.clone().unwrap_or_else(|| vec![1.0]);
    if ts.iter().any(|t| *t <= 0.0) {
        return Err(CliError::Input("eval needs t > 0".into()));
    }
    let d = &cfg.data;
    let lo = cfg.xmin.unwrap_or(d.a() - 1.0);
    let hi = cfg.xmax.unwrap_or(d.d() + 1.0);
    if !(lo < hi) {
        return Err(CliError::Input(format!(
            "need xmin < xmax, got {lo} and {hi}"
        )));
    }
    let nx = cfg.nx.unwrap_or(101);
    let mut rows = Vec::with_capacity(ts.len() * nx);
    for &t in &ts {
        let carriers: Vec<f64> = sol
            .carriers
            .iter()
            .map(|c| sol.curve(c.curve).position(t))
            .collect();
        for i in 0..nx {
            let x = lo + (hi - lo) * i as f64 / (nx - 1) as f64;
            let run = |e: viscous::ViscousError| CliError::Runtime(e.to_string());
            let u_eps = viscous::viscous_u(d, eps, x, t).map_err(run)?;
            let r_eps = viscous::viscous_r(d, eps, x, t).map_err(run)?;
            let lim = sol.eval_u(x, t)?;
            let on_carrier = carriers
                .iter()
                .any(|c| (x - c).abs() <= 1e-12 * x.abs().max(1.0));
            let on_curve = on_carrier || matches!(lim, LimitValue::OnDiscontinuity { .. });
            rows.push(EvalRow {
                x,
                t,
                u_eps,
                r_eps,
                u_limit: lim.value(),
                r_plateau: if on_carrier {
                    None
                } else {
                    Some(sol.r_plateau(x, t)?)
                },
                on_curve,
            });
        }
    }
    if cfg.format == Some(Format::Json) {
        return Ok((to_json(&rows)?, true));
    }
    let mut s = String::from("x,t,u_eps,R_eps,u_limit,R_plateau,on_curve\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            num(r.x),
            num(r.t),
            num(r.u_eps),
            num(r.r_eps),
            num(r.u_limit.unwrap_or(f64::NAN)),
            num(r.r_plateau.unwrap_or(f64::NAN)),
            r.on_curve
        )
        .expect("write to string");
    }
    Ok((s, true))
}

/// Machine-readable verification report.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub case: MajorCase,
    pub subcase: Option<crate::limit::Subcase>,
    pub breakpoints: Vec<Breakpoint>,
    pub discrepancies: Vec<Breakpoint>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub const ORACLE_EPS: [f64; 2] = [0.5, 0.1];
pub const ORACLE_TOL: f64 = 1e-6;
pub const HOPF_COLE_TOL: f64 = 1e-10;
pub const CONVERGENCE_TOL: f64 = 0.05;
pub const PLATEAU_TOL: f64 = 1e-3;
pub const LOCALIZATION_TOL: f64 = 0.05;
pub const LOCALIZATION_WINDOW: f64 = 0.2;
pub const DEFAULT_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

pub fn verify(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let sol = cfg.solution()?;
    let data = &cfg.data;
    let mut checks = Vec::new();
    let spec = QuadratureSpec::default();
    for eps in ORACLE_EPS {
        let ag = harness::oracle_agreement(data, eps, &spec)?;
        let worst = ag.worst_u.max(ag.worst_r);
        checks.push(check(
            &format!("oracle_agreement_eps_{eps}"),
            worst,
            ORACLE_TOL,
            format!(
                "{} points, u {:.3e}, R {:.3e}, regions {}",
                ag.points, ag.worst_u, ag.worst_r, ag.regions_hit
            ),
        ));
        let gap = harness::hopf_cole_gap(data, eps)?;
        checks.push(check(
            &format!("hopf_cole_eps_{eps}"),
            gap,
            HOPF_COLE_TOL,
            "relative".into(),
        ));
    }
    checks.extend(harness::invariant_suite_for(&sol)?.checks);

    let schedule = match &cfg.eps {
        Some(v) => EpsSchedule::new(v.clone())?,
        None => EpsSchedule::default(),
    };
    let times = cfg.t.clone().unwrap_or_else(|| DEFAULT_TIMES.to_vec());
    if times.iter().any(|t| *t <= 0.0) {
        return Err(CliError::Input("verify needs t > 0".into()));
    }
    let report = harness::converge_scan(data, &times, &schedule, cfg.margin)?;
    let last = report.rows.last().expect("schedule is non-empty");
    let eps_min = last.eps;
    checks.push(check(
        "convergence_u",
        last.sup_error_u,
        CONVERGENCE_TOL,
        format!(
            "eps = {eps_min}, {} probes, {} excluded",
            last.probe_count, last.excluded_near_curve
        ),
    ));
    checks.push(CheckResult {
        name: "convergence_monotone".into(),
        passed: report.monotone_flag,
        worst: report
            .rows
            .windows(2)
            .map(|w| (w[1].sup_error_u - w[0].sup_error_u).max(w[1].sup_error_r - w[0].sup_error_r))
            .fold(0.0, f64::max),
        threshold: 1e-12,
        detail: report
            .rows
            .iter()
            .map(|r| format!("{}:{:.3e}/{:.3e}", r.eps, r.sup_error_u, r.sup_error_r))
            .collect::<Vec<_>>()
            .join(" "),
    });
    let mut plateau_worst = 0.0f64;
    let mut skipped = 0;
    let mut loc_worst = 0.0f64;
    for &t in &times {
        for p in harness::plateau_check(data, eps_min, t)? {
            if p.skipped {
                skipped += 1;
            } else {
                plateau_worst = plateau_worst.max(p.deviation());
            }
        }
        let loc = harness::locate_delta(data, eps_min, t, LOCALIZATION_WINDOW)?;
        for p in loc.peaks {
            loc_worst = loc_worst.max(p.offset);
        }
    }
    checks.push(check(
        "plateau",
        plateau_worst,
        PLATEAU_TOL,
        format!("eps = {eps_min}, {skipped} narrow plateaus skipped"),
    ));
    checks.push(check(
        "localization",
        loc_worst,
        LOCALIZATION_TOL,
        format!("eps = {eps_min}"),
    ));
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        case: sol.tag.major,
        subcase: sol.tag.subcase,
        breakpoints: sol.breakpoints.clone(),
        discrepancies: sol.discrepancies(),
        checks,
        passed,
    })
}

fn check(name: &str, worst: f64, threshold: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: worst <= threshold,
        worst,
        threshold,
        detail,
    }
}

fn cmd_verify(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let report = verify(cfg)?;
    let text = to_json(&report)?;
    Ok((text, report.passed))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

type Handler = fn(&RunConfig) -> Result<(String, bool), CliError>;

/// Run the command and return the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (opts, cmd): (&Options, Handler) = match &cli.command {
        Command::Classify(o) => (o, cmd_classify),
        Command::Curves(o) => (o, cmd_curves),
        Command::Eval(o) => (o, cmd_eval),
        Command::Verify(o) => (o, cmd_verify),
    };
    let result = RunConfig::resolve(opts).and_then(|cfg| {
        let (text, ok) = cmd(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?,
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Runtime(e.to_string()))?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            if let Command::Verify(_) = cli.command {
                let _ = writeln!(stderr, "verification failed");
            }
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, stdout, stderr),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_syntax() {
        assert_eq!(parse_list("0.1, 0.01").unwrap(), vec![0.1, 0.01]);
        assert_eq!(parse_list("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_list("0:1").is_err());
        assert!(parse_list("x").is_err());
        assert!(parse_list("0:1:1").is_err());
    }

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(num(3.0), "3.0000000000000000e0");
        assert_eq!(num(-0.25), "-2.5000000000000000e-1");
    }

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_args(args.iter().copied(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const CASE1: [&str; 16] = [
        "--a", "0", "--b", "1", "--c", "0.5", "--d", "2", "--ua", "-0.5", "--ub", "2", "--rhoc",
        "1", "--rhod", "2",
    ];

    #[test]
    fn classify_text() {
        let mut args = vec!["zpgd", "classify"];
        args.extend(CASE1);
        let (code, out, _) = run_capture(&args);
        assert_eq!(code, 0);
        assert!(out.starts_with("Case1\n"));
    }

    #[test]
    fn missing_value_is_input_error() {
        let (code, _, err) = run_capture(&["zpgd", "classify", "--a", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing"));
    }

    #[test]
    fn eval_rejects_eps_list() {
        let mut args = vec!["zpgd", "eval", "--eps", "0.1,0.01"];
        args.extend(CASE1);
        assert_eq!(run_capture(&args).0, 2);
    }
}
