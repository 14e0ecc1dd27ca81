//! Convergence, localization and invariant experiments comparing the viscous solution,
//! the quadrature oracle and the limit solution.

use crate::limit::{
    build_solution, classify, x_star, CurveName, LimitError, LimitSolution, LimitValue, MajorCase,
    RhResidual, Subcase,
};
use crate::oracle::{self, OracleError, QuadratureSpec};
use crate::viscous::{self, DeltaRiemannData, ViscousError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Viscous(#[from] ViscousError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("localization failed: {0}")]
    Localization(String),
}

/// Strictly decreasing viscosities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsSchedule {
    values: Vec<f64>,
}

impl Default for EpsSchedule {
    fn default() -> Self {
        Self {
            values: vec![0.3, 0.1, 0.03, 0.01, 0.003, 0.001],
        }
    }
}

impl EpsSchedule {
    pub fn new(values: Vec<f64>) -> Result<Self, HarnessError> {
        if values.is_empty() {
            return Err(HarnessError::Config("empty eps schedule".into()));
        }
        if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(HarnessError::Config("eps values must be positive".into()));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(HarnessError::Config(
                "eps schedule must be strictly decreasing".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub sup_error_u: f64,
    pub sup_error_r: f64,
    pub probe_count: usize,
    pub excluded_near_curve: usize,
    pub r_probe_count: usize,
    pub r_excluded_near_carrier: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub monotone_flag: bool,
}

const PROBES: usize = 401;
const MONOTONE_SLACK: f64 = 1e-12;

/// Sorted positions of every curve and node at `t`.
fn all_positions(sol: &LimitSolution, t: f64) -> Vec<f64> {
    let mut xs: Vec<f64> = sol
        .curves
        .iter()
        .chain(sol.nodes.iter())
        .map(|c| c.position(t))
        .collect();
    xs.sort_by(f64::total_cmp);
    xs
}

/// Curve positions where the limit velocity jumps.
fn u_jumps(sol: &LimitSolution, t: f64) -> Result<Vec<f64>, HarnessError> {
    let mut out = Vec::new();
    for x in all_positions(sol, t) {
        if matches!(sol.eval_u(x, t)?, LimitValue::OnDiscontinuity { .. }) {
            out.push(x);
        }
    }
    Ok(out)
}

fn carrier_positions(sol: &LimitSolution, t: f64) -> Vec<f64> {
    sol.carriers
        .iter()
        .filter(|c| c.mass != 0.0)
        .map(|c| sol.curve(c.curve).position(t))
        .collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

pub fn converge_scan(
    data: &DeltaRiemannData,
    times: &[f64],
    schedule: &EpsSchedule,
    margin: f64,
) -> Result<ConvergenceReport, HarnessError> {
    if !(margin > 0.0) {
        return Err(HarnessError::Config(format!(
            "margin must be positive, got {margin}"
        )));
    }
    if times.is_empty() || times.iter().any(|t| !(*t > 0.0)) {
        return Err(HarnessError::Config(
            "times must be non-empty and positive".into(),
        ));
    }
    let sol = build_solution(data)?;
    struct Probe {
        x: f64,
        t: f64,
        u: Option<f64>,
        r: Option<f64>,
    }
    let mut probes = Vec::new();
    let (mut excluded_u, mut excluded_r) = (0, 0);
    for &t in times {
        let xs = all_positions(&sol, t);
        let lo = xs[0] - 1.0;
        let hi = xs[xs.len() - 1] + 1.0;
        let jumps = u_jumps(&sol, t)?;
        let carriers = carrier_positions(&sol, t);
        for x in linspace(lo, hi, PROBES) {
            let u = if jumps.iter().any(|j| (x - j).abs() < margin) {
                excluded_u += 1;
                None
            } else {
                sol.eval_u(x, t)?.value()
            };
            let r = if carriers.iter().any(|c| (x - c).abs() < margin) {
                excluded_r += 1;
                None
            } else {
                Some(sol.r_plateau(x, t)?)
            };
            probes.push(Probe { x, t, u, r });
        }
    }
    let probe_count = probes.iter().filter(|p| p.u.is_some()).count();
    let r_probe_count = probes.iter().filter(|p| p.r.is_some()).count();
    if probe_count == 0 || r_probe_count == 0 {
        return Err(HarnessError::Config(
            "no probes left after excluding curve neighbourhoods".into(),
        ));
    }
    let mut rows = Vec::new();
    for &eps in schedule.values() {
        let (mut eu, mut er) = (0.0f64, 0.0f64);
        for p in &probes {
            if let Some(u) = p.u {
                eu = eu.max((viscous::viscous_u(data, eps, p.x, p.t)? - u).abs());
            }
            if let Some(r) = p.r {
                er = er.max((viscous::viscous_r(data, eps, p.x, p.t)? - r).abs());
            }
        }
        rows.push(ConvergenceRow {
            eps,
            sup_error_u: eu,
            sup_error_r: er,
            probe_count,
            excluded_near_curve: excluded_u,
            r_probe_count,
            r_excluded_near_carrier: excluded_r,
        });
    }
    let monotone_flag = rows.windows(2).all(|w| {
        w[1].sup_error_u <= w[0].sup_error_u + MONOTONE_SLACK
            && w[1].sup_error_r <= w[0].sup_error_r + MONOTONE_SLACK
    });
    Ok(ConvergenceReport {
        rows,
        monotone_flag,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaPeak {
    pub x_peak: f64,
    pub curve: CurveName,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaLocation {
    pub peaks: Vec<DeltaPeak>,
    /// Both carrier masses are zero, so `R^ε` has no transition to find.
    pub no_mass: bool,
}

const LOCATE_GRID: usize = 801;
const PEAK_FRACTION: f64 = 0.01;

/// Peaks of `|∂x R^ε|` near each carrier with nonzero mass.
pub fn locate_delta(
    data: &DeltaRiemannData,
    eps: f64,
    t: f64,
    search_window: f64,
) -> Result<DeltaLocation, HarnessError> {
    if !(search_window > 0.0) {
        return Err(HarnessError::Config(
            "search window must be positive".into(),
        ));
    }
    let sol = build_solution(data)?;
    let mut peaks = Vec::new();
    let active: Vec<_> = sol.carriers.iter().filter(|c| c.mass != 0.0).collect();
    if active.is_empty() {
        return Ok(DeltaLocation {
            peaks,
            no_mass: true,
        });
    }
    let slope = |x: f64| viscous::viscous_r_x(data, eps, x, t).map(f64::abs);
    for carrier in active {
        let g = sol.curve_position(carrier.curve, t)?;
        let xs: Vec<f64> = linspace(g - search_window, g + search_window, LOCATE_GRID).collect();
        let ys = xs
            .iter()
            .map(|&x| slope(x))
            .collect::<Result<Vec<_>, _>>()?;
        let top = ys.iter().copied().fold(0.0, f64::max);
        let best = (1..xs.len() - 1)
            .filter(|&i| {
                ys[i] >= ys[i - 1]
                    && ys[i] >= ys[i + 1]
                    && ys[i] >= PEAK_FRACTION * top
                    && ys[i] > 0.0
            })
            .min_by(|&i, &j| (xs[i] - g).abs().total_cmp(&(xs[j] - g).abs()));
        let i = best.ok_or_else(|| {
            HarnessError::Localization(format!(
                "no |R_x| peak within {search_window} of {}",
                carrier.curve
            ))
        })?;
        let x_peak = golden_max(&slope, xs[i - 1], xs[i + 1])?;
        peaks.push(DeltaPeak {
            x_peak,
            curve: carrier.curve,
            offset: (x_peak - g).abs(),
        });
    }
    Ok(DeltaLocation {
        peaks,
        no_mass: false,
    })
}

fn golden_max<F: Fn(f64) -> Result<f64, ViscousError>>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64, HarnessError> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..80 {
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlateauSample {
    /// Left and right ends of the plateau (infinite for the outer tails).
    pub left: f64,
    pub right: f64,
    pub x: f64,
    pub observed: f64,
    pub expected: f64,
    pub skipped: bool,
}

impl PlateauSample {
    pub fn deviation(&self) -> f64 {
        (self.observed - self.expected).abs()
    }
}

/// Sample `R^ε` midway between consecutive curves and on both outer tails.
pub fn plateau_check(
    data: &DeltaRiemannData,
    eps: f64,
    t: f64,
) -> Result<Vec<PlateauSample>, HarnessError> {
    let sol = build_solution(data)?;
    let sigma = (2.0 * t * eps).sqrt();
    let mut xs = all_positions(&sol, t);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    let mut out = Vec::new();
    let mut sample = |left: f64, right: f64, x: f64, skipped: bool| -> Result<(), HarnessError> {
        let expected = sol.r_plateau(x, t)?;
        let observed = if skipped {
            f64::NAN
        } else {
            viscous::viscous_r(data, eps, x, t)?
        };
        out.push(PlateauSample {
            left,
            right,
            x,
            observed,
            expected,
            skipped,
        });
        Ok(())
    };
    sample(f64::NEG_INFINITY, xs[0], xs[0] - 1.0, false)?;
    for w in xs.windows(2) {
        let skipped = w[1] - w[0] < 4.0 * sigma;
        sample(w[0], w[1], 0.5 * (w[0] + w[1]), skipped)?;
    }
    let last = xs[xs.len() - 1];
    sample(last, f64::INFINITY, last + 1.0, false)?;
    Ok(out)
}

/// One line of the invariant ledger.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, worst: f64, threshold: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed: worst <= threshold,
            worst,
            threshold,
            detail,
        }
    }
}

pub const CONTINUITY_TOL: f64 = 1e-12;
pub const ORDERING_TOL: f64 = 1e-12;
pub const RH_TOL: f64 = 1e-10;
pub const MOMENTUM_TOL: f64 = 1e-12;
pub const MASS_TOL: f64 = 1e-12;
pub const TRANSPORT_TOL: f64 = 1e-10;
pub const COHERENCE_TOL: f64 = 1e-4;
pub const COHERENCE_SHIFT: f64 = 1e-6;
pub const MOMENTUM_TIMES: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];

/// Log-spaced times on `[1e-3, 100]`, nudged off every breakpoint.
pub fn sample_times(sol: &LimitSolution, n: usize) -> Vec<f64> {
    let bps = sol.breakpoint_times();
    (0..n)
        .map(|i| {
            let t = 10f64.powf(-3.0 + 5.0 * i as f64 / (n - 1) as f64);
            if bps.iter().any(|b| (b - t).abs() <= 1e-9 * t) {
                t * (1.0 + 1e-6)
            } else {
                t
            }
        })
        .collect()
}

fn continuity_check(sol: &LimitSolution) -> CheckResult {
    let (worst, name) = sol
        .curves
        .iter()
        .map(|c| (c.continuity_defect(), c.name))
        .fold(
            (0.0, None),
            |acc, (d, n)| if d > acc.0 { (d, Some(n)) } else { acc },
        );
    let detail = name.map_or_else(
        || "all junctions exact".to_string(),
        |n| format!("worst on {n}"),
    );
    CheckResult::new("continuity", worst, CONTINUITY_TOL, detail)
}

fn ordering_check(sol: &LimitSolution, times: &[f64]) -> CheckResult {
    let mut worst = 0.0f64;
    let mut detail = String::from("order holds");
    for &t in times {
        let pos: Vec<(CurveName, f64)> = sol
            .ordering
            .iter()
            .map(|n| (*n, sol.curve(*n).position(t)))
            .collect();
        for w in pos.windows(2) {
            let v = (w[0].1 - w[1].1) / w[0].1.abs().max(w[1].1.abs()).max(1.0);
            if v > worst {
                worst = v;
                detail = format!("{} > {} at t = {t}", w[0].0, w[1].0);
            }
        }
    }
    CheckResult::new("ordering", worst, ORDERING_TOL, detail)
}

fn rh_worst(
    sol: &LimitSolution,
    names: &[CurveName],
    times: &[f64],
) -> Result<(f64, String), HarnessError> {
    let mut worst = 0.0f64;
    let mut detail = String::from("all residuals vanish");
    for &t in times {
        for &n in names {
            let r = match sol.rankine_hugoniot_residual(n, t)? {
                RhResidual::Smooth(r) => r.abs(),
                RhResidual::OneSided { .. } => continue,
            };
            let speed = sol.curve(n).speed(t).0;
            let rel = r / speed.abs().max(1.0);
            if rel > worst {
                worst = rel;
                detail = format!("{n} at t = {t}");
            }
        }
    }
    Ok((worst, detail))
}

fn momentum_check(sol: &LimitSolution) -> Result<CheckResult, HarnessError> {
    let target = sol.data.u_a() + sol.data.u_b();
    let scale = sol.data.u_a().abs().max(sol.data.u_b().abs()).max(1.0);
    let mut worst = 0.0f64;
    let mut detail = format!("target u_a + u_b = {target}");
    for t in MOMENTUM_TIMES {
        let e = (sol.momentum(t)? - target).abs() / scale;
        if e > worst {
            worst = e;
            detail = format!("target {target}, worst at t = {t}");
        }
    }
    Ok(CheckResult::new("momentum", worst, MOMENTUM_TOL, detail))
}

fn mass_check(sol: &LimitSolution, times: &[f64]) -> Result<CheckResult, HarnessError> {
    let target = sol.data.rho_c() + sol.data.rho_d();
    let scale = sol.data.rho_c().abs().max(sol.data.rho_d().abs()).max(1.0);
    let mut worst = 0.0f64;
    let mut merged = 0;
    for &t in times {
        let d = sol.delta_positions(t)?;
        merged += usize::from(d.merged);
        let total: f64 = d.entries.iter().map(|e| e.1).sum();
        worst = worst.max((total - target).abs() / scale);
    }
    Ok(CheckResult::new(
        "mass",
        worst,
        MASS_TOL,
        format!(
            "carriers merged at {merged} of {} sample times",
            times.len()
        ),
    ))
}

/// Largest gap between carrier trajectories of `base` and `other` over `t ∈ [0, 10]`.
fn trajectory_gap(base: &LimitSolution, other: &LimitSolution) -> f64 {
    let mut ts: Vec<f64> = linspace(0.0, 10.0, 2001).collect();
    ts.extend(base.breakpoint_times().into_iter().filter(|t| *t <= 10.0));
    ts.extend(other.breakpoint_times().into_iter().filter(|t| *t <= 10.0));
    let mut worst = 0.0f64;
    for t in ts {
        for n in [CurveName::GammaC, CurveName::GammaD] {
            worst = worst.max((base.curve(n).position(t) - other.curve(n).position(t)).abs());
        }
    }
    worst
}

/// Carrier trajectories for the moved node at `x*` and at `x* ± shift`.
pub fn subcase_coherence(
    data: &DeltaRiemannData,
    shift: f64,
) -> Result<Option<(f64, String)>, HarnessError> {
    let tag = classify(data)?;
    if matches!(tag.major, MajorCase::Case1 | MajorCase::Case6) {
        return Ok(None);
    }
    let (xs, _) = x_star(data, tag)?;
    let moved = |x: f64| {
        if tag.major == MajorCase::Case2 {
            data.with_d(x)
        } else {
            data.with_c(x)
        }
    };
    let at = build_solution(&moved(xs)?)?;
    let below = build_solution(&moved(xs - shift)?)?;
    let above = build_solution(&moved(xs + shift)?)?;
    let subs = [below.tag.subcase, at.tag.subcase, above.tag.subcase];
    if subs
        != [
            Some(Subcase::Below),
            Some(Subcase::At),
            Some(Subcase::Above),
        ]
    {
        return Err(HarnessError::Config(format!(
            "unexpected subcases {subs:?} around x* = {xs}"
        )));
    }
    let worst = trajectory_gap(&at, &below).max(trajectory_gap(&at, &above));
    let node = if tag.major == MajorCase::Case2 {
        "d"
    } else {
        "c"
    };
    Ok(Some((
        worst,
        format!("{node} = x* ± {shift:e} with x* = {xs}"),
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantLedger {
    pub checks: Vec<CheckResult>,
}

impl InvariantLedger {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn invariant_suite(data: &DeltaRiemannData) -> Result<InvariantLedger, HarnessError> {
    invariant_suite_for(&build_solution(data)?)
}

/// Run every structural check of the limit solution.
pub fn invariant_suite_for(sol: &LimitSolution) -> Result<InvariantLedger, HarnessError> {
    let times = sample_times(sol, 61);
    let mut checks = vec![continuity_check(sol), ordering_check(sol, &times)];

    let bounding: Vec<CurveName> = sol.curves.iter().map(|c| c.name).collect();
    let (worst, detail) = rh_worst(sol, &bounding, &times)?;
    checks.push(CheckResult::new("rankine_hugoniot", worst, RH_TOL, detail));

    checks.push(momentum_check(sol)?);
    checks.push(mass_check(sol, &times)?);

    let carriers: Vec<CurveName> = sol.carriers.iter().map(|c| c.curve).collect();
    let (worst, detail) = rh_worst(sol, &carriers, &times)?;
    checks.push(CheckResult::new("transport", worst, TRANSPORT_TOL, detail));

    checks.push(match subcase_coherence(&sol.data, COHERENCE_SHIFT)? {
        Some((worst, detail)) => {
            CheckResult::new("subcase_coherence", worst, COHERENCE_TOL, detail)
        }
        None => CheckResult::new(
            "subcase_coherence",
            0.0,
            COHERENCE_TOL,
            "no subcases in this case".into(),
        ),
    });
    Ok(InvariantLedger { checks })
}

/// Largest deviation of the viscous solution from the quadrature oracle on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleAgreement {
    pub eps: f64,
    pub worst_u: f64,
    pub worst_r: f64,
    pub points: usize,
    pub regions_hit: usize,
}

pub fn oracle_grid(data: &DeltaRiemannData, nx: usize, nt: usize) -> (Vec<f64>, Vec<f64>) {
    let lo = data.a() - 1.0;
    let hi = data.d() + 1.0;
    // offset so no grid point lands on a node
    let xs = linspace(lo, hi, nx).map(|x| x + 1e-3 * (hi - lo)).collect();
    let ts = linspace(0.1, 2.0, nt).collect();
    (xs, ts)
}

pub fn oracle_agreement(
    data: &DeltaRiemannData,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<OracleAgreement, HarnessError> {
    let (xs, ts) = oracle_grid(data, 20, 10);
    let (mut wu, mut wr) = (0.0f64, 0.0f64);
    let mut regions = std::collections::BTreeSet::new();
    for &x in &xs {
        if let Ok(r) = viscous::region_of(data, x) {
            regions.insert(r.index());
        }
        for &t in &ts {
            let ou = oracle::oracle_u(data, eps, x, t, spec)?;
            let or = oracle::oracle_r(data, eps, x, t, spec)?;
            let vu = viscous::viscous_u(data, eps, x, t)?;
            let vr = viscous::viscous_r(data, eps, x, t)?;
            wu = wu.max((vu - ou).abs() / (1.0 + ou.abs()));
            wr = wr.max((vr - or).abs() / (1.0 + or.abs()));
        }
    }
    Ok(OracleAgreement {
        eps,
        worst_u: wu,
        worst_r: wr,
        points: xs.len() * ts.len(),
        regions_hit: regions.len(),
    })
}

/// Largest relative gap between the two velocity routes on the oracle grid.
pub fn hopf_cole_gap(data: &DeltaRiemannData, eps: f64) -> Result<f64, HarnessError> {
    let (xs, ts) = oracle_grid(data, 20, 10);
    let mut worst = 0.0f64;
    for &x in &xs {
        for &t in &ts {
            let u1 = viscous::viscous_u(data, eps, x, t)?;
            let u2 = viscous::hopf_cole_u(data, eps, x, t)?;
            worst = worst.max((u1 - u2).abs() / u1.abs().max(u2.abs()).max(1e-300));
        }
    }
    Ok(worst)
}

/// One datum for every case and subcase.
pub fn representative_configurations() -> Vec<(&'static str, DeltaRiemannData)> {
    let mk = |c: f64, d: f64, ua: f64, ub: f64| {
        DeltaRiemannData::new(0.0, c, 1.2, d, ua, ub, 1.0, 2.0)
            .expect("representative data are ordered")
    };
    vec![
        (
            "case1",
            DeltaRiemannData::new(0.0, 0.5, 1.0, 2.0, -0.5, 2.0, 1.0, 2.0).expect("ordered"),
        ),
        ("case2_below", mk(0.6, 1.8, 3.0, 1.0)),
        ("case2_at", mk(0.6, 2.4, 3.0, 1.0)),
        ("case2_above", mk(0.6, 3.2, 3.0, 1.0)),
        ("case3_below", mk(0.4, 2.0, 0.5625, -0.0625)),
        ("case3_at", mk(0.9, 2.0, 0.5625, -0.0625)),
        ("case3_above", mk(1.05, 2.0, 0.5625, -0.0625)),
        ("case4_below", mk(0.15, 2.0, 0.0625, -0.5625)),
        ("case4_at", mk(0.3, 2.0, 0.0625, -0.5625)),
        ("case4_above", mk(0.6, 2.0, 0.0625, -0.5625)),
        ("case5_below", mk(0.3, 2.0, 0.5, -0.5)),
        ("case5_at", mk(0.6, 2.0, 0.5, -0.5)),
        ("case5_above", mk(0.9, 2.0, 0.5, -0.5)),
        ("case6", mk(0.6, 2.0, -1.0, -1.0)),
    ]
}
