//! Vanishing-viscosity limit: sign-case classification, wave curves, and the limit
//! velocity and density fields.
//!
//! The limit velocity is zero outside at most two rarefaction fans `u = (x - p)/t`
//! anchored at `p = a` and `p = b`. Each fan is bounded by two named curves. The limit
//! density is two Dirac masses carried by `gamma_c` and `gamma_d`.

mod cases;
pub mod curve;
mod eval;

pub use cases::Fan;
pub use curve::{Breakpoint, Curve, CurveName, CurveSegment, SegmentKind};
pub use eval::{DeltaPositions, LimitValue, RhResidual};

use crate::viscous::DeltaRiemannData;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitError {
    #[error("uncovered case: {0}")]
    Uncovered(String),
    #[error("no interaction point in {0}")]
    NoInteraction(MajorCase),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("curve construction failed: {0}")]
    Construction(String),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MajorCase {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
}

impl fmt::Display for MajorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Position of `d` (Case 2) or `c` (Cases 3 to 5) relative to the interaction point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subcase {
    Below,
    At,
    Above,
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseTag {
    pub major: MajorCase,
    pub subcase: Option<Subcase>,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.subcase {
            Some(s) => write!(f, "{}/{}", self.major, s),
            None => write!(f, "{}", self.major),
        }
    }
}

/// Classify with an exact comparison of `u_a + u_b` against zero.
pub fn classify(data: &DeltaRiemannData) -> Result<CaseTag, LimitError> {
    classify_with_tolerance(data, 0.0)
}

/// Classify, treating `|u_a + u_b| ≤ sum_tolerance` as exact cancellation.
pub fn classify_with_tolerance(
    data: &DeltaRiemannData,
    sum_tolerance: f64,
) -> Result<CaseTag, LimitError> {
    let (ua, ub) = (data.u_a(), data.u_b());
    if ua == 0.0 || ub == 0.0 {
        return Err(LimitError::Uncovered(format!(
            "u_a = {ua}, u_b = {ub}; both velocity weights must be nonzero"
        )));
    }
    if !(sum_tolerance >= 0.0) {
        return Err(LimitError::Domain(format!(
            "sum tolerance must be >= 0, got {sum_tolerance}"
        )));
    }
    let major = match (ua > 0.0, ub > 0.0) {
        (false, true) => MajorCase::Case1,
        (true, true) => MajorCase::Case2,
        (false, false) => MajorCase::Case6,
        (true, false) => {
            let s = ua + ub;
            if s.abs() <= sum_tolerance {
                MajorCase::Case5
            } else if s > 0.0 {
                MajorCase::Case3
            } else {
                MajorCase::Case4
            }
        }
    };
    let mut tag = CaseTag {
        major,
        subcase: None,
    };
    if major != MajorCase::Case1 && major != MajorCase::Case6 {
        let (xs, _) = x_star(data, tag)?;
        let probe = if major == MajorCase::Case2 {
            data.d()
        } else {
            data.c()
        };
        let tol = 1e-12 * xs.abs().max(1.0);
        tag.subcase = Some(if (probe - xs).abs() <= tol {
            Subcase::At
        } else if probe < xs {
            Subcase::Below
        } else {
            Subcase::Above
        });
    }
    Ok(tag)
}

/// Interaction point `(x*, t*)` for Cases 2 to 5.
pub fn x_star(data: &DeltaRiemannData, tag: CaseTag) -> Result<(f64, f64), LimitError> {
    let (a, b) = (data.a(), data.b());
    let (ua, ub) = (data.u_a(), data.u_b());
    let l = b - a;
    match tag.major {
        MajorCase::Case2 => {
            let gap = (ua + ub).sqrt() - ub.sqrt();
            Ok((b + l * ub.sqrt() / gap, l * l / (2.0 * gap * gap)))
        }
        MajorCase::Case3 | MajorCase::Case4 | MajorCase::Case5 => {
            let sum = ua.sqrt() + (-ub).sqrt();
            Ok((a + l * ua.sqrt() / sum, l * l / (2.0 * sum * sum)))
        }
        m => Err(LimitError::NoInteraction(m)),
    }
}

/// A density Dirac mass travelling along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Carrier {
    pub curve: CurveName,
    pub mass: f64,
}

/// The explicit limit solution for one datum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSolution {
    pub tag: CaseTag,
    pub data: DeltaRiemannData,
    pub curves: Vec<Curve>,
    pub nodes: Vec<Curve>,
    pub fans: Vec<Fan>,
    pub carriers: Vec<Carrier>,
    pub breakpoints: Vec<Breakpoint>,
    pub interaction: Option<(f64, f64)>,
    /// Left-to-right order of curves that holds for every `t > 0`.
    pub ordering: Vec<CurveName>,
}

pub fn build_solution(data: &DeltaRiemannData) -> Result<LimitSolution, LimitError> {
    build_solution_with_tolerance(data, 0.0)
}

pub fn build_solution_with_tolerance(
    data: &DeltaRiemannData,
    sum_tolerance: f64,
) -> Result<LimitSolution, LimitError> {
    let tag = classify_with_tolerance(data, sum_tolerance)?;
    let layout = cases::layout(data, tag);
    let mut curves = Vec::with_capacity(layout.curves.len());
    let mut breakpoints = Vec::new();
    for t in &layout.curves {
        let (curve, bps) = Curve::from_kinds(t.name, &t.kinds, &t.printed)?;
        curves.push(curve);
        breakpoints.extend(bps);
    }
    Ok(LimitSolution {
        tag,
        data: *data,
        curves,
        nodes: vec![
            Curve::constant(CurveName::NodeA, data.a()),
            Curve::constant(CurveName::NodeB, data.b()),
        ],
        fans: layout.fans,
        carriers: vec![
            Carrier {
                curve: CurveName::GammaC,
                mass: data.rho_c(),
            },
            Carrier {
                curve: CurveName::GammaD,
                mass: data.rho_d(),
            },
        ],
        breakpoints,
        interaction: x_star(data, tag).ok(),
        ordering: layout.ordering,
    })
}

impl LimitSolution {
    pub fn curve(&self, name: CurveName) -> &Curve {
        self.curves
            .iter()
            .chain(self.nodes.iter())
            .find(|c| c.name == name)
            .expect("fan and carrier names refer to curves of the same solution")
    }

    pub fn discrepancies(&self) -> Vec<Breakpoint> {
        self.breakpoints
            .iter()
            .copied()
            .filter(|b| b.discrepancy)
            .collect()
    }

    /// All finite breakpoint times, sorted and deduplicated.
    pub fn breakpoint_times(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self
            .curves
            .iter()
            .flat_map(|c| c.breakpoint_times())
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }

    /// Shift the last segment of one curve. Used as a negative control for the checks.
    pub fn perturb_curve(&mut self, name: CurveName, dx: f64) -> Result<(), LimitError> {
        let c = self
            .curves
            .iter_mut()
            .find(|c| c.name == name)
            .ok_or_else(|| LimitError::UnknownCurve(name.to_string()))?;
        c.shift_last(dx);
        Ok(())
    }
}
