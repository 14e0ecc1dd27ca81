//! Piecewise curves in the `(x, t)` half-plane.
//!
//! Every segment kind is a quadratic polynomial in `s = √t`, so the junction between two
//! consecutive segments is a root of a quadratic. Breakpoints are recomputed from that
//! root instead of being copied from closed-form tables.

use super::LimitError;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum SegmentKind {
    /// `x0`
    Constant { x0: f64 },
    /// `x0 + √(2Kt)`
    SqrtRight { x0: f64, k: f64 },
    /// `x0 - √(2Kt)`
    SqrtLeft { x0: f64, k: f64 },
    /// `mid + slope·t`
    Line { mid: f64, slope: f64 },
}

impl SegmentKind {
    /// Coefficients `[p0, p1, p2]` of `p0 + p1 s + p2 s²` with `s = √t`.
    pub fn poly(&self) -> [f64; 3] {
        match *self {
            SegmentKind::Constant { x0 } => [x0, 0.0, 0.0],
            SegmentKind::SqrtRight { x0, k } => [x0, (2.0 * k).sqrt(), 0.0],
            SegmentKind::SqrtLeft { x0, k } => [x0, -(2.0 * k).sqrt(), 0.0],
            SegmentKind::Line { mid, slope } => [mid, 0.0, slope],
        }
    }

    pub fn position(&self, t: f64) -> f64 {
        match *self {
            SegmentKind::Constant { x0 } => x0,
            SegmentKind::SqrtRight { x0, k } => x0 + (2.0 * k * t).sqrt(),
            SegmentKind::SqrtLeft { x0, k } => x0 - (2.0 * k * t).sqrt(),
            SegmentKind::Line { mid, slope } => mid + slope * t,
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        match *self {
            SegmentKind::Constant { .. } => 0.0,
            SegmentKind::SqrtRight { k, .. } => (k / (2.0 * t)).sqrt(),
            SegmentKind::SqrtLeft { k, .. } => -(k / (2.0 * t)).sqrt(),
            SegmentKind::Line { slope, .. } => slope,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SegmentKind::Constant { .. } => "Constant",
            SegmentKind::SqrtRight { .. } => "SqrtRight",
            SegmentKind::SqrtLeft { .. } => "SqrtLeft",
            SegmentKind::Line { .. } => "Line",
        }
    }

    pub(crate) fn shift(&mut self, dx: f64) {
        match self {
            SegmentKind::Constant { x0 }
            | SegmentKind::SqrtRight { x0, .. }
            | SegmentKind::SqrtLeft { x0, .. } => *x0 += dx,
            SegmentKind::Line { mid, .. } => *mid += dx,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSegment {
    pub kind: SegmentKind,
    pub t_start: f64,
    /// `f64::INFINITY` for the last segment.
    pub t_end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveName {
    #[serde(rename = "gamma_a")]
    GammaA,
    #[serde(rename = "gamma_a1")]
    GammaA1,
    #[serde(rename = "gamma_a2")]
    GammaA2,
    #[serde(rename = "gamma_b")]
    GammaB,
    #[serde(rename = "gamma_b1")]
    GammaB1,
    #[serde(rename = "gamma_b2")]
    GammaB2,
    #[serde(rename = "gamma_c")]
    GammaC,
    #[serde(rename = "gamma_d")]
    GammaD,
    /// The fixed line `x = a`.
    #[serde(rename = "node_a")]
    NodeA,
    /// The fixed line `x = b`.
    #[serde(rename = "node_b")]
    NodeB,
}

impl CurveName {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveName::GammaA => "gamma_a",
            CurveName::GammaA1 => "gamma_a1",
            CurveName::GammaA2 => "gamma_a2",
            CurveName::GammaB => "gamma_b",
            CurveName::GammaB1 => "gamma_b1",
            CurveName::GammaB2 => "gamma_b2",
            CurveName::GammaC => "gamma_c",
            CurveName::GammaD => "gamma_d",
            CurveName::NodeA => "node_a",
            CurveName::NodeB => "node_b",
        }
    }

    pub fn parse(s: &str) -> Option<CurveName> {
        [
            CurveName::GammaA,
            CurveName::GammaA1,
            CurveName::GammaA2,
            CurveName::GammaB,
            CurveName::GammaB1,
            CurveName::GammaB2,
            CurveName::GammaC,
            CurveName::GammaD,
            CurveName::NodeA,
            CurveName::NodeB,
        ]
        .into_iter()
        .find(|n| n.as_str() == s)
    }
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A recomputed junction time together with the closed-form value it replaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakpoint {
    pub curve: CurveName,
    /// Index of the segment that ends here.
    pub segment: usize,
    pub t: f64,
    pub printed: f64,
    pub discrepancy: bool,
}

pub const DISCREPANCY_REL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub name: CurveName,
    pub segments: Vec<CurveSegment>,
}

impl Curve {
    pub fn constant(name: CurveName, x0: f64) -> Self {
        Curve {
            name,
            segments: vec![CurveSegment {
                kind: SegmentKind::Constant { x0 },
                t_start: 0.0,
                t_end: f64::INFINITY,
            }],
        }
    }

    /// Chain segment kinds, solving for each junction. `printed[i]` is the tabulated end
    /// time of segment `i`, used only for comparison.
    pub fn from_kinds(
        name: CurveName,
        kinds: &[SegmentKind],
        printed: &[f64],
    ) -> Result<(Curve, Vec<Breakpoint>), LimitError> {
        assert_eq!(kinds.len(), printed.len() + 1);
        let mut segments = Vec::with_capacity(kinds.len());
        let mut breakpoints = Vec::new();
        let mut s_start = 0.0f64;
        for (i, kind) in kinds.iter().enumerate() {
            let t_start = s_start * s_start;
            if i + 1 == kinds.len() {
                segments.push(CurveSegment {
                    kind: *kind,
                    t_start,
                    t_end: f64::INFINITY,
                });
                break;
            }
            let s = junction(kind, &kinds[i + 1], s_start).ok_or_else(|| {
                LimitError::Construction(format!(
                    "{name}: no junction between segment {i} ({}) and {} after t = {t_start}",
                    kind.label(),
                    kinds[i + 1].label()
                ))
            })?;
            let t = s * s;
            let p = printed[i];
            breakpoints.push(Breakpoint {
                curve: name,
                segment: i,
                t,
                printed: p,
                discrepancy: (t - p).abs() > DISCREPANCY_REL * t.abs().max(p.abs()),
            });
            segments.push(CurveSegment {
                kind: *kind,
                t_start,
                t_end: t,
            });
            s_start = s;
        }
        Ok((Curve { name, segments }, breakpoints))
    }

    fn segment_at(&self, t: f64) -> &CurveSegment {
        self.segments
            .iter()
            .find(|s| t <= s.t_end)
            .unwrap_or_else(|| self.segments.last().expect("curve has segments"))
    }

    /// Position for `t ≥ 0`.
    pub fn position(&self, t: f64) -> f64 {
        self.segment_at(t).kind.position(t)
    }

    /// One-sided speeds; they differ only at breakpoints.
    pub fn speed(&self, t: f64) -> (f64, f64) {
        let idx = self
            .segments
            .iter()
            .position(|s| t <= s.t_end)
            .unwrap_or(self.segments.len() - 1);
        let seg = &self.segments[idx];
        let left = seg.kind.speed(t);
        let right = if t == seg.t_end && idx + 1 < self.segments.len() {
            self.segments[idx + 1].kind.speed(t)
        } else {
            left
        };
        (left, right)
    }

    pub fn breakpoint_times(&self) -> Vec<f64> {
        self.segments
            .iter()
            .map(|s| s.t_end)
            .filter(|t| t.is_finite())
            .collect()
    }

    pub fn is_breakpoint(&self, t: f64) -> bool {
        self.breakpoint_times().contains(&t)
    }

    /// Largest relative mismatch between consecutive segments at their junctions.
    pub fn continuity_defect(&self) -> f64 {
        self.segments
            .windows(2)
            .map(|w| {
                let t = w[0].t_end;
                let l = w[0].kind.position(t);
                let r = w[1].kind.position(t);
                (l - r).abs() / l.abs().max(r.abs()).max(1.0)
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn shift_last(&mut self, dx: f64) {
        if let Some(s) = self.segments.last_mut() {
            s.kind.shift(dx);
        }
    }
}

/// Smallest `s > s_start` where the two segment polynomials meet.
fn junction(first: &SegmentKind, second: &SegmentKind, s_start: f64) -> Option<f64> {
    let p = first.poly();
    let q = second.poly();
    let c0 = p[0] - q[0];
    let c1 = p[1] - q[1];
    let c2 = p[2] - q[2];
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale == 0.0 {
        return None;
    }
    let mut roots = Vec::with_capacity(2);
    if c2.abs() <= 1e-14 * scale {
        if c1 != 0.0 {
            roots.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc.abs() <= 1e-12 * (c1 * c1 + (4.0 * c2 * c0).abs()) {
            roots.push(-c1 / (2.0 * c2));
        } else if disc > 0.0 {
            let sgn = if c1 >= 0.0 { 1.0 } else { -1.0 };
            let qq = -0.5 * (c1 + sgn * disc.sqrt());
            roots.push(qq / c2);
            if qq != 0.0 {
                roots.push(c0 / qq);
            }
        }
    }
    let floor = s_start + 1e-12 * s_start.max(1e-300);
    roots
        .into_iter()
        .filter(|r| r.is_finite() && *r > floor)
        .min_by(|x, y| x.total_cmp(y))
}
