//! Evaluation of the limit fields.

use super::{CurveName, LimitError, LimitSolution};
use serde::Serialize;

/// Value of the limit velocity at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LimitValue {
    Value(f64),
    /// `x` sits on a curve across which `u` jumps.
    OnDiscontinuity {
        left: f64,
        right: f64,
    },
}

impl LimitValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            LimitValue::Value(v) => Some(*v),
            LimitValue::OnDiscontinuity { .. } => None,
        }
    }
}

/// Rankine–Hugoniot residual of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RhResidual {
    Smooth(f64),
    /// At a breakpoint: residuals computed with the left and right curve speeds.
    OneSided {
        left: f64,
        right: f64,
    },
}

impl RhResidual {
    pub fn magnitude(&self) -> f64 {
        match *self {
            RhResidual::Smooth(r) => r.abs(),
            RhResidual::OneSided { left, right } => left.abs().max(right.abs()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaPositions {
    pub entries: Vec<(f64, f64)>,
    pub merged: bool,
}

const SIDE_TOL: f64 = 1e-12;
const JUMP_TOL: f64 = 1e-10;
const MERGE_TOL: f64 = 1e-12;

fn check_t(t: f64) -> Result<(), LimitError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(LimitError::Domain(format!("t must be positive, got {t}")))
    }
}

impl LimitSolution {
    fn fan_bounds(&self, t: f64) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.fans.iter().map(move |f| {
            (
                f.center,
                self.curve(f.left).position(t),
                self.curve(f.right).position(t),
            )
        })
    }

    /// One-sided limits `(u(x-), u(x+))`.
    pub fn one_sided_u(&self, x: f64, t: f64) -> Result<(f64, f64), LimitError> {
        check_t(t)?;
        let tol = SIDE_TOL * x.abs().max(1.0);
        let (mut left, mut right) = (0.0, 0.0);
        for (p, l, r) in self.fan_bounds(t) {
            if r - l <= tol {
                continue;
            }
            let v = (x - p) / t;
            if l + tol < x && x <= r + tol {
                left = v;
            }
            if l - tol <= x && x < r - tol {
                right = v;
            }
        }
        Ok((left, right))
    }

    pub fn eval_u(&self, x: f64, t: f64) -> Result<LimitValue, LimitError> {
        let (left, right) = self.one_sided_u(x, t)?;
        if (left - right).abs() <= JUMP_TOL * left.abs().max(right.abs()).max(1.0) {
            Ok(LimitValue::Value(left))
        } else {
            Ok(LimitValue::OnDiscontinuity { left, right })
        }
    }

    pub fn curve_position(&self, name: CurveName, t: f64) -> Result<f64, LimitError> {
        check_t(t)?;
        Ok(self.curve(name).position(t))
    }

    pub fn curve_speed(&self, name: CurveName, t: f64) -> Result<(f64, f64), LimitError> {
        check_t(t)?;
        Ok(self.curve(name).speed(t))
    }

    /// `γ'(t) - (u_l + u_r)/2` along a named curve.
    pub fn rankine_hugoniot_residual(
        &self,
        name: CurveName,
        t: f64,
    ) -> Result<RhResidual, LimitError> {
        check_t(t)?;
        let c = self.curve(name);
        let (ul, ur) = self.one_sided_u(c.position(t), t)?;
        let avg = 0.5 * (ul + ur);
        let (sl, sr) = c.speed(t);
        if c.is_breakpoint(t) {
            Ok(RhResidual::OneSided {
                left: sl - avg,
                right: sr - avg,
            })
        } else {
            Ok(RhResidual::Smooth(sl - avg))
        }
    }

    /// `∫ u(x, t) dx`, summed fan by fan.
    pub fn momentum(&self, t: f64) -> Result<f64, LimitError> {
        check_t(t)?;
        Ok(self
            .fan_bounds(t)
            .filter(|(_, l, r)| r > l)
            .map(|(p, l, r)| (r - l) * (r + l - 2.0 * p) / (2.0 * t))
            .sum())
    }

    /// Carrier positions and masses; coincident carriers are merged.
    pub fn delta_positions(&self, t: f64) -> Result<DeltaPositions, LimitError> {
        check_t(t)?;
        let pts: Vec<(f64, f64)> = self
            .carriers
            .iter()
            .map(|c| (self.curve(c.curve).position(t), c.mass))
            .collect();
        let (x0, m0) = pts[0];
        let (x1, m1) = pts[1];
        if (x0 - x1).abs() <= MERGE_TOL * x0.abs().max(x1.abs()).max(1.0) {
            Ok(DeltaPositions {
                entries: vec![(x0, m0 + m1)],
                merged: true,
            })
        } else {
            Ok(DeltaPositions {
                entries: pts,
                merged: false,
            })
        }
    }

    /// Limit of `R^ε`: the total carrier mass strictly left of `x`.
    pub fn r_plateau(&self, x: f64, t: f64) -> Result<f64, LimitError> {
        check_t(t)?;
        Ok(self
            .carriers
            .iter()
            .filter(|c| self.curve(c.curve).position(t) < x)
            .fold(0.0, |s, c| s + c.mass))
    }

    /// Positions of all curves at `t`, in layout order.
    pub fn positions(&self, t: f64) -> Vec<(CurveName, f64)> {
        self.curves
            .iter()
            .map(|c| (c.name, c.position(t)))
            .collect()
    }
}
