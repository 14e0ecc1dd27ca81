//! Exact viscous solutions through the Hopf–Cole closed forms.
//!
//! With `σ = √(2tε)` both heat solutions are sums over the five intervals cut by the
//! nodes `a < c < b < d`. On interval `k = (l_k, r_k)` the integrated data are constant,
//! `U0 = U_k` and `R0 = R_k`, and
//!
//! ```text
//! √π V = Σ_k e^{-U_k/ε} M_k,     √π S = Σ_k e^{-U_k/ε} R_k M_k,
//! M_k  = ∫_{(l_k-x)/σ}^{(r_k-x)/σ} e^{-s²} ds.
//! ```
//!
//! Each `M_k` is either an `erf` sum (when `x` lies inside the interval) or a difference of
//! two complementary tails with positive arguments, so the log-domain evaluation never
//! subtracts nearly equal large numbers. Every product with `e^{-U_k/ε}` is kept as a
//! [`SignedLog`].

use crate::logsum::{ln_1m_exp, SignedLog, SignedLogSum};
use crate::special_fn::{erf, log_erfc_paper, LN_HALF_SQRT_PI, SQRT_PI};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ViscousError {
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation at jump x = {0}")]
    EvaluationAtJump(f64),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Two-point delta initial data: velocity masses `u_a`, `u_b` at `a`, `b` and density
/// masses `rho_c`, `rho_d` at `c`, `d`, with `a < c < b < d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaRiemannData {
    a: f64,
    c: f64,
    b: f64,
    d: f64,
    u_a: f64,
    u_b: f64,
    rho_c: f64,
    rho_d: f64,
}

impl DeltaRiemannData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        c: f64,
        b: f64,
        d: f64,
        u_a: f64,
        u_b: f64,
        rho_c: f64,
        rho_d: f64,
    ) -> Result<Self, ViscousError> {
        let fields = [
            ("a", a),
            ("c", c),
            ("b", b),
            ("d", d),
            ("u_a", u_a),
            ("u_b", u_b),
            ("rho_c", rho_c),
            ("rho_d", rho_d),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(ViscousError::InvalidData(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        if !(a < c && c < b && b < d) {
            return Err(ViscousError::InvalidData(format!(
                "need a < c < b < d, got a={a}, c={c}, b={b}, d={d}"
            )));
        }
        Ok(Self {
            a,
            c,
            b,
            d,
            u_a,
            u_b,
            rho_c,
            rho_d,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn u_a(&self) -> f64 {
        self.u_a
    }
    pub fn u_b(&self) -> f64 {
        self.u_b
    }
    pub fn rho_c(&self) -> f64 {
        self.rho_c
    }
    pub fn rho_d(&self) -> f64 {
        self.rho_d
    }

    /// Copy with a different `c`.
    pub fn with_c(&self, c: f64) -> Result<Self, ViscousError> {
        Self::new(
            self.a, c, self.b, self.d, self.u_a, self.u_b, self.rho_c, self.rho_d,
        )
    }

    /// Copy with a different `d`.
    pub fn with_d(&self, d: f64) -> Result<Self, ViscousError> {
        Self::new(
            self.a, self.c, self.b, d, self.u_a, self.u_b, self.rho_c, self.rho_d,
        )
    }

    /// Copy with different velocity weights.
    pub fn with_velocities(&self, u_a: f64, u_b: f64) -> Result<Self, ViscousError> {
        Self::new(
            self.a, self.c, self.b, self.d, u_a, u_b, self.rho_c, self.rho_d,
        )
    }

    pub fn nodes(&self) -> [f64; 4] {
        [self.a, self.c, self.b, self.d]
    }

    /// Integrated velocity `U0` on each of the five intervals.
    fn u_levels(&self) -> [f64; 5] {
        let s = self.u_a + self.u_b;
        [0.0, self.u_a, self.u_a, s, s]
    }

    /// Integrated density `R0` on each of the five intervals.
    fn r_levels(&self) -> [f64; 5] {
        let s = self.rho_c + self.rho_d;
        [0.0, 0.0, self.rho_c, self.rho_c, s]
    }

    fn interval(&self, k: usize) -> (f64, f64) {
        let n = self.nodes();
        match k {
            0 => (f64::NEG_INFINITY, n[0]),
            4 => (n[3], f64::INFINITY),
            _ => (n[k - 1], n[k]),
        }
    }

    /// Lower and upper plateau values of `R`.
    pub fn r_band(&self) -> (f64, f64) {
        let l = self.r_levels();
        let lo = l.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = l.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }
}

/// The five open intervals cut by the nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `x < a`
    R1,
    /// `a < x < c`
    R2,
    /// `c < x < b`
    R3,
    /// `b < x < d`
    R4,
    /// `x > d`
    R5,
}

impl Region {
    pub fn index(self) -> usize {
        match self {
            Region::R1 => 1,
            Region::R2 => 2,
            Region::R3 => 3,
            Region::R4 => 4,
            Region::R5 => 5,
        }
    }
}

pub fn region_of(data: &DeltaRiemannData, x: f64) -> Result<Region, ViscousError> {
    if data.nodes().contains(&x) {
        return Err(ViscousError::EvaluationAtJump(x));
    }
    Ok(if x < data.a {
        Region::R1
    } else if x < data.c {
        Region::R2
    } else if x < data.b {
        Region::R3
    } else if x < data.d {
        Region::R4
    } else {
        Region::R5
    })
}

/// Integrated initial data `(U0, R0)` away from the jumps.
pub fn initial_profiles(data: &DeltaRiemannData, x: f64) -> Result<(f64, f64), ViscousError> {
    let k = region_of(data, x)?.index() - 1;
    Ok((data.u_levels()[k], data.r_levels()[k]))
}

/// Distances to the nodes in units of `σ = √(2tε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledVariables {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ScaledVariables {
    pub fn new(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<Self, ViscousError> {
        let sigma = sigma(eps, t)?;
        Ok(Self {
            a: (x - data.a).abs() / sigma,
            b: (x - data.b).abs() / sigma,
            c: (x - data.c).abs() / sigma,
            d: (x - data.d).abs() / sigma,
        })
    }
}

fn sigma(eps: f64, t: f64) -> Result<f64, ViscousError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ViscousError::Domain(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(ViscousError::Domain(format!("t must be positive, got {t}")));
    }
    Ok((2.0 * t * eps).sqrt())
}

/// `ln ∫_lo^hi e^{-s²} ds` for `lo < hi`.
fn ln_gauss_mass(lo: f64, hi: f64) -> f64 {
    if lo >= 0.0 {
        let l_lo = log_erfc_paper(lo);
        l_lo + ln_1m_exp(log_erfc_paper(hi) - l_lo)
    } else if hi <= 0.0 {
        ln_gauss_mass(-hi, -lo)
    } else {
        LN_HALF_SQRT_PI + (erf(-lo) + erf(hi)).ln()
    }
}

/// `ln (1 - e^{-w/ε})` as a signed log.
fn one_minus_exp(w: f64, eps: f64) -> SignedLog {
    if w == 0.0 {
        SignedLog::ZERO
    } else if w > 0.0 {
        SignedLog::new(false, ln_1m_exp(-w / eps))
    } else {
        let z = -w / eps;
        SignedLog::new(true, z + ln_1m_exp(-z))
    }
}

/// `1 - e^{y}` as a signed log.
fn one_minus_exp_ln(y: f64) -> SignedLog {
    one_minus_exp(-y, 1.0)
}

struct Pieces {
    sigma: f64,
    ln_v: [f64; 5],
    ln_m: [f64; 5],
    ln_gl: [f64; 5],
    ln_gr: [f64; 5],
    r0: [f64; 5],
}

impl Pieces {
    fn new(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<Self, ViscousError> {
        if !x.is_finite() {
            return Err(ViscousError::Domain(format!("x must be finite, got {x}")));
        }
        let sigma = sigma(eps, t)?;
        let mut p = Pieces {
            sigma,
            ln_v: [0.0; 5],
            ln_m: [0.0; 5],
            ln_gl: [0.0; 5],
            ln_gr: [0.0; 5],
            r0: data.r_levels(),
        };
        let u = data.u_levels();
        let gauss = |q: f64| {
            if q.is_finite() {
                let z = (q - x) / sigma;
                -z * z
            } else {
                f64::NEG_INFINITY
            }
        };
        for (k, uk) in u.iter().enumerate() {
            let (l, r) = data.interval(k);
            p.ln_v[k] = -uk / eps;
            p.ln_m[k] = ln_gauss_mass((l - x) / sigma, (r - x) / sigma);
            p.ln_gl[k] = gauss(l);
            p.ln_gr[k] = gauss(r);
        }
        Ok(p)
    }

    /// `V` including the `1/√π` factor.
    fn v_sum(&self) -> SignedLogSum {
        (0..5)
            .map(|k| SignedLog::positive(self.ln_v[k] + self.ln_m[k] - SQRT_PI.ln()))
            .collect()
    }

    fn s_sum(&self) -> SignedLogSum {
        (0..5)
            .map(|k| {
                SignedLog::from_f64(self.r0[k]).scale_ln(self.ln_v[k] + self.ln_m[k] - SQRT_PI.ln())
            })
            .collect()
    }

    /// `V_x` including the `1/√π` factor, from the differentiated kernel.
    /// The two kernel terms meeting at each interior node are combined into
    /// `(v_{k+1} - v_k) G_node` first, so nodes with equal levels contribute exactly zero.
    fn v_x_sum(&self) -> SignedLogSum {
        let scale = -SQRT_PI.ln() - self.sigma.ln();
        let mut s = SignedLogSum::new();
        for k in 0..4 {
            let jump = SignedLog::new(true, self.ln_v[k])
                * one_minus_exp_ln(self.ln_v[k + 1] - self.ln_v[k]);
            s.push(jump.scale_ln(self.ln_gr[k] + scale));
        }
        s
    }

    fn positive_v(&self) -> Result<SignedLog, ViscousError> {
        let v = self.v_sum().collapse();
        if v.negative || v.is_zero() || !v.ln_abs.is_finite() {
            return Err(ViscousError::Invariant(format!(
                "heat solution V not certified positive (ln V = {}, negative = {})",
                v.ln_abs, v.negative
            )));
        }
        Ok(v)
    }
}

/// `V`, `S` and the analytic `V_x` as log-domain sums.
#[derive(Debug, Clone)]
pub struct HeatPair {
    pub v: SignedLogSum,
    pub s: SignedLogSum,
    pub v_x: SignedLogSum,
}

pub fn viscous_v_s(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
) -> Result<HeatPair, ViscousError> {
    let p = Pieces::new(data, eps, x, t)?;
    p.positive_v()?;
    Ok(HeatPair {
        v: p.v_sum(),
        s: p.s_sum(),
        v_x: p.v_x_sum(),
    })
}

/// `u^ε(x, t)` from the explicit numerator
/// `(ε/σ) [G_a (1 - e^{-u_a/ε}) + G_b e^{-u_a/ε} (1 - e^{-u_b/ε})]` over `√π V`,
/// with `G_p = e^{-((x-p)/σ)²}`.
pub fn viscous_u(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<f64, ViscousError> {
    let p = Pieces::new(data, eps, x, t)?;
    let v = p.positive_v()?;
    let ga = p.ln_gl[1];
    let gb = p.ln_gl[3];
    let mut num = SignedLogSum::new();
    num.push(one_minus_exp(data.u_a, eps).scale_ln(ga));
    num.push(one_minus_exp(data.u_b, eps).scale_ln(gb - data.u_a / eps));
    let num = num
        .collapse()
        .scale_ln(eps.ln() - p.sigma.ln() - SQRT_PI.ln());
    finite(num.checked_div(v).map(|q| q.to_f64()), "u")
}

/// `u^ε = -ε V_x / V` with `V_x` taken from the differentiated kernel term by term.
pub fn hopf_cole_u(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<f64, ViscousError> {
    let p = Pieces::new(data, eps, x, t)?;
    let v = p.positive_v()?;
    let vx = p.v_x_sum().collapse();
    finite(vx.checked_div(v).map(|q| -eps * q.to_f64()), "u")
}

/// `R^ε(x, t) = S / V`.
pub fn viscous_r(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<f64, ViscousError> {
    let p = Pieces::new(data, eps, x, t)?;
    let v = p.positive_v()?;
    let r = finite(p.s_sum().collapse().checked_div(v).map(|q| q.to_f64()), "R")?;
    let (lo, hi) = data.r_band();
    let tol = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    if r < lo - tol || r > hi + tol {
        return Err(ViscousError::Invariant(format!(
            "R = {r} outside plateau band [{lo}, {hi}]"
        )));
    }
    Ok(r)
}

/// `∂x R^ε = (1/σ) Σ_k e^{-U_k/ε} (R_k - R) (G_{l_k} - G_{r_k}) / (√π V)`.
pub fn viscous_r_x(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> Result<f64, ViscousError> {
    let p = Pieces::new(data, eps, x, t)?;
    let v = p.positive_v()?;
    let r = finite(p.s_sum().collapse().checked_div(v).map(|q| q.to_f64()), "R")?;
    let scale = -SQRT_PI.ln() - p.sigma.ln();
    let mut num = SignedLogSum::new();
    for k in 0..5 {
        let w = SignedLog::from_f64(p.r0[k] - r).scale_ln(p.ln_v[k] + scale);
        num.push(w.scale_ln(p.ln_gl[k]));
        num.push(-w.scale_ln(p.ln_gr[k]));
    }
    finite(num.collapse().checked_div(v).map(|q| q.to_f64()), "R_x")
}

fn finite(v: Option<f64>, what: &str) -> Result<f64, ViscousError> {
    match v {
        Some(v) if v.is_finite() => Ok(v),
        other => Err(ViscousError::Invariant(format!(
            "{what} evaluated to {other:?}"
        ))),
    }
}
