//! Heat-kernel quadrature of the Hopf–Cole data, independent of the erfc closed forms.
//!
//! `V(x,t) = (1/√π) Σ w_k ∫ e^{-s²} ds` over each piece of the initial datum, with
//! `y = x + σ s` and `σ = √(2tε)`. Each piece is integrated with adaptive Gauss–Kronrod
//! (7/15) in `s`, with the integrand shifted by its maximum on the piece so it stays in
//! `[0, 1]`; the shift and the piece weight are carried as a log. The velocity uses the
//! differentiated kernel `2s e^{-s²}/σ` inside the same quadrature.

use crate::logsum::{SignedLog, SignedLogSum};
use crate::special_fn::SQRT_PI;
use crate::viscous::DeltaRiemannData;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    Convergence { estimate: f64, error_bound: f64 },
    #[error("heat solution V is not positive")]
    NonPositive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub max_subdivisions: usize,
    pub window_halfwidth_sigmas: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            max_subdivisions: 2000,
            window_halfwidth_sigmas: 12.0,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<(), OracleError> {
        if !(self.relative_tolerance > 0.0) {
            return Err(OracleError::InvalidSpec(
                "relative_tolerance must be > 0".into(),
            ));
        }
        if !(self.window_halfwidth_sigmas >= 8.0) {
            return Err(OracleError::InvalidSpec(
                "window must be at least 8 sigmas".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(OracleError::InvalidSpec(
                "max_subdivisions must be positive".into(),
            ));
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: [f64; 2],
    l1: [f64; 2],
    err: [f64; 2],
}

/// One GK15 panel for the pair `(f, g)`.
fn gk15<F: Fn(f64) -> [f64; 2]>(f: &F, lo: f64, hi: f64) -> Panel {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut k = [0.0; 2];
    let mut g = [0.0; 2];
    let mut l1 = [0.0; 2];
    let fc = f(c);
    for j in 0..2 {
        k[j] = WGK[7] * fc[j];
        g[j] = WG[3] * fc[j];
        l1[j] = WGK[7] * fc[j].abs();
    }
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for j in 0..2 {
            k[j] += WGK[i] * (f1[j] + f2[j]);
            l1[j] += WGK[i] * (f1[j].abs() + f2[j].abs());
            if i % 2 == 1 {
                g[j] += WG[i / 2] * (f1[j] + f2[j]);
            }
        }
    }
    let mut err = [0.0; 2];
    for j in 0..2 {
        k[j] *= h;
        g[j] *= h;
        l1[j] *= h;
        err[j] = (k[j] - g[j]).abs().max(50.0 * f64::EPSILON * l1[j]);
    }
    Panel {
        lo,
        hi,
        value: k,
        l1,
        err,
    }
}

/// Adaptive integration of `(f, g)` over `[lo, hi]`.
fn adaptive<F: Fn(f64) -> [f64; 2]>(
    f: &F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<([f64; 2], [f64; 2]), OracleError> {
    const INITIAL: usize = 8;
    let w = (hi - lo) / INITIAL as f64;
    let mut panels: Vec<Panel> = (0..INITIAL)
        .map(|i| {
            let a = lo + w * i as f64;
            let b = if i + 1 == INITIAL { hi } else { a + w };
            gk15(f, a, b)
        })
        .collect();
    loop {
        let mut total = [0.0; 2];
        let mut l1 = [0.0; 2];
        let mut err = [0.0; 2];
        for p in &panels {
            for j in 0..2 {
                total[j] += p.value[j];
                l1[j] += p.l1[j];
                err[j] += p.err[j];
            }
        }
        let done = (0..2).all(|j| err[j] <= spec.relative_tolerance * l1[j]);
        if done {
            return Ok((total, err));
        }
        if panels.len() >= spec.max_subdivisions {
            return Err(OracleError::Convergence {
                estimate: total[0],
                error_bound: err[0].max(err[1]),
            });
        }
        // split the panel with the largest error relative to its component's L1 norm
        let scaled = |p: &Panel| {
            (0..2)
                .map(|j| if l1[j] > 0.0 { p.err[j] / l1[j] } else { 0.0 })
                .fold(0.0, f64::max)
        };
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| scaled(x.1).total_cmp(&scaled(y.1)))
            .expect("at least one panel");
        let p = panels.swap_remove(idx);
        let m = 0.5 * (p.lo + p.hi);
        panels.push(gk15(f, p.lo, m));
        panels.push(gk15(f, m, p.hi));
    }
}

/// `V`, `S` and `V_x` from quadrature, each including the `1/√π` normalisation.
#[derive(Debug, Clone)]
pub struct OracleHeat {
    pub v: SignedLogSum,
    pub s: SignedLogSum,
    pub v_x: SignedLogSum,
    /// Largest error bound relative to the integrand's L1 norm over all pieces.
    pub rel_error: f64,
}

struct Piece {
    lo: f64,
    hi: f64,
    ln_weight: f64,
}

fn integrate_pieces(
    pieces: &[(Piece, SignedLog)],
    x: f64,
    sigma: f64,
    spec: &QuadratureSpec,
    with_derivative: bool,
) -> Result<(SignedLogSum, SignedLogSum, f64), OracleError> {
    let mut val = SignedLogSum::new();
    let mut der = SignedLogSum::new();
    let mut worst: f64 = 0.0;
    for (piece, factor) in pieces {
        if factor.is_zero() {
            continue;
        }
        let lo = (piece.lo - x) / sigma;
        let hi = (piece.hi - x) / sigma;
        let peak = 0.0f64.max(lo).min(hi);
        let w = spec.window_halfwidth_sigmas;
        let a = lo.max(peak - w);
        let b = hi.min(peak + w);
        if a >= b {
            continue;
        }
        let p2 = peak * peak;
        let f = |s: f64| {
            let e = (p2 - s * s).exp();
            [e, if with_derivative { 2.0 * s * e } else { 0.0 }]
        };
        let (total, err) = adaptive(&f, a, b, spec)?;
        let ln_scale = piece.ln_weight - p2 - SQRT_PI.ln();
        val.push(factor.scale_ln(ln_scale + total[0].ln()));
        if with_derivative && total[1] != 0.0 {
            der.push((*factor * SignedLog::from_f64(total[1])).scale_ln(ln_scale - sigma.ln()));
        }
        worst = worst.max(err[0] / total[0].abs());
    }
    Ok((val, der, worst))
}

fn check(eps: f64, t: f64, x: f64, spec: &QuadratureSpec) -> Result<f64, OracleError> {
    spec.validate()?;
    if !(eps > 0.0 && t > 0.0 && x.is_finite() && eps.is_finite() && t.is_finite()) {
        return Err(OracleError::Domain(format!(
            "need eps > 0, t > 0 and finite x; got eps={eps}, t={t}, x={x}"
        )));
    }
    Ok((2.0 * t * eps).sqrt())
}

pub fn oracle_heat(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<OracleHeat, OracleError> {
    let sigma = check(eps, t, x, spec)?;
    let (a, b, c, d) = (data.a(), data.b(), data.c(), data.d());
    let w1 = -data.u_a() / eps;
    let w2 = -(data.u_a() + data.u_b()) / eps;
    let one = SignedLog::positive(0.0);
    let v_pieces = [
        (
            Piece {
                lo: f64::NEG_INFINITY,
                hi: a,
                ln_weight: 0.0,
            },
            one,
        ),
        (
            Piece {
                lo: a,
                hi: b,
                ln_weight: w1,
            },
            one,
        ),
        (
            Piece {
                lo: b,
                hi: f64::INFINITY,
                ln_weight: w2,
            },
            one,
        ),
    ];
    let rc = SignedLog::from_f64(data.rho_c());
    let rcd = SignedLog::from_f64(data.rho_c() + data.rho_d());
    let s_pieces = [
        (
            Piece {
                lo: c,
                hi: b,
                ln_weight: w1,
            },
            rc,
        ),
        (
            Piece {
                lo: b,
                hi: d,
                ln_weight: w2,
            },
            rc,
        ),
        (
            Piece {
                lo: d,
                hi: f64::INFINITY,
                ln_weight: w2,
            },
            rcd,
        ),
    ];
    let (v, v_x, e1) = integrate_pieces(&v_pieces, x, sigma, spec, true)?;
    let (s, _, e2) = integrate_pieces(&s_pieces, x, sigma, spec, false)?;
    Ok(OracleHeat {
        v,
        s,
        v_x,
        rel_error: e1.max(e2),
    })
}

pub fn oracle_v(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<SignedLogSum, OracleError> {
    Ok(oracle_heat(data, eps, x, t, spec)?.v)
}

pub fn oracle_s(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<SignedLogSum, OracleError> {
    Ok(oracle_heat(data, eps, x, t, spec)?.s)
}

fn positive(v: &SignedLogSum) -> Result<SignedLog, OracleError> {
    let c = v.collapse();
    if c.is_zero() || c.negative {
        Err(OracleError::NonPositive)
    } else {
        Ok(c)
    }
}

/// `-ε V_x / V`.
pub fn oracle_u(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, OracleError> {
    let h = oracle_heat(data, eps, x, t, spec)?;
    let v = positive(&h.v)?;
    Ok(-eps * h.v_x.collapse().checked_div(v).map_or(0.0, |q| q.to_f64()))
}

/// `S / V`.
pub fn oracle_r(
    data: &DeltaRiemannData,
    eps: f64,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, OracleError> {
    let h = oracle_heat(data, eps, x, t, spec)?;
    let v = positive(&h.v)?;
    Ok(h.s.collapse().checked_div(v).map_or(0.0, |q| q.to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::viscous;

    fn data() -> DeltaRiemannData {
        DeltaRiemannData::new(0.0, 0.5, 1.0, 2.0, -1.0, 1.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn gk15_integrates_polynomials_exactly() {
        let p = gk15(&|s: f64| [s.powi(4), 1.0], 0.0, 2.0);
        assert!((p.value[0] - 32.0 / 5.0).abs() < 1e-13);
        assert!((p.value[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_normalisation() {
        let d = data().with_velocities(0.0, 0.0).unwrap();
        for (x, t) in [(-3.0, 0.1), (0.5, 1.0), (7.0, 20.0)] {
            let v = oracle_v(&d, 0.3, x, t, &QuadratureSpec::default()).unwrap();
            assert!((v.value() - 1.0).abs() < 1e-12);
            assert!(
                oracle_u(&d, 0.3, x, t, &QuadratureSpec::default())
                    .unwrap()
                    .abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn zero_density() {
        let d = DeltaRiemannData::new(0.0, 0.5, 1.0, 2.0, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(oracle_s(&d, 0.5, 0.3, 1.0, &QuadratureSpec::default())
            .unwrap()
            .collapse()
            .is_zero());
    }

    #[test]
    fn symmetric_datum_has_zero_midpoint_velocity() {
        // the velocity datum is odd about (a+b)/2; u does not depend on c, d or the masses
        let d = DeltaRiemannData::new(0.0, 0.25, 1.0, 2.0, -0.7, 0.7, 1.0, 1.0).unwrap();
        let u = oracle_u(&d, 0.2, 0.5, 1.0, &QuadratureSpec::default()).unwrap();
        assert!(u.abs() < 1e-10, "{u}");
    }

    #[test]
    fn agrees_with_closed_form() {
        let d = data();
        let spec = QuadratureSpec::default();
        let (eps, t) = (0.5, 1.0);
        let h = oracle_heat(&d, eps, 0.25, t, &spec).unwrap();
        let c = viscous::viscous_v_s(&d, eps, 0.25, t).unwrap();
        assert!((h.v.value() / c.v.value() - 1.0).abs() < 1e-8);
        assert!((h.s.value() / c.s.value() - 1.0).abs() < 1e-8);
        let u = oracle_u(&d, eps, 0.25, t, &spec).unwrap();
        let uc = viscous::viscous_u(&d, eps, 0.25, t).unwrap();
        assert!((u - uc).abs() < 1e-8 * uc.abs(), "{u} vs {uc}");
        let r = oracle_r(&d, eps, 0.75, t, &spec).unwrap();
        let rc = viscous::viscous_r(&d, eps, 0.75, t).unwrap();
        assert!((r - rc).abs() < 1e-8 * rc.abs());
    }

    #[test]
    fn window_doubling_is_within_bound() {
        let d = data();
        let s1 = QuadratureSpec::default();
        let s2 = QuadratureSpec {
            window_halfwidth_sigmas: 24.0,
            ..s1
        };
        let a = oracle_heat(&d, 0.1, 0.8, 0.7, &s1).unwrap();
        let b = oracle_heat(&d, 0.1, 0.8, 0.7, &s2).unwrap();
        let rel = (a.v.value() / b.v.value() - 1.0).abs();
        assert!(
            rel <= 10.0 * a.rel_error.max(b.rel_error).max(1e-15),
            "{rel}"
        );
    }

    #[test]
    fn invalid_spec_and_convergence_failure() {
        let d = data();
        let bad = QuadratureSpec {
            window_halfwidth_sigmas: 4.0,
            ..Default::default()
        };
        assert!(matches!(
            oracle_v(&d, 0.1, 0.0, 1.0, &bad),
            Err(OracleError::InvalidSpec(_))
        ));
        let tight = QuadratureSpec {
            relative_tolerance: 1e-30,
            max_subdivisions: 10,
            ..Default::default()
        };
        assert!(matches!(
            oracle_v(&d, 0.1, 0.0, 1.0, &tight),
            Err(OracleError::Convergence { .. })
        ));
    }
}
