//! Error-function family in the unnormalised convention
//!
//! Every routine here works with
//!
//! ```text
//! erfc_paper(z) = ∫_z^∞ e^{-s²} ds = (√π / 2) · erfc(z)
//! ```
//!
//! where `erfc` on the right is the conventional normalised complementary error
//! function. The conversion factor `√π/2` is applied once, inside this module;
//! callers never see the normalised function.
//!
//! The normalised kernels use W. J. Cody's rational Chebyshev approximations
//! (erf, erfc and the scaled erfcx share one set of coefficients). For
//! `z ≥ 8` the scaled tail `e^{z²} erfc_paper(z)` switches to the asymptotic
//! series `(1/2z) Σ (-1)^n (2n-1)!! / (2z²)^n`, which is truncated once terms
//! drop below double precision.

use thiserror::Error;

/// `√π`
pub const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
/// `√π / 2`, the value of `erfc_paper(0)`.
pub const HALF_SQRT_PI: f64 = 0.886_226_925_452_758_f64;
/// `ln(√π / 2)`
pub const LN_HALF_SQRT_PI: f64 = -0.120_782_237_635_245_22_f64;

/// Argument at which the scaled tail switches to the asymptotic series.
pub const ASYMPTOTIC_SWITCH: f64 = 8.0;

/// Below this argument `erfc_scaled` refuses to return a value.
pub const SCALED_LOWER_LIMIT: f64 = -40.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFnError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
}

// Cody's coefficients, |x| <= 0.46875
#[allow(clippy::excessive_precision)]
const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302_02,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
#[allow(clippy::excessive_precision)]
const ERF_B: [f64; 4] = [
    23.601_290_952_344_12,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
// 0.46875 < x <= 4
#[allow(clippy::excessive_precision)]
const ERFC_C: [f64; 9] = [
    0.564_188_496_988_670_1,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_1,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
#[allow(clippy::excessive_precision)]
const ERFC_D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
// x > 4
#[allow(clippy::excessive_precision)]
const ERFC_P: [f64; 6] = [
    0.305_326_634_961_232_34,
    0.360_344_899_949_804_4,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_277,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_098,
];
#[allow(clippy::excessive_precision)]
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_5,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

const ONE_OVER_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const CODY_SMALL: f64 = 0.468_75;

fn cody_ab(z: f64) -> f64 {
    ((((ERF_A[4] * z + ERF_A[0]) * z + ERF_A[1]) * z + ERF_A[2]) * z + ERF_A[3])
        / ((((z + ERF_B[0]) * z + ERF_B[1]) * z + ERF_B[2]) * z + ERF_B[3])
}

fn cody_cd(y: f64) -> f64 {
    let mut num = ERFC_C[8] * y;
    for c in &ERFC_C[..7] {
        num = (num + c) * y;
    }
    num += ERFC_C[7];
    let mut den = y;
    for d in &ERFC_D[..7] {
        den = (den + d) * y;
    }
    den += ERFC_D[7];
    num / den
}

fn cody_pq(z: f64) -> f64 {
    z * (((((ERFC_P[5] * z + ERFC_P[0]) * z + ERFC_P[1]) * z + ERFC_P[2]) * z + ERFC_P[3]) * z
        + ERFC_P[4])
        / (((((z + ERFC_Q[0]) * z + ERFC_Q[1]) * z + ERFC_Q[2]) * z + ERFC_Q[3]) * z + ERFC_Q[4])
}

/// `e^{-y²}` with the square split so that the leading part is exact.
fn exp_neg_square(y: f64) -> f64 {
    let head = (y * 16.0).trunc() / 16.0;
    (-head * head).exp() * (-(y - head) * (y + head)).exp()
}

/// `erfcx(y) = e^{y²} erfc(y)` for `y > 0.46875` (normalised convention).
fn cody_erfcx_tail(y: f64) -> f64 {
    if y <= 4.0 {
        cody_cd(y)
    } else {
        (ONE_OVER_SQRT_PI - cody_pq(1.0 / (y * y))) / y
    }
}

/// Normalised error function, `erf(x) = (2/√π) ∫_0^x e^{-s²} ds`.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= CODY_SMALL {
        return x * cody_ab(y * y);
    }
    let tail = if y >= 26.6 {
        0.0
    } else {
        cody_erfcx_tail(y) * exp_neg_square(y)
    };
    if x < 0.0 {
        tail - 1.0
    } else {
        1.0 - tail
    }
}

/// Normalised complementary error function.
fn erfc_normalised(x: f64) -> f64 {
    let y = x.abs();
    if y <= CODY_SMALL {
        return 1.0 - x * cody_ab(y * y);
    }
    let tail = if y >= 26.6 {
        0.0
    } else {
        cody_erfcx_tail(y) * exp_neg_square(y)
    };
    if x < 0.0 {
        2.0 - tail
    } else {
        tail
    }
}

/// Asymptotic series for `e^{z²} erfc_paper(z)`, valid for large positive `z`.
pub(crate) fn asymptotic_scaled_tail(z: f64) -> f64 {
    let inv = 1.0 / (2.0 * z * z);
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut n = 1.0;
    loop {
        let next = -term * (2.0 * n - 1.0) * inv;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        n += 1.0;
    }
    sum / (2.0 * z)
}

/// `e^{z²} erfc_paper(z)` for `z ≥ 0`.
pub(crate) fn scaled_tail(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z >= ASYMPTOTIC_SWITCH {
        asymptotic_scaled_tail(z)
    } else if z > CODY_SMALL {
        HALF_SQRT_PI * cody_erfcx_tail(z)
    } else {
        HALF_SQRT_PI * (z * z).exp() * (1.0 - z * cody_ab(z * z))
    }
}

/// Unchecked `erfc_paper`; NaN propagates.
pub(crate) fn erfc_paper_raw(z: f64) -> f64 {
    if z >= ASYMPTOTIC_SWITCH {
        asymptotic_scaled_tail(z) * exp_neg_square(z)
    } else if z <= -ASYMPTOTIC_SWITCH {
        SQRT_PI - asymptotic_scaled_tail(-z) * exp_neg_square(z)
    } else {
        HALF_SQRT_PI * erfc_normalised(z)
    }
}

fn check_finite(z: f64, what: &str) -> Result<(), SpecialFnError> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(SpecialFnError::Domain(format!(
            "{what}: non-finite argument {z}"
        )))
    }
}

/// `∫_z^∞ e^{-s²} ds`.
pub fn erfc_paper(z: f64) -> Result<f64, SpecialFnError> {
    check_finite(z, "erfc_paper")?;
    Ok(erfc_paper_raw(z))
}

/// `f(z) = z · erfc_paper(z) · e^{z²}`.
///
/// Positive arguments go through the scaled tail, so `e^{z²}` is never formed.
/// Negative arguments use the direct product; it overflows near `z ≈ -26.6`, and
/// anything below [`SCALED_LOWER_LIMIT`] or past the overflow point is a range error.
pub fn erfc_scaled(z: f64) -> Result<f64, SpecialFnError> {
    check_finite(z, "erfc_scaled")?;
    if z >= 0.0 {
        return Ok(z * scaled_tail(z));
    }
    if z < SCALED_LOWER_LIMIT {
        return Err(SpecialFnError::Range(format!(
            "erfc_scaled({z}): argument below {SCALED_LOWER_LIMIT}"
        )));
    }
    let value = z * erfc_paper_raw(z) * (z * z).exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecialFnError::Range(format!("erfc_scaled({z}) overflows")))
    }
}

/// `ln erfc_paper(z)`; finite for every finite argument.
pub fn log_erfc_paper(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    if z < 0.5 {
        erfc_paper_raw(z).ln()
    } else {
        scaled_tail(z).ln() - z * z
    }
}

/// Result of [`log_erfc_ratio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfcRatio {
    /// `ln erfc_paper(P) - ln erfc_paper(Q)`
    pub log_ratio: f64,
    /// `x` is equidistant from `p` and `q`; neither term dominates as `eps → 0`.
    pub degenerate: bool,
}

/// `ln[erfc_paper(|x-p|/√(2tε)) / erfc_paper(|x-q|/√(2tε))]`.
pub fn log_erfc_ratio(
    p: f64,
    q: f64,
    x: f64,
    t: f64,
    eps: f64,
) -> Result<ErfcRatio, SpecialFnError> {
    for (v, name) in [(p, "p"), (q, "q"), (x, "x"), (t, "t"), (eps, "eps")] {
        check_finite(v, name)?;
    }
    if p == q {
        return Err(SpecialFnError::Domain(
            "log_erfc_ratio: p must differ from q".into(),
        ));
    }
    if t <= 0.0 || eps <= 0.0 {
        return Err(SpecialFnError::Domain(format!(
            "log_erfc_ratio: need t > 0 and eps > 0, got t={t}, eps={eps}"
        )));
    }
    let sigma = (2.0 * t * eps).sqrt();
    let dp = (x - p).abs();
    let dq = (x - q).abs();
    let degenerate = (dp - dq).abs() <= 1e-14 * dp.max(dq).max(f64::MIN_POSITIVE);
    if degenerate {
        return Ok(ErfcRatio {
            log_ratio: 0.0,
            degenerate,
        });
    }
    Ok(ErfcRatio {
        log_ratio: log_erfc_paper(dp / sigma) - log_erfc_paper(dq / sigma),
        degenerate,
    })
}

/// `erfc_paper` together with its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfcValue {
    pub value: f64,
    pub log_value: f64,
}

impl ErfcValue {
    pub fn at(z: f64) -> Result<Self, SpecialFnError> {
        check_finite(z, "ErfcValue::at")?;
        Ok(Self {
            value: erfc_paper_raw(z),
            log_value: log_erfc_paper(z),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn constants_are_consistent() {
        assert!(rel(SQRT_PI, std::f64::consts::PI.sqrt()) <= f64::EPSILON);
        assert!(rel(HALF_SQRT_PI, SQRT_PI / 2.0) <= f64::EPSILON);
        assert!((LN_HALF_SQRT_PI - HALF_SQRT_PI.ln()).abs() < 1e-16);
    }

    #[test]
    fn erfc_at_zero() {
        assert_eq!(erfc_paper(0.0).unwrap(), HALF_SQRT_PI);
        assert!((log_erfc_paper(0.0) - (-0.120_782_2)).abs() < 1e-7);
    }

    #[test]
    fn reflection_pair() {
        let s = erfc_paper(1.3).unwrap() + erfc_paper(-1.3).unwrap();
        assert!((s - 1.772_453_850_9).abs() < 1e-10);
    }

    #[test]
    fn non_finite_is_domain_error() {
        assert!(matches!(
            erfc_paper(f64::NAN),
            Err(SpecialFnError::Domain(_))
        ));
        assert!(matches!(
            erfc_paper(f64::INFINITY),
            Err(SpecialFnError::Domain(_))
        ));
        assert!(matches!(
            erfc_scaled(f64::NEG_INFINITY),
            Err(SpecialFnError::Domain(_))
        ));
    }

    #[test]
    fn scaled_zero_and_negative_range() {
        assert_eq!(erfc_scaled(0.0).unwrap(), 0.0);
        assert!(erfc_scaled(-1.0).unwrap() < 0.0);
        assert!(matches!(erfc_scaled(-41.0), Err(SpecialFnError::Range(_))));
        assert!(matches!(erfc_scaled(-30.0), Err(SpecialFnError::Range(_))));
        assert!(erfc_scaled(-20.0).unwrap().is_finite());
    }

    #[test]
    fn branches_agree_at_switch() {
        let z = ASYMPTOTIC_SWITCH;
        let cody = HALF_SQRT_PI * cody_erfcx_tail(z);
        let series = asymptotic_scaled_tail(z);
        assert!(rel(series, cody) < 1e-12, "{series} vs {cody}");
    }

    #[test]
    fn erf_small_and_large() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(0.1) - 0.112_462_916_018_284_9).abs() < 1e-16);
        assert!((erf(-2.0) + 0.995_322_265_018_952_7).abs() < 1e-15);
        assert_eq!(erf(30.0), 1.0);
    }

    #[test]
    fn ratio_examples() {
        let r = log_erfc_ratio(0.0, 1.0, 0.5, 1.0, 0.3).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.log_ratio, 0.0);
        assert!(log_erfc_ratio(0.0, 0.0, 0.5, 1.0, 0.1).is_err());
        assert!(log_erfc_ratio(0.0, 1.0, 0.5, 0.0, 0.1).is_err());
        assert!(log_erfc_ratio(0.0, 1.0, 0.5, 1.0, -0.1).is_err());
    }

    #[test]
    fn ratio_diverges_with_dominance() {
        let mut prev = 0.0;
        for eps in [0.1, 0.03, 0.01] {
            let r = log_erfc_ratio(0.0, 1.0, 3.0, 1.0, eps).unwrap();
            assert!(!r.degenerate);
            assert!(r.log_ratio < prev);
            prev = r.log_ratio;
        }
        // leading exponent -(9 - 4)/(2·0.01) = -250
        assert!((prev + 250.0).abs() < 5.0, "{prev}");
        let r = log_erfc_ratio(0.0, 1.0, -1.0, 1.0, 0.01).unwrap();
        assert!(r.log_ratio > 100.0);
    }

    #[test]
    fn erfc_value_pairs_log() {
        let v = ErfcValue::at(2.0).unwrap();
        assert!(rel(v.log_value.exp(), v.value) < 1e-14);
    }
}
