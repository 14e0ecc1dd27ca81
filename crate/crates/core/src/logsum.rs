//! Signed accumulation in the log domain.

/// A real number stored as a sign and the log of its magnitude. Zero is `ln_abs = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub negative: bool,
    pub ln_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        negative: false,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn new(negative: bool, ln_abs: f64) -> Self {
        Self { negative, ln_abs }
    }

    pub fn positive(ln_abs: f64) -> Self {
        Self::new(false, ln_abs)
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            Self::new(v < 0.0, v.abs().ln())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    pub fn sign(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else if self.negative {
            -1.0
        } else {
            1.0
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.sign() * self.ln_abs.exp()
        }
    }

    /// Multiply by `e^{x}`.
    pub fn scale_ln(self, x: f64) -> SignedLog {
        if self.is_zero() {
            self
        } else {
            SignedLog::new(self.negative, self.ln_abs + x)
        }
    }

    /// `self / other`; `None` when `other` is zero.
    pub fn checked_div(self, other: SignedLog) -> Option<SignedLog> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SignedLog::ZERO);
        }
        Some(SignedLog::new(
            self.negative != other.negative,
            self.ln_abs - other.ln_abs,
        ))
    }
}

impl std::ops::Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, other: SignedLog) -> SignedLog {
        if self.is_zero() || other.is_zero() {
            return SignedLog::ZERO;
        }
        SignedLog::new(self.negative != other.negative, self.ln_abs + other.ln_abs)
    }
}

impl std::ops::Neg for SignedLog {
    type Output = SignedLog;

    fn neg(self) -> SignedLog {
        if self.is_zero() {
            self
        } else {
            SignedLog::new(!self.negative, self.ln_abs)
        }
    }
}

/// `ln(1 - e^x)` for `x ≤ 0`.
pub fn ln_1m_exp(x: f64) -> f64 {
    if x > 0.0 {
        f64::NAN
    } else if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// A list of signed log-domain terms, collapsed by max-pivot accumulation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SignedLogSum {
    terms: Vec<SignedLog>,
}

impl SignedLogSum {
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn push(&mut self, term: SignedLog) {
        if !term.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn push_ln(&mut self, negative: bool, ln_abs: f64) {
        self.push(SignedLog::new(negative, ln_abs));
    }

    pub fn terms(&self) -> &[SignedLog] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all terms. Terms are sorted first, so the result does not depend on push order.
    pub fn collapse(&self) -> SignedLog {
        let mut sorted: Vec<SignedLog> = self
            .terms
            .iter()
            .copied()
            .filter(|t| !t.is_zero())
            .collect();
        if sorted.is_empty() {
            return SignedLog::ZERO;
        }
        sorted.sort_by(|x, y| {
            y.ln_abs
                .total_cmp(&x.ln_abs)
                .then(x.negative.cmp(&y.negative))
        });
        let pivot = sorted[0].ln_abs;
        if pivot == f64::INFINITY || pivot.is_nan() {
            return SignedLog::new(sorted[0].negative, pivot);
        }
        let (mut pos, mut neg) = (0.0f64, 0.0f64);
        for t in sorted.iter().rev() {
            let w = (t.ln_abs - pivot).exp();
            if t.negative {
                neg += w;
            } else {
                pos += w;
            }
        }
        let diff = pos - neg;
        if diff == 0.0 {
            SignedLog::ZERO
        } else {
            SignedLog::new(diff < 0.0, pivot + diff.abs().ln())
        }
    }

    pub fn value(&self) -> f64 {
        self.collapse().to_f64()
    }
}

impl Extend<SignedLog> for SignedLogSum {
    fn extend<I: IntoIterator<Item = SignedLog>>(&mut self, iter: I) {
        for t in iter {
            self.push(t);
        }
    }
}

impl FromIterator<SignedLog> for SignedLogSum {
    fn from_iter<I: IntoIterator<Item = SignedLog>>(iter: I) -> Self {
        let mut s = SignedLogSum::new();
        s.extend(iter);
        s
    }
}
