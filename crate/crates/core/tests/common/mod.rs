#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zpgd::limit::MajorCase;
use zpgd::DeltaRiemannData;

pub const ALL_CASES: [MajorCase; 6] = [
    MajorCase::Case1,
    MajorCase::Case2,
    MajorCase::Case3,
    MajorCase::Case4,
    MajorCase::Case5,
    MajorCase::Case6,
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random admissible datum whose velocity weights fall in `case`.
pub fn random_data(case: MajorCase, rng: &mut ChaCha8Rng) -> DeltaRiemannData {
    let a = rng.gen_range(-1.0..1.0);
    let len = rng.gen_range(0.5..2.0);
    let b = a + len;
    let c = a + len * rng.gen_range(0.05..0.95);
    let d = b + rng.gen_range(0.2..2.5);
    let m1: f64 = rng.gen_range(0.1..3.0);
    let m2: f64 = rng.gen_range(0.1..3.0);
    let (ua, ub) = match case {
        MajorCase::Case1 => (-m1, m2),
        MajorCase::Case2 => (m1, m2),
        MajorCase::Case3 => (m1 + m2, -m2),
        MajorCase::Case4 => (m1, -(m1 + m2)),
        MajorCase::Case5 => (m1, -m1),
        MajorCase::Case6 => (-m1, -m2),
    };
    let rho_c = rng.gen_range(0.1..3.0);
    let rho_d = rng.gen_range(0.1..3.0);
    DeltaRiemannData::new(a, c, b, d, ua, ub, rho_c, rho_d).expect("generated data are ordered")
}

/// One datum per case, taken from the representative set.
pub fn one_per_case() -> Vec<(&'static str, DeltaRiemannData)> {
    let all = zpgd::harness::representative_configurations();
    [
        "case1",
        "case2_below",
        "case3_below",
        "case4_below",
        "case5_below",
        "case6",
    ]
    .iter()
    .map(|n| *all.iter().find(|(name, _)| name == n).expect("known name"))
    .collect()
}

/// Minimiser `y*` of `U0(y) + (x - y)²/(2t)` over the three candidates of a
/// piecewise-constant `U0` with jumps at `a` and `b`.
pub fn hopf_lax_foot(data: &DeltaRiemannData, x: f64, t: f64) -> f64 {
    let (a, b) = (data.a(), data.b());
    let (ua, s) = (data.u_a(), data.u_a() + data.u_b());
    let u0 = if x < a {
        0.0
    } else if x < b {
        ua
    } else {
        s
    };
    let candidates = [
        (x, u0),
        (a, (x - a).powi(2) / (2.0 * t) + 0.0f64.min(ua)),
        (b, (x - b).powi(2) / (2.0 * t) + ua.min(s)),
    ];
    candidates
        .iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .expect("three candidates")
        .0
}

/// Limit velocity from the variational formula.
pub fn hopf_lax_u(data: &DeltaRiemannData, x: f64, t: f64) -> f64 {
    (x - hopf_lax_foot(data, x, t)) / t
}

/// Limit integrated density: the initial integrated density at the characteristic foot.
pub fn hopf_lax_r(data: &DeltaRiemannData, x: f64, t: f64) -> f64 {
    let y = hopf_lax_foot(data, x, t);
    let (c, d) = (data.c(), data.d());
    if y < c {
        0.0
    } else if y < d {
        data.rho_c()
    } else {
        data.rho_c() + data.rho_d()
    }
}

/// Asymptotic series `e^{z²} ∫_z^∞ e^{-s²} ds`, summed to its smallest term.
pub fn series_scaled_tail(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0 / (2.0 * z);
    let mut n = 0;
    loop {
        sum += term;
        n += 1;
        let next = -term * (2 * n - 1) as f64 / (2.0 * z * z);
        if next.abs() >= term.abs() || next.abs() < 1e-20 {
            return sum;
        }
        term = next;
    }
}

/// Composite Simpson rule on `[lo, hi]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(lo + h * i as f64);
    }
    s * h / 3.0
}
