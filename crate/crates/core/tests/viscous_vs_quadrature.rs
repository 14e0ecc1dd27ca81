mod common;

use zpgd::viscous::{viscous_r, viscous_u};
use zpgd::DeltaRiemannData;

/// `(U0, R0)` evaluated pointwise; the jump points carry no measure.
fn levels(data: &DeltaRiemannData, y: f64) -> (f64, f64) {
    let u = if y < data.a() {
        0.0
    } else if y < data.b() {
        data.u_a()
    } else {
        data.u_a() + data.u_b()
    };
    let r = if y < data.c() {
        0.0
    } else if y < data.d() {
        data.rho_c()
    } else {
        data.rho_c() + data.rho_d()
    };
    (u, r)
}

/// Weighted averages of `(x - y)/t` and `R0(y)` against `e^{-U0(y)/ε - (x-y)²/(2εt)}`,
/// integrated piece by piece so the Simpson rule never straddles a jump.
fn by_simpson(data: &DeltaRiemannData, eps: f64, x: f64, t: f64) -> (f64, f64) {
    let sigma = (2.0 * eps * t).sqrt();
    let (lo, hi) = (x - 14.0 * sigma, x + 14.0 * sigma);
    let mut cuts = vec![lo, hi];
    cuts.extend(data.nodes().iter().copied().filter(|n| *n > lo && *n < hi));
    cuts.sort_by(f64::total_cmp);
    let (mut w, mut wu, mut wr) = (0.0, 0.0, 0.0);
    for pair in cuts.windows(2) {
        let (l, r) = (pair[0], pair[1]);
        let (u0, r0) = levels(data, 0.5 * (l + r));
        let kernel = |y: f64| (-u0 / eps - (x - y).powi(2) / (sigma * sigma)).exp();
        let n = 20000;
        w += common::simpson(kernel, l, r, n);
        wu += common::simpson(|y| kernel(y) * (x - y) / t, l, r, n);
        wr += r0 * common::simpson(kernel, l, r, n);
    }
    (wu / w, wr / w)
}

#[test]
fn closed_form_matches_direct_quadrature() {
    for (name, data) in common::one_per_case() {
        for eps in [0.5, 0.2] {
            for t in [0.2, 1.0] {
                for i in 0..15 {
                    let x = data.a() - 1.0 + (data.d() - data.a() + 2.0) * (i as f64 + 0.37) / 15.0;
                    let (u_q, r_q) = by_simpson(&data, eps, x, t);
                    let u = viscous_u(&data, eps, x, t).unwrap();
                    let r = viscous_r(&data, eps, x, t).unwrap();
                    assert!(
                        (u - u_q).abs() <= 1e-8 * (1.0 + u_q.abs()),
                        "{name} eps={eps} x={x} t={t}: u {u} vs {u_q}"
                    );
                    assert!(
                        (r - r_q).abs() <= 1e-8 * (1.0 + r_q.abs()),
                        "{name} eps={eps} x={x} t={t}: R {r} vs {r_q}"
                    );
                }
            }
        }
    }
}

#[test]
fn small_viscosity_stays_finite() {
    for (_, data) in zpgd::harness::representative_configurations() {
        for eps in [1e-3, 1e-4] {
            for i in 0..50 {
                let x = data.a() - 2.0 + (data.d() - data.a() + 4.0) * (i as f64 + 0.5) / 50.0;
                let u = viscous_u(&data, eps, x, 1.0).unwrap();
                let r = viscous_r(&data, eps, x, 1.0).unwrap();
                assert!(u.is_finite() && r.is_finite());
            }
        }
    }
}
