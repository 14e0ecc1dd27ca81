mod common;

use zpgd::special_fn::{erfc_paper, erfc_scaled, log_erfc_paper, SQRT_PI};

fn tail_by_simpson(z: f64) -> f64 {
    // the integrand is below 1e-300 beyond z + 27
    common::simpson(|s| (-s * s).exp(), z, z + 27.0, 200_000)
}

#[test]
fn tail_at_two() {
    let v = erfc_paper(2.0).unwrap();
    assert!((v - 0.0041455).abs() < 5e-7);
    assert!((v - tail_by_simpson(2.0)).abs() < 1e-14);
}

#[test]
fn tails_match_quadrature() {
    for z in [-3.0, -1.0, -0.25, 0.0, 0.3, 0.5, 1.5, 4.0, 6.0] {
        let q = tail_by_simpson(z);
        let v = erfc_paper(z).unwrap();
        assert!((v - q).abs() <= 1e-12 * q.max(1e-300), "z={z}: {v} vs {q}");
    }
}

#[test]
fn scaled_tail_at_ten() {
    let v = erfc_scaled(10.0).unwrap();
    assert!((v - 0.49754).abs() < 5e-6);
    assert!((v - 10.0 * common::series_scaled_tail(10.0)).abs() < 1e-14);
}

#[test]
fn log_tail_far_out() {
    for z in [20.0, 30.0, 100.0] {
        let expected = common::series_scaled_tail(z).ln() - z * z;
        assert!((log_erfc_paper(z) - expected).abs() <= 1e-14 * expected.abs());
    }
    assert!((log_erfc_paper(20.0) + 403.69013).abs() < 1e-5);
}

#[test]
fn full_line_integral() {
    assert!((log_erfc_paper(-40.0) - SQRT_PI.ln()).abs() < 1e-15);
}
