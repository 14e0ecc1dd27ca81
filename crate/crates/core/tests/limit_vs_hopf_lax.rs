mod common;

use zpgd::build_solution;
use zpgd::limit::LimitValue;

/// Points well away from every curve, where both sides are smooth.
fn probes(sol: &zpgd::LimitSolution, t: f64) -> Vec<f64> {
    let pos: Vec<f64> = sol.positions(t).into_iter().map(|(_, x)| x).collect();
    let lo = pos.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0;
    let hi = pos.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0;
    (0..=200)
        .map(|i| lo + (hi - lo) * i as f64 / 200.0)
        .filter(|x| pos.iter().all(|p| (x - p).abs() > 1e-6))
        .collect()
}

#[test]
fn velocity_matches_variational_formula() {
    for (k, case) in common::ALL_CASES.iter().enumerate() {
        let mut rng = common::rng(7 + k as u64);
        for _ in 0..40 {
            let data = common::random_data(*case, &mut rng);
            let sol = build_solution(&data).unwrap();
            for t in [0.05, 0.3, 1.0, 4.0] {
                for x in probes(&sol, t) {
                    let expected = common::hopf_lax_u(&data, x, t);
                    match sol.eval_u(x, t).unwrap() {
                        LimitValue::Value(u) => assert!(
                            (u - expected).abs() <= 1e-9 * (1.0 + expected.abs()),
                            "{case} {data:?} x={x} t={t}: {u} vs {expected}"
                        ),
                        other => panic!("{case} x={x} t={t}: unexpected jump {other:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn plateau_matches_initial_density_at_foot() {
    for (k, case) in common::ALL_CASES.iter().enumerate() {
        let mut rng = common::rng(70 + k as u64);
        for _ in 0..40 {
            let data = common::random_data(*case, &mut rng);
            let sol = build_solution(&data).unwrap();
            for t in [0.05, 0.3, 1.0, 4.0] {
                for x in probes(&sol, t) {
                    let r = sol.r_plateau(x, t).unwrap();
                    let expected = common::hopf_lax_r(&data, x, t);
                    assert!(
                        (r - expected).abs() <= 1e-12,
                        "{case} {data:?} x={x} t={t}: {r} vs {expected}"
                    );
                }
            }
        }
    }
}

#[test]
fn total_mass_is_conserved() {
    for (k, case) in common::ALL_CASES.iter().enumerate() {
        let mut rng = common::rng(700 + k as u64);
        for _ in 0..20 {
            let data = common::random_data(*case, &mut rng);
            let sol = build_solution(&data).unwrap();
            for t in [0.1, 1.0, 10.0] {
                let total = sol.r_plateau(1e6, t).unwrap();
                assert!((total - data.rho_c() - data.rho_d()).abs() <= 1e-12);
                assert_eq!(sol.r_plateau(-1e6, t).unwrap(), 0.0);
            }
        }
    }
}
