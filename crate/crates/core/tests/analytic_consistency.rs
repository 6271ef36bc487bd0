//! Quadrature, decomposition, asymptotics, and limits against independent
//! references.

use hybrid_noma_core::analytic::{
    p_breakdown, p_wn_asymptotic, p_wn_exact, p_wn_limit_fixed_rho_m, p_wn_limit_fixed_rho_n,
};
use hybrid_noma_core::model::{db_to_linear, SystemParams};
use hybrid_noma_core::quad::{integrate, QuadratureConfig};

fn params(rho_n: f64, rho_m: f64, eta: f64, r0: f64) -> SystemParams {
    SystemParams::new(rho_n, rho_m, eta, r0).unwrap()
}

/// The loss integrand, rebuilt here so the reference stays independent of
/// the implementation under test.
fn loss_integrand(rho_n: f64, rho_m: f64, eta: f64, eps0: f64) -> impl Fn(f64) -> f64 {
    move |y: f64| {
        let t = rho_m * y / eps0;
        let den = rho_n * (eta * t - 1.0);
        if den <= 0.0 {
            0.0
        } else {
            (-y - (t - 1.0) * (t - 1.0) / den).exp()
        }
    }
}

/// Adaptive quadrature vs a dense fixed trapezoid rule on the probability
/// integrand.
#[test]
fn adaptive_matches_dense_trapezoid() {
    let (rho_n, rho_m, eta, eps0) = (100.0, 100.0, 0.8, 1.0);
    let f = loss_integrand(rho_n, rho_m, eta, eps0);
    let a = eps0 / (eta * rho_m);
    let b = (2.0 - eta) * eps0 / (eta * rho_m);

    let n = 1_000_000usize;
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for k in 1..n {
        acc += f(a + h * k as f64);
    }
    let trapezoid = acc * h;

    let adaptive = integrate(&f, a, b, &QuadratureConfig::default()).unwrap();
    assert!(
        (adaptive - trapezoid).abs() <= 1e-8,
        "adaptive {adaptive} vs trapezoid {trapezoid}"
    );
}

#[test]
fn breakdown_total_equals_compact_form_everywhere() {
    let cfg = QuadratureConfig::default();
    for i in 0..10 {
        for j in 0..10 {
            let rho_n = db_to_linear(i as f64 * 40.0 / 9.0);
            let rho_m = db_to_linear(j as f64 * 40.0 / 9.0);
            for eta in [0.5, 0.8, 1.0] {
                let p = params(rho_n, rho_m, eta, 1.0);
                let exact = p_wn_exact(&p, &cfg).unwrap();
                let b = p_breakdown(&p, &cfg).unwrap();
                assert!(
                    (b.total - exact).abs() <= 1e-9,
                    "mismatch at ({rho_n}, {rho_m}, {eta}): {} vs {exact}",
                    b.total
                );
            }
        }
    }
}

#[test]
fn exact_decreases_along_both_power_axes() {
    let cfg = QuadratureConfig::default();
    let grid: Vec<f64> = (0..10).map(|i| db_to_linear(i as f64 * 40.0 / 9.0)).collect();
    let values: Vec<Vec<f64>> = grid
        .iter()
        .map(|&rho_n| {
            grid.iter()
                .map(|&rho_m| p_wn_exact(&params(rho_n, rho_m, 0.8, 1.0), &cfg).unwrap())
                .collect()
        })
        .collect();
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            if i + 1 < grid.len() {
                assert!(values[i + 1][j] < values[i][j] - 1e-12);
            }
            if j + 1 < grid.len() {
                assert!(values[i][j + 1] < values[i][j] - 1e-12);
            }
        }
    }
}

#[test]
fn limits_are_reached_at_extreme_powers() {
    let cfg = QuadratureConfig::default();
    // rho_m -> infinity at fixed rho_n
    let p = params(100.0, 1e6, 0.8, 1.0);
    let exact = p_wn_exact(&p, &cfg).unwrap();
    let limit = p_wn_limit_fixed_rho_n(&p);
    assert!((exact - limit).abs() <= 1e-3, "{exact} vs {limit}");

    // rho_n -> infinity at fixed rho_m
    let p = params(1e6, 100.0, 0.8, 1.0);
    let exact = p_wn_exact(&p, &cfg).unwrap();
    let limit = p_wn_limit_fixed_rho_m(&p);
    assert!((exact - limit).abs() <= 1e-3, "{exact} vs {limit}");
}

#[test]
fn saturation_in_the_far_field() {
    let cfg = QuadratureConfig::default();
    for rho_n in [1.0, 100.0, 1e4] {
        let lo = p_wn_exact(&params(rho_n, 1e5, 0.8, 1.0), &cfg).unwrap();
        let hi = p_wn_exact(&params(rho_n, 1e6, 0.8, 1.0), &cfg).unwrap();
        assert!((hi - lo).abs() < 1e-4, "rho_n = {rho_n}: {lo} vs {hi}");
    }
}

#[test]
fn probability_vanishes_at_very_high_snr() {
    let cfg = QuadratureConfig::default();
    let rho = db_to_linear(50.0);
    let v = p_wn_exact(&params(rho, rho, 0.8, 1.0), &cfg).unwrap();
    assert!(v < 1e-3, "p = {v}");
    assert!(v > 0.0);
}

#[test]
fn asymptotic_error_shrinks_with_snr() {
    let cfg = QuadratureConfig::default();
    let rel_err = |db: f64| {
        let rho = db_to_linear(db);
        let p = params(rho, rho, 0.8, 1.0);
        let exact = p_wn_exact(&p, &cfg).unwrap();
        (p_wn_asymptotic(&p) - exact).abs() / exact
    };
    let (e20, e30, e40) = (rel_err(20.0), rel_err(30.0), rel_err(40.0));
    assert!(e30 < e20, "{e30} !< {e20}");
    assert!(e40 < e30, "{e40} !< {e30}");
    assert!(e40 <= 0.15, "relative error at 40 dB: {e40}");
}
