//! Exact and asymptotic evaluation of the failure probability
//! `P = Pr(optimal hybrid rate <= full-power OMA rate)` under independent
//! unit-mean exponential gains.
//!
//! The exact value has a closed part plus one integral with no elementary
//! antiderivative,
//!
//! ```text
//! P = 1 - exp(-(2-eta)*eps0/(eta*rho_m) - 4(1-eta)/(eta^2*rho_n))
//!     - I,
//! I = integral over y in [eps0/(eta*rho_m), (2-eta)*eps0/(eta*rho_m)] of
//!     exp(-y) * exp(-(rho_m*y/eps0 - 1)^2 / (rho_n*(eta*rho_m*y/eps0 - 1)))
//! ```
//!
//! evaluated by adaptive quadrature. The same probability decomposes over
//! the five disjoint losing events of the win-condition case split
//! (`p1`, `p2_1`, `p2_2`, `p3_1`, `p3_2`); their closed forms are kept here
//! with exponents combined before exponentiation so no intermediate factor
//! can overflow. Summing the five components reproduces the compact form
//! identically, which the test suite checks numerically across the SNR grid.

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::quad::{integrate, QuadratureConfig};

/// The five losing-event probabilities and their sum.
///
/// Events, with `ratio = tau_m/(rho_n*g_n)`:
/// * `p1` — no interference budget: `tau_m = 0`.
/// * `p2_1`, `p2_2` — unconstrained case (`ratio >= eta/2`) with the gain
///   below the win threshold, split on whether `tau_m` clears
///   `2(1-eta)/eta`.
/// * `p3_1` — constrained case with `tau_m <= 1/eta - 1`.
/// * `p3_2` — constrained case, `tau_m > 1/eta - 1`, gain below the win
///   threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityBreakdown {
    pub p1: f64,
    pub p2_1: f64,
    pub p2_2: f64,
    pub p3_1: f64,
    pub p3_2: f64,
    /// Sum of the five components.
    pub total: f64,
}

/// Frequently shared subexpressions of the closed forms.
struct Terms {
    /// `eps0 / rho_m` — the `tau_m = 0` gain threshold.
    a1: f64,
    /// `eps0 / (eta * rho_m)`.
    a2: f64,
    /// `(2 - eta) * eps0 / (eta * rho_m)`.
    b1: f64,
    /// `4 (1 - eta) / (eta^2 rho_n)` — the unconstrained-case exponent.
    q: f64,
    /// `2 (1 - eta) / (eta^2 rho_n)`.
    q_half: f64,
    /// `eta rho_n eps0 / (2 rho_m + eta rho_n eps0)`.
    c: f64,
}

impl Terms {
    fn new(params: &SystemParams) -> Self {
        let eta = params.eta();
        let rho_n = params.rho_n();
        let rho_m = params.rho_m();
        let eps0 = params.epsilon0();
        Self {
            a1: eps0 / rho_m,
            a2: eps0 / (eta * rho_m),
            b1: (2.0 - eta) * eps0 / (eta * rho_m),
            q: 4.0 * (1.0 - eta) / (eta * eta * rho_n),
            q_half: 2.0 * (1.0 - eta) / (eta * eta * rho_n),
            c: eta * rho_n * eps0 / (2.0 * rho_m + eta * rho_n * eps0),
        }
    }
}

/// `1 - exp(-z)` without cancellation for small `z`.
fn one_minus_exp_neg(z: f64) -> f64 {
    -(-z).exp_m1()
}

/// The integral term shared by the compact form and `p3_2`.
fn loss_integral(params: &SystemParams, cfg: &QuadratureConfig) -> Result<f64> {
    let eta = params.eta();
    if eta == 1.0 {
        return Ok(0.0); // interval collapses to a point
    }
    let rho_n = params.rho_n();
    let scale = params.rho_m() / params.epsilon0();
    let a = 1.0 / (eta * scale);
    let b = (2.0 - eta) / (eta * scale);
    let integrand = move |y: f64| {
        let t = scale * y;
        let den = rho_n * (eta * t - 1.0);
        if den <= 0.0 {
            // only reachable at the lower endpoint, where the squared
            // numerator drives the exponent to -inf; extend by 0
            return 0.0;
        }
        let num = t - 1.0;
        (-y - num * num / den).exp()
    };
    integrate(integrand, a, b, cfg)
}

/// Checks a computed probability against [0, 1], clamping roundoff-level
/// overshoot and failing on anything larger.
fn into_probability(value: f64, tol: f64, context: &'static str) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else if value > -tol && value < 1.0 + tol {
        Ok(value.clamp(0.0, 1.0))
    } else {
        Err(Error::NotAProbability {
            context,
            value,
            tolerance: tol,
        })
    }
}

/// Exact failure probability: closed part evaluated analytically, integral
/// part by adaptive quadrature to `cfg.abs_tol`.
pub fn p_wn_exact(params: &SystemParams, cfg: &QuadratureConfig) -> Result<f64> {
    let t = Terms::new(params);
    let closed = one_minus_exp_neg(t.b1 + t.q);
    let p = closed - loss_integral(params, cfg)?;
    into_probability(p, cfg.abs_tol(), "p_wn_exact")
}

/// The five-way decomposition of the failure probability.
///
/// Each component is its own closed form (the last one carrying the shared
/// integral), so `total` reproducing [`p_wn_exact`] confirms the whole
/// derivation chain end to end.
pub fn p_breakdown(params: &SystemParams, cfg: &QuadratureConfig) -> Result<ProbabilityBreakdown> {
    let t = Terms::new(params);
    let e_a1 = (-t.a1).exp();
    let e_b1 = (-t.b1).exp();

    let p1 = one_minus_exp_neg(t.a1);
    let p2_1 = e_b1 * one_minus_exp_neg(t.q);
    let p2_2 = e_a1 - e_b1 - t.c * (e_a1 - (-t.b1 - t.q).exp());
    let p3_1 = t.c * (e_a1 - (-t.a2 - t.q_half).exp());
    let p3_2 =
        t.c * ((-t.a2 - t.q_half).exp() - (-t.b1 - t.q).exp()) - loss_integral(params, cfg)?;

    let tol = cfg.abs_tol();
    let breakdown = ProbabilityBreakdown {
        p1: into_probability(p1, tol, "p_breakdown.p1")?,
        p2_1: into_probability(p2_1, tol, "p_breakdown.p2_1")?,
        p2_2: into_probability(p2_2, tol, "p_breakdown.p2_2")?,
        p3_1: into_probability(p3_1, tol, "p_breakdown.p3_1")?,
        p3_2: into_probability(p3_2, tol, "p_breakdown.p3_2")?,
        total: 0.0,
    };
    let total = breakdown.p1 + breakdown.p2_1 + breakdown.p2_2 + breakdown.p3_1 + breakdown.p3_2;
    Ok(ProbabilityBreakdown {
        total: into_probability(total, tol, "p_breakdown.total")?,
        ..breakdown
    })
}

/// High-SNR two-term approximation
/// `eps0/(eta*rho_m) + 4(1-eta)/(eta^2*rho_n)`.
///
/// Intentionally not clamped: values above 1 at low SNR expose where the
/// approximation stops being meaningful.
pub fn p_wn_asymptotic(params: &SystemParams) -> f64 {
    let t = Terms::new(params);
    t.a2 + t.q
}

/// Limit of the failure probability for fixed `rho_n` as `rho_m` grows:
/// `1 - exp(-4(1-eta)/(eta^2*rho_n))`. Ignores the `rho_m` field.
pub fn p_wn_limit_fixed_rho_n(params: &SystemParams) -> f64 {
    let t = Terms::new(params);
    one_minus_exp_neg(t.q)
}

/// Limit of the failure probability for fixed `rho_m` as `rho_n` grows:
/// `1 - exp(-eps0/(eta*rho_m))`. Ignores the `rho_n` field.
pub fn p_wn_limit_fixed_rho_m(params: &SystemParams) -> f64 {
    let t = Terms::new(params);
    one_minus_exp_neg(t.a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(rho_n: f64, rho_m: f64, eta: f64, r0: f64) -> SystemParams {
        SystemParams::new(rho_n, rho_m, eta, r0).unwrap()
    }

    #[test]
    fn full_budget_reduces_to_tau_zero_probability() {
        // with eta = 1 only the tau_m = 0 event can lose
        let cfg = QuadratureConfig::default();
        let p = params(1000.0, 10.0, 1.0, 1.0);
        let exact = p_wn_exact(&p, &cfg).unwrap();
        assert_relative_eq!(exact, one_minus_exp_neg(0.1), max_relative = 1e-12);

        let b = p_breakdown(&p, &cfg).unwrap();
        assert_eq!(b.p2_1, 0.0);
        assert_relative_eq!(b.total, exact, epsilon = 1e-12);
    }

    #[test]
    fn breakdown_p1_value() {
        let cfg = QuadratureConfig::default();
        let p = params(1000.0, 10.0, 0.8, 1.0);
        let b = p_breakdown(&p, &cfg).unwrap();
        assert_relative_eq!(b.p1, 0.09516258196404043, max_relative = 1e-12);
    }

    #[test]
    fn breakdown_sums_to_exact_probability() {
        let cfg = QuadratureConfig::default();
        for rho_db in [0.0, 10.0, 20.0, 30.0, 40.0] {
            for eta in [0.5, 0.8, 1.0] {
                for r0 in [0.5, 1.0, 2.0] {
                    let rho = 10f64.powf(rho_db / 10.0);
                    let p = params(rho, rho, eta, r0);
                    let exact = p_wn_exact(&p, &cfg).unwrap();
                    let b = p_breakdown(&p, &cfg).unwrap();
                    assert!(
                        (b.total - exact).abs() <= 1e-9,
                        "rho_db={rho_db}, eta={eta}, r0={r0}: {} vs {exact}",
                        b.total
                    );
                    for (name, c) in [
                        ("p1", b.p1),
                        ("p2_1", b.p2_1),
                        ("p2_2", b.p2_2),
                        ("p3_1", b.p3_1),
                        ("p3_2", b.p3_2),
                    ] {
                        assert!((0.0..=1.0).contains(&c), "{name} = {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn asymptotic_examples() {
        let p = params(1000.0, 1000.0, 0.8, 1.0);
        assert_relative_eq!(p_wn_asymptotic(&p), 0.0025, max_relative = 1e-12);
        let p = params(1000.0, 50.0, 1.0, 1.0);
        assert_relative_eq!(p_wn_asymptotic(&p), 1.0 / 50.0, max_relative = 1e-12);
    }

    #[test]
    fn asymptotic_unclamped_at_low_snr() {
        let p = params(0.01, 0.01, 0.5, 2.0);
        assert!(p_wn_asymptotic(&p) > 1.0);
    }

    #[test]
    fn limit_values() {
        let p = params(100.0, 1.0, 0.8, 1.0);
        assert_relative_eq!(
            p_wn_limit_fixed_rho_n(&p),
            one_minus_exp_neg(0.0125),
            max_relative = 1e-14
        );
        let p = params(1.0, 100.0, 0.8, 1.0);
        assert_relative_eq!(
            p_wn_limit_fixed_rho_m(&p),
            one_minus_exp_neg(1.0 / 80.0),
            max_relative = 1e-14
        );
        // eta = 1 collapses the fixed-rho_n limit entirely
        let p = params(100.0, 1.0, 1.0, 1.0);
        assert_eq!(p_wn_limit_fixed_rho_n(&p), 0.0);
        // ... and the fixed-rho_m limit coincides with p1
        let p = params(1.0, 10.0, 1.0, 1.0);
        assert_relative_eq!(
            p_wn_limit_fixed_rho_m(&p),
            0.09516258196404043,
            max_relative = 1e-12
        );
    }

    #[test]
    fn probabilities_stay_in_bounds_across_grid() {
        let cfg = QuadratureConfig::default();
        for i in 0..8 {
            for j in 0..8 {
                let rho_n = 10f64.powf(i as f64 * 40.0 / 7.0 / 10.0);
                let rho_m = 10f64.powf(j as f64 * 40.0 / 7.0 / 10.0);
                let p = params(rho_n, rho_m, 0.8, 1.0);
                let v = p_wn_exact(&p, &cfg).unwrap();
                assert!((0.0..=1.0).contains(&v), "p = {v} at ({rho_n}, {rho_m})");
            }
        }
    }

    #[test]
    fn tight_tolerance_is_reachable() {
        let cfg = QuadratureConfig::new(1e-13, 500).unwrap();
        let p = params(100.0, 100.0, 0.8, 1.0);
        let v = p_wn_exact(&p, &cfg).unwrap();
        assert!((0.0..=1.0).contains(&v));
    }
}
