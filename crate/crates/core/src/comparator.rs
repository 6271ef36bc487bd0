//! Hybrid-vs-OMA rate comparison and energy accounting.
//!
//! The OMA baseline spends the full power `rho_n` for the whole slot; the
//! hybrid scheme spends at most `eta * rho_n`. The win conditions below
//! restate `optimal_rate > oma_rate` in closed form over the channel gains,
//! split by which case of the optimal allocation is active.

use crate::allocator::optimal_rate;
use crate::model::{rate_bpcu, tau_m, ChannelGains, SystemParams};

/// Which transmission scheme to account energy for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Hybrid,
    Oma,
}

/// Rates, verdict, and energy figures for one channel realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonOutcome {
    /// Optimal hybrid rate in BPCU.
    pub hybrid_rate: f64,
    /// Full-power OMA rate in BPCU.
    pub oma_rate: f64,
    /// Strict rate advantage, `hybrid_rate > oma_rate` on the exact
    /// formula values (ties count as not winning).
    pub hybrid_wins: bool,
    /// `eta * T * rho_n`, noise-normalized joules.
    pub energy_hybrid: f64,
    /// `T * rho_n`, noise-normalized joules.
    pub energy_oma: f64,
}

/// OMA rate of the secondary user at full transmit power: `log2(1 + rho_n*g_n)`.
pub fn oma_rate(params: &SystemParams, g_n: f64) -> f64 {
    rate_bpcu(params.rho_n() * g_n)
}

/// Closed-form test for a strict hybrid rate advantage.
///
/// True iff either
/// * the unconstrained-optimum case is active (`tau_m/(rho_n*g_n) >= eta/2`,
///   `tau_m > 0`) and `g_n > 4(1-eta)/(eta^2*rho_n)`, or
/// * the constrained case is active and both `tau_m >= 1/eta - 1` and
///   `g_n > tau_m^2 / (rho_n*(eta + tau_m*eta - 1))` hold
///   (at `tau_m = 1/eta - 1` the gain threshold is infinite, so the
///   condition is never met there).
///
/// `tau_m = 0` is always a loss: the hybrid scheme degenerates to OMA with
/// an `eta <= 1` power fraction. Agrees with the direct comparison
/// `optimal_rate > oma_rate` everywhere.
pub fn hybrid_beats_oma(params: &SystemParams, gains: &ChannelGains) -> bool {
    let eta = params.eta();
    let tau = tau_m(params, gains.g_m());
    if tau == 0.0 {
        return false;
    }
    let ratio = tau / (params.rho_n() * gains.g_n()); // +inf when g_n = 0
    if ratio >= eta / 2.0 {
        gains.g_n() > 4.0 * (1.0 - eta) / (eta * eta * params.rho_n())
    } else {
        let margin = eta + tau * eta - 1.0;
        margin > 0.0 && gains.g_n() > tau * tau / (params.rho_n() * margin)
    }
}

/// Slot energy consumed by a scheme, noise-normalized.
pub fn energy(params: &SystemParams, scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Hybrid => params.eta() * params.slot_t() * params.rho_n(),
        Scheme::Oma => params.slot_t() * params.rho_n(),
    }
}

/// Evaluates both schemes on one realization.
pub fn compare(params: &SystemParams, gains: &ChannelGains) -> ComparisonOutcome {
    let hybrid = optimal_rate(params, gains);
    let oma = oma_rate(params, gains.g_n());
    ComparisonOutcome {
        hybrid_rate: hybrid,
        oma_rate: oma,
        hybrid_wins: hybrid > oma,
        energy_hybrid: energy(params, Scheme::Hybrid),
        energy_oma: energy(params, Scheme::Oma),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(rho_n: f64, rho_m: f64, eta: f64, r0: f64) -> SystemParams {
        SystemParams::new(rho_n, rho_m, eta, r0).unwrap()
    }

    fn gains(g_m: f64, g_n: f64) -> ChannelGains {
        ChannelGains::new(g_m, g_n).unwrap()
    }

    #[test]
    fn oma_rate_values() {
        let p = params(10.0, 10.0, 0.8, 1.0);
        assert_relative_eq!(oma_rate(&p, 1.0), 11.0f64.log2(), max_relative = 1e-14);
        assert_eq!(oma_rate(&p, 0.0), 0.0);
        let p = params(1000.0, 10.0, 0.8, 1.0);
        assert_relative_eq!(oma_rate(&p, 1.0), 1001.0f64.log2(), max_relative = 1e-14);
    }

    #[test]
    fn full_budget_always_wins_when_interference_allowed() {
        // eta = 1 collapses both thresholds to zero
        let p = params(10.0, 10.0, 1.0, 1.0);
        for g_n in [1e-6, 0.1, 1.0, 10.0] {
            // g_m = 0.3 gives tau_m = 2 > 0
            assert!(hybrid_beats_oma(&p, &gains(0.3, g_n)), "g_n = {g_n}");
        }
    }

    #[test]
    fn no_interference_budget_never_wins() {
        let p = params(10.0, 10.0, 0.8, 1.0);
        assert!(!hybrid_beats_oma(&p, &gains(0.05, 5.0)));
        let outcome = compare(&p, &gains(0.05, 5.0));
        assert!(!outcome.hybrid_wins);
        assert!(outcome.hybrid_rate < outcome.oma_rate);
    }

    #[test]
    fn unconstrained_case_win_cross_checked() {
        // tau_m = 9, ratio 0.9 >= 0.4, threshold 4*0.2/(0.64*10) = 0.125
        let p = params(10.0, 10.0, 0.8, 1.0);
        let g = gains(1.0, 1.0);
        assert!(hybrid_beats_oma(&p, &g));
        let outcome = compare(&p, &g);
        assert_relative_eq!(outcome.hybrid_rate, 2.0 * 5.0f64.log2(), max_relative = 1e-14);
        assert_relative_eq!(outcome.oma_rate, 11.0f64.log2(), max_relative = 1e-14);
        assert!(outcome.hybrid_wins);
    }

    #[test]
    fn quiet_secondary_channel_is_a_tie() {
        let p = params(10.0, 10.0, 0.8, 1.0);
        let g = gains(1.0, 0.0); // tau_m > 0 but zero rate either way
        assert!(!hybrid_beats_oma(&p, &g));
        let outcome = compare(&p, &g);
        assert_eq!(outcome.hybrid_rate, outcome.oma_rate);
        assert!(!outcome.hybrid_wins);
    }

    #[test]
    fn constrained_case_margin_guard() {
        // eta = 0.5 needs tau_m >= 1 for any constrained-case win
        let p = params(100.0, 10.0, 0.5, 1.0);
        // tau_m = 0.5 < 1: loses no matter how strong g_n is
        let g_m = 0.15;
        assert_relative_eq!(tau_m(&p, g_m), 0.5);
        for g_n in [0.1, 1.0, 100.0] {
            let g = gains(g_m, g_n);
            if tau_m(&p, g_m) / (p.rho_n() * g_n) < 0.25 {
                assert!(!hybrid_beats_oma(&p, &g), "g_n = {g_n}");
                assert!(optimal_rate(&p, &g) <= oma_rate(&p, g_n));
            }
        }
    }

    #[test]
    fn energy_accounting() {
        let p = params(1000.0, 10.0, 0.8, 1.0);
        assert_relative_eq!(energy(&p, Scheme::Hybrid), 800.0);
        assert_relative_eq!(energy(&p, Scheme::Oma), 1000.0);

        let p = params(10.0, 10.0, 1.0, 1.0);
        assert_eq!(energy(&p, Scheme::Hybrid), energy(&p, Scheme::Oma));

        let p = SystemParams::with_slot(10.0, 10.0, 0.5, 1.0, 2.0).unwrap();
        assert_relative_eq!(energy(&p, Scheme::Hybrid), 10.0);
        assert_relative_eq!(energy(&p, Scheme::Oma), 20.0);
    }

    #[test]
    fn predicate_agrees_with_direct_comparison_on_a_sweep() {
        let p = params(10.0, 10.0, 0.8, 1.0);
        for i in 1..=40 {
            for j in 1..=40 {
                let g = gains(0.08 * i as f64, 0.11 * j as f64);
                let direct = optimal_rate(&p, &g) > oma_rate(&p, g.g_n());
                assert_eq!(
                    hybrid_beats_oma(&p, &g),
                    direct,
                    "disagreement at g_m={}, g_n={}",
                    g.g_m(),
                    g.g_n()
                );
            }
        }
    }
}
