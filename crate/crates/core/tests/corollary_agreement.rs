//! The closed-form win predicate against direct rate comparison.

mod common;

use common::random_instances;
use hybrid_noma_core::allocator::optimal_rate;
use hybrid_noma_core::comparator::{hybrid_beats_oma, oma_rate};
use hybrid_noma_core::model::{ChannelGains, SystemParams};
use proptest::prelude::*;
use rayon::prelude::*;

/// Every non-tie instance must classify identically under the predicate and
/// under the direct comparison. Ties (|difference| < 1e-12) are excluded
/// from the agreement check and counted: exact ties are the structural
/// eta = 1, tau_m = 0 case where the hybrid collapses to OMA bit for bit,
/// while near-ties would be knife-edge rounding accidents and must not
/// occur at all.
#[test]
fn predicate_agrees_with_rate_comparison() {
    let instances = random_instances(100_000, 0xc0411);
    let (exact_ties, near_ties): (usize, usize) = instances
        .par_iter()
        .map(|(params, gains)| {
            let hybrid = optimal_rate(params, gains);
            let oma = oma_rate(params, gains.g_n());
            let delta = hybrid - oma;
            if delta == 0.0 {
                // structural equality: full budget with the NOMA phase shut
                assert_eq!(params.eta(), 1.0);
                assert!(!hybrid_beats_oma(params, gains));
                return (1, 0);
            }
            if delta.abs() < 1e-12 {
                return (0, 1);
            }
            assert_eq!(
                hybrid_beats_oma(params, gains),
                hybrid > oma,
                "disagreement at params {params:?}, gains {gains:?}"
            );
            (0, 0)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    assert!(exact_ties > 0, "eta = 1 instances should produce exact ties");
    assert_eq!(near_ties, 0, "unexpected knife-edge ties");
}

/// A larger budget can only help: once the hybrid wins at some eta it keeps
/// winning for every larger eta on the same channel draw.
#[test]
fn win_region_grows_with_eta() {
    let etas = [0.5, 0.8, 1.0];
    for (params, gains) in random_instances(20_000, 0xe7a) {
        let mut previous_won = false;
        let mut previous_rate = f64::NEG_INFINITY;
        for eta in etas {
            let p = SystemParams::new(params.rho_n(), params.rho_m(), eta, params.r0()).unwrap();
            let won = hybrid_beats_oma(&p, &gains);
            assert!(
                won || !previous_won,
                "win lost when eta grew: {params:?} {gains:?}"
            );
            let rate = optimal_rate(&p, &gains);
            assert!(rate >= previous_rate - 1e-15);
            previous_won = won;
            previous_rate = rate;
        }
    }
}

proptest! {
    #[test]
    fn prop_predicate_agreement(
        rho_n_db in 0.0..40.0f64,
        rho_m_db in 0.0..40.0f64,
        eta in 0.05..=1.0f64,
        r0 in 0.1..3.0f64,
        g_m in 0.0..8.0f64,
        g_n in 0.0..8.0f64,
    ) {
        let params = SystemParams::new(
            10f64.powf(rho_n_db / 10.0),
            10f64.powf(rho_m_db / 10.0),
            eta,
            r0,
        ).unwrap();
        let gains = ChannelGains::new(g_m, g_n).unwrap();
        let hybrid = optimal_rate(&params, &gains);
        let oma = oma_rate(&params, gains.g_n());
        prop_assume!((hybrid - oma).abs() >= 1e-12);
        prop_assert_eq!(hybrid_beats_oma(&params, &gains), hybrid > oma);
    }
}
