//! Shared instance generator for the verification suites: powers uniform in
//! dB over [0, 40], budget and QoS targets cycled over the canonical levels,
//! gains exponential(1).

use hybrid_noma_core::{db_to_linear, ChannelGains, SystemParams};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ETAS: [f64; 3] = [0.5, 0.8, 1.0];
pub const R0S: [f64; 3] = [0.5, 1.0, 2.0];

pub fn random_instances(n: usize, seed: u64) -> Vec<(SystemParams, ChannelGains)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let rho_n = db_to_linear(40.0 * rng.random::<f64>());
            let rho_m = db_to_linear(40.0 * rng.random::<f64>());
            let eta = ETAS[rng.random_range(0..ETAS.len())];
            let r0 = R0S[rng.random_range(0..R0S.len())];
            let g_m = exp1(rng.random::<f64>());
            let g_n = exp1(rng.random::<f64>());
            (
                SystemParams::new(rho_n, rho_m, eta, r0).unwrap(),
                ChannelGains::new(g_m, g_n).unwrap(),
            )
        })
        .collect()
}

fn exp1(u: f64) -> f64 {
    -(-u).ln_1p()
}
