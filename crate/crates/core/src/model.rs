//! System parameters, channel realizations, and the shared fading sampler.
//!
//! Powers are linear and noise-normalized (the background noise power is
//! fixed at 1), rates are in bits per channel use (base-2 logarithms), and
//! fading magnitudes `|h|^2` are unit-mean exponentials, i.e. Rayleigh
//! amplitude fading. Every estimator in this crate consumes these types.

use crate::error::{Error, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Transmit powers, energy budget, and QoS target for the two-user uplink.
///
/// `U_m` is the QoS user with target rate `r0`; `U_n` is the rate-hungry user
/// that may additionally transmit inside `U_m`'s slot. `eta` caps the total
/// power budget of the hybrid scheme relative to plain OMA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    rho_n: f64,
    rho_m: f64,
    eta: f64,
    r0: f64,
    slot_t: f64,
    eps0: f64,
}

impl SystemParams {
    /// Builds a parameter set with unit slot duration.
    ///
    /// Rejects `rho_n <= 0`, `rho_m <= 0`, `eta` outside `(0, 1]`, and
    /// `r0 <= 0`.
    pub fn new(rho_n: f64, rho_m: f64, eta: f64, r0: f64) -> Result<Self> {
        Self::with_slot(rho_n, rho_m, eta, r0, 1.0)
    }

    /// Builds a parameter set with an explicit slot duration in seconds.
    pub fn with_slot(rho_n: f64, rho_m: f64, eta: f64, r0: f64, slot_t: f64) -> Result<Self> {
        check_positive("rho_n", rho_n)?;
        check_positive("rho_m", rho_m)?;
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                constraint: "0 < eta <= 1",
            });
        }
        check_positive("r0", r0)?;
        check_positive("slot_t", slot_t)?;
        Ok(Self {
            rho_n,
            rho_m,
            eta,
            r0,
            slot_t,
            eps0: epsilon0(r0)?,
        })
    }

    pub fn rho_n(&self) -> f64 {
        self.rho_n
    }

    pub fn rho_m(&self) -> f64 {
        self.rho_m
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn slot_t(&self) -> f64 {
        self.slot_t
    }

    /// The decoding SNR threshold `2^r0 - 1`, precomputed at construction.
    pub fn epsilon0(&self) -> f64 {
        self.eps0
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "> 0 and finite",
        })
    }
}

/// One realization of the squared fading magnitudes `(|h_m|^2, |h_n|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    g_m: f64,
    g_n: f64,
}

impl ChannelGains {
    /// Validates `g_m >= 0` and `g_n >= 0`.
    pub fn new(g_m: f64, g_n: f64) -> Result<Self> {
        for (name, value) in [("g_m", g_m), ("g_n", g_n)] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint: ">= 0 and finite",
                });
            }
        }
        Ok(Self { g_m, g_n })
    }

    pub(crate) fn new_unchecked(g_m: f64, g_n: f64) -> Self {
        Self { g_m, g_n }
    }

    pub fn g_m(&self) -> f64 {
        self.g_m
    }

    pub fn g_n(&self) -> f64 {
        self.g_n
    }
}

/// SNR threshold `2^r0 - 1` for a target rate of `r0` BPCU.
pub fn epsilon0(r0: f64) -> Result<f64> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r0",
            value: r0,
            constraint: "> 0 and finite",
        });
    }
    Ok(r0.exp2() - 1.0)
}

/// Interference budget `tau_m = max{0, rho_m * g_m / eps0 - 1}`.
///
/// This is the largest interference power under which `U_m`'s signal still
/// decodes at rate `r0`; it is 0 exactly when `rho_m * g_m <= eps0`.
pub fn tau_m(params: &SystemParams, g_m: f64) -> f64 {
    debug_assert!(g_m >= 0.0);
    (params.rho_m * g_m / params.eps0 - 1.0).max(0.0)
}

/// Shannon rate `log2(1 + snr)` in bits per channel use.
pub fn rate_bpcu(snr: f64) -> f64 {
    snr.ln_1p() / std::f64::consts::LN_2
}

/// Converts a dB value to linear scale.
pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

/// Converts a linear value to dB. Fails for non-positive input.
pub fn linear_to_db(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            constraint: "> 0 and finite",
        });
    }
    Ok(10.0 * x.log10())
}

/// Counter-based sampler of independent exponential(1) gain pairs.
///
/// Sample `i` is a pure function of `(seed, i)`: each index selects its own
/// ChaCha stream, so any chunking of the index range reproduces the same
/// draws, which is what makes the parallel Monte Carlo estimators bit-exact
/// regardless of worker count.
#[derive(Debug, Clone)]
pub struct GainSampler {
    key: [u8; 32],
}

impl GainSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            key: ChaCha8Rng::seed_from_u64(seed).get_seed(),
        }
    }

    /// The gain pair at stream position `index`.
    pub fn gains_at(&self, index: u64) -> ChannelGains {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        let g_m = exp1(rng.random::<f64>());
        let g_n = exp1(rng.random::<f64>());
        ChannelGains::new_unchecked(g_m, g_n)
    }

    /// Sequential view starting at index 0.
    pub fn stream(&self) -> GainStream {
        GainStream {
            sampler: self.clone(),
            index: 0,
        }
    }
}

/// Inverse-CDF exponential(1) draw from a uniform `u` in `[0, 1)`.
///
/// Computed as `-ln(1 - u)` through `ln_1p` so the small-gain tail keeps
/// full precision.
fn exp1(u: f64) -> f64 {
    -(-u).ln_1p()
}

/// Stateful iterator over a [`GainSampler`]'s stream.
#[derive(Debug, Clone)]
pub struct GainStream {
    sampler: GainSampler,
    index: u64,
}

impl GainStream {
    /// Draws the next gain pair and advances the stream deterministically.
    pub fn sample_gains(&mut self) -> ChannelGains {
        let gains = self.sampler.gains_at(self.index);
        self.index += 1;
        gains
    }

    /// Next stream position to be drawn.
    pub fn position(&self) -> u64 {
        self.index
    }
}

impl Iterator for GainStream {
    type Item = ChannelGains;

    fn next(&mut self) -> Option<ChannelGains> {
        Some(self.sample_gains())
    }
}
