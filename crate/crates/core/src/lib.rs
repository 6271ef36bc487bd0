//! Numerical toolkit for a two-user hybrid NOMA uplink.
//!
//! A secondary user may transmit both inside the primary user's time slot
//! (NOMA phase, capped by what the primary's decoder can absorb as
//! interference) and in its own slot (OMA phase), under a total energy
//! budget below what plain OMA spends. This crate provides:
//!
//! * [`model`] — system parameters, channel realizations, derived
//!   thresholds, and the deterministic Rayleigh-fading sampler;
//! * [`allocator`] — the closed-form optimal power split across the two
//!   phases plus a brute-force grid oracle;
//! * [`comparator`] — the OMA baseline, closed-form win conditions, and
//!   energy accounting;
//! * [`analytic`] — exact (quadrature), asymptotic, and limiting
//!   expressions for the probability that the hybrid scheme fails to beat
//!   OMA;
//! * [`montecarlo`] — seeded, chunk-parallel estimators that cross-check
//!   every analytic result.
//!
//! Analytic formulas and simulation never share a code path: each public
//! quantity is computable two independent ways, and the test suites pin
//! them against each other.

pub mod allocator;
pub mod analytic;
pub mod comparator;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod quad;

pub use allocator::{grid_oracle, optimal_rate, optimal_split, split_rate, PowerSplit};
pub use analytic::{
    p_breakdown, p_wn_asymptotic, p_wn_exact, p_wn_limit_fixed_rho_m, p_wn_limit_fixed_rho_n,
    ProbabilityBreakdown,
};
pub use comparator::{compare, energy, hybrid_beats_oma, oma_rate, ComparisonOutcome, Scheme};
pub use error::{Error, Result};
pub use model::{
    db_to_linear, epsilon0, linear_to_db, rate_bpcu, tau_m, ChannelGains, GainSampler, GainStream,
    SystemParams,
};
pub use montecarlo::{
    ergodic_rates, estimate_case_probs, estimate_p_wn, CaseProbEstimates, ErgodicRates, McConfig,
    McEstimate,
};
pub use quad::{integrate, QuadratureConfig};
