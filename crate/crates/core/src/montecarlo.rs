//! Seeded Monte Carlo estimators over the fading distribution.
//!
//! Work is split into fixed chunks of sample indices. Each chunk reads its
//! draws straight from the counter-based [`GainSampler`], accumulates with
//! compensated summation, and the per-chunk partials are combined in chunk
//! order — so estimates are bit-identical for a given `(params, config)`
//! no matter how many rayon workers are active.

use crate::allocator::optimal_rate;
use crate::comparator::{hybrid_beats_oma, oma_rate};
use crate::error::{Error, Result};
use crate::model::{tau_m, ChannelGains, GainSampler, SystemParams};
use rayon::prelude::*;

/// Sample budget, seed, and chunking for one estimator run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    samples: u64,
    seed: u64,
    chunk_size: u64,
}

impl McConfig {
    /// Default chunk of 2^16 samples per work item.
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        Self::with_chunk_size(samples, seed, 1 << 16)
    }

    pub fn with_chunk_size(samples: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        if samples < 1 {
            return Err(Error::InvalidParameter {
                name: "samples",
                value: samples as f64,
                constraint: ">= 1",
            });
        }
        if chunk_size < 1 {
            return Err(Error::InvalidParameter {
                name: "chunk_size",
                value: chunk_size as f64,
                constraint: ">= 1",
            });
        }
        Ok(Self {
            samples,
            seed,
            chunk_size,
        })
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }

    /// Disjoint index ranges `[start, end)` covering `0..samples`.
    fn chunks(&self) -> Vec<(u64, u64)> {
        let n_chunks = self.samples.div_ceil(self.chunk_size);
        (0..n_chunks)
            .map(|c| {
                let start = c * self.chunk_size;
                (start, (start + self.chunk_size).min(self.samples))
            })
            .collect()
    }
}

/// A Monte Carlo mean with its standard error and sample count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub n: u64,
}

impl McEstimate {
    /// Bernoulli estimate from an event count.
    fn from_count(count: u64, n: u64) -> Self {
        let mean = count as f64 / n as f64;
        Self {
            mean,
            std_err: (mean * (1.0 - mean) / n as f64).sqrt(),
            n,
        }
    }

    /// Sample-variance estimate from compensated sums of values and squares.
    fn from_sums(sum: f64, sum_sq: f64, n: u64) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let std_err = if n > 1 {
            let var = ((sum_sq - sum * sum / nf) / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        } else {
            0.0
        };
        Self { mean, std_err, n }
    }
}

/// Bernoulli estimates of the five losing events, their complement, and the
/// total loss frequency. Counted on a single stream, the six events
/// partition every draw, so `total` is exactly the sum of the five
/// component counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseProbEstimates {
    pub p1: McEstimate,
    pub p2_1: McEstimate,
    pub p2_2: McEstimate,
    pub p3_1: McEstimate,
    pub p3_2: McEstimate,
    /// The winning event (strict hybrid advantage).
    pub win: McEstimate,
    /// All losing events combined.
    pub total: McEstimate,
}

/// Paired ergodic-rate estimates over a common gain stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgodicRates {
    pub hybrid: McEstimate,
    pub oma: McEstimate,
    /// Per-draw difference `hybrid - oma`; pairing cancels most of the
    /// channel variance, which is what makes crossover tests sharp.
    pub gap: McEstimate,
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn map_chunks<T, F>(cfg: &McConfig, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    cfg.chunks()
        .into_par_iter()
        .map(|(start, end)| work(start, end))
        .collect()
}

/// Estimates `Pr(optimal hybrid rate <= OMA rate)` by direct simulation of
/// the defining event (non-strict comparison, so ties count as losses).
pub fn estimate_p_wn(params: &SystemParams, cfg: &McConfig) -> McEstimate {
    let sampler = GainSampler::new(cfg.seed());
    let counts = map_chunks(cfg, |start, end| {
        let mut count = 0u64;
        for i in start..end {
            let gains = sampler.gains_at(i);
            if optimal_rate(params, &gains) <= oma_rate(params, gains.g_n()) {
                count += 1;
            }
        }
        count
    });
    McEstimate::from_count(counts.iter().sum(), cfg.samples())
}

/// The six disjoint outcomes of one draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CaseEvent {
    P1,
    P21,
    P22,
    P31,
    P32,
    Win,
}

/// Classifies a draw by the win predicate and, on a loss, by the case
/// split of the win conditions. The chain is exhaustive: a losing draw in
/// the unconstrained case necessarily has its gain under the win threshold,
/// and likewise in the constrained case.
fn classify(params: &SystemParams, gains: &ChannelGains) -> CaseEvent {
    if hybrid_beats_oma(params, gains) {
        return CaseEvent::Win;
    }
    let eta = params.eta();
    let tau = tau_m(params, gains.g_m());
    if tau == 0.0 {
        return CaseEvent::P1;
    }
    let ratio = tau / (params.rho_n() * gains.g_n());
    if ratio >= eta / 2.0 {
        // tau_m >= 2(1-eta)/eta splits the unconstrained-case losses,
        // written on the g_m scale
        if gains.g_m() > (2.0 - eta) * params.epsilon0() / (eta * params.rho_m()) {
            CaseEvent::P21
        } else {
            CaseEvent::P22
        }
    } else if eta + tau * eta - 1.0 <= 0.0 {
        CaseEvent::P31
    } else {
        CaseEvent::P32
    }
}

/// Per-event Bernoulli estimates for the case decomposition, all counted on
/// the same stream as [`estimate_p_wn`].
pub fn estimate_case_probs(params: &SystemParams, cfg: &McConfig) -> CaseProbEstimates {
    let sampler = GainSampler::new(cfg.seed());
    let counts = map_chunks(cfg, |start, end| {
        let mut counts = [0u64; 6];
        for i in start..end {
            let gains = sampler.gains_at(i);
            let slot = match classify(params, &gains) {
                CaseEvent::P1 => 0,
                CaseEvent::P21 => 1,
                CaseEvent::P22 => 2,
                CaseEvent::P31 => 3,
                CaseEvent::P32 => 4,
                CaseEvent::Win => 5,
            };
            counts[slot] += 1;
        }
        counts
    });
    let mut total = [0u64; 6];
    for chunk in counts {
        for (acc, c) in total.iter_mut().zip(chunk) {
            *acc += c;
        }
    }
    let n = cfg.samples();
    let lost = total[..5].iter().sum::<u64>();
    CaseProbEstimates {
        p1: McEstimate::from_count(total[0], n),
        p2_1: McEstimate::from_count(total[1], n),
        p2_2: McEstimate::from_count(total[2], n),
        p3_1: McEstimate::from_count(total[3], n),
        p3_2: McEstimate::from_count(total[4], n),
        win: McEstimate::from_count(total[5], n),
        total: McEstimate::from_count(lost, n),
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct RatePartials {
    hybrid: Kahan,
    hybrid_sq: Kahan,
    oma: Kahan,
    oma_sq: Kahan,
    gap: Kahan,
    gap_sq: Kahan,
}

/// Ergodic (fading-averaged) rates of both schemes with paired sampling:
/// each draw feeds the same gains to the hybrid optimizer and the OMA
/// baseline.
pub fn ergodic_rates(params: &SystemParams, cfg: &McConfig) -> ErgodicRates {
    let sampler = GainSampler::new(cfg.seed());
    let partials = map_chunks(cfg, |start, end| {
        let mut p = RatePartials::default();
        for i in start..end {
            let gains = sampler.gains_at(i);
            let hybrid = optimal_rate(params, &gains);
            let oma = oma_rate(params, gains.g_n());
            let gap = hybrid - oma;
            p.hybrid.add(hybrid);
            p.hybrid_sq.add(hybrid * hybrid);
            p.oma.add(oma);
            p.oma_sq.add(oma * oma);
            p.gap.add(gap);
            p.gap_sq.add(gap * gap);
        }
        p
    });

    // fixed chunk order keeps the reduction worker-count independent
    let mut sums = [0.0f64; 6];
    for p in &partials {
        for (acc, v) in sums.iter_mut().zip([
            p.hybrid.total(),
            p.hybrid_sq.total(),
            p.oma.total(),
            p.oma_sq.total(),
            p.gap.total(),
            p.gap_sq.total(),
        ]) {
            *acc += v;
        }
    }
    let n = cfg.samples();
    ErgodicRates {
        hybrid: McEstimate::from_sums(sums[0], sums[1], n),
        oma: McEstimate::from_sums(sums[2], sums[3], n),
        gap: McEstimate::from_sums(sums[4], sums[5], n),
    }
}
