//! Channel simulation (encode, inject, decode, tally) and the regression
//! check of the worked examples.

mod paper;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{CodeConfig, DecodeStatus};

pub use paper::{verify_paper_examples, PaperCheck, PaperCheckReport, Verdict};

/// Identifier of the generator behind every simulation.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Trials drawn from one ChaCha8 stream; stream `k` serves chunk `k`.
pub const CHUNK: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("cannot inject {errors} errors into a code of length {n}")]
    TooManyErrors { errors: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ValueDistribution {
    #[default]
    UniformNonzero,
    /// `beta^(n l)`, the powers of `+-w`.
    PowersOfW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelSpec {
    pub error_count: usize,
    pub values: ValueDistribution,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub trials: u64,
    pub corrected: u64,
    pub miscorrected: u64,
    pub detected: u64,
    pub success_rate: Ratio<u64>,
    pub rng: &'static str,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    corrected: u64,
    miscorrected: u64,
    detected: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            corrected: self.corrected + o.corrected,
            miscorrected: self.miscorrected + o.miscorrected,
            detected: self.detected + o.detected,
        }
    }
}

fn run_chunk(cfg: &CodeConfig, spec: &ChannelSpec, chunk: u64, count: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(chunk);
    let p = cfg.p();
    let m = cfg.modulus();
    let mut tally = Tally::default();
    for _ in 0..count {
        let message: Vec<u64> = (0..cfg.dimension())
            .map(|_| rng.random_range(0..p))
            .collect();
        let sent = cfg
            .encode(&message)
            .expect("message has the code dimension");
        let mut received = sent.clone();
        for i in sample(&mut rng, cfg.len(), spec.error_count) {
            let e = match spec.values {
                ValueDistribution::UniformNonzero => rng.random_range(1..p),
                ValueDistribution::PowersOfW => {
                    cfg.beta_pow(cfg.n() * rng.random_range(0..cfg.M()))
                }
            };
            received[i] = m.add(received[i], e);
        }
        let result = cfg.decode(&received).expect("word has the code length");
        match (result.status, result.corrected) {
            (DecodeStatus::DetectedUncorrectable, _) => tally.detected += 1,
            (_, Some(c)) if c == sent => tally.corrected += 1,
            _ => tally.miscorrected += 1,
        }
    }
    tally
}

/// Deterministic in `spec.seed`, independent of the worker count.
pub fn simulate_channel(
    cfg: &CodeConfig,
    spec: &ChannelSpec,
    trials: u64,
) -> Result<SimulationReport, HarnessError> {
    if spec.error_count > cfg.len() {
        return Err(HarnessError::TooManyErrors {
            errors: spec.error_count,
            n: cfg.len(),
        });
    }
    let chunks = trials.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|k| run_chunk(cfg, spec, k, CHUNK.min(trials - k * CHUNK)))
        .reduce(Tally::default, Tally::merge);
    let success_rate = if trials == 0 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(tally.corrected, trials)
    };
    Ok(SimulationReport {
        trials,
        corrected: tally.corrected,
        miscorrected: tally.miscorrected,
        detected: tally.detected,
        success_rate,
        rng: RNG_ALGORITHM,
    })
}
