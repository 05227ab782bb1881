//! Monte Carlo estimates of coin-event probabilities.
//!
//! Sample `i` is drawn from a ChaCha8 stream keyed by `(seed, i)`, so the
//! result does not depend on how samples are split across threads. Bit `j`
//! of the sampled word is the value at index `j + 1`, with 1 meaning heads.

use num::{ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::events::{CoinEvent, CoinPoint, Toss};
use crate::measures::kolmogorov_measure;
use crate::nafield::Rational;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EstimateError {
    #[error("horizon {horizon} is smaller than the largest index {max_index} used by the event")]
    HorizonTooSmall { horizon: u32, max_index: u32 },
    #[error("sample count must be at least 1")]
    NoSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateConfig {
    pub seed: u64,
    pub samples: u64,
    pub horizon: u32,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 100_000,
            horizon: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub samples: u64,
    pub hits: u64,
    /// Samples agreeing with an exceptional point on every index up to the
    /// horizon. They are scored by the base set.
    pub ambiguous: u64,
    pub frequency: f64,
    pub standard_part: Rational,
    pub gap: f64,
    /// Three binomial standard deviations.
    pub half_width: f64,
}

impl Estimate {
    pub fn within_bound(&self) -> bool {
        self.gap <= self.half_width
    }
}

struct Sample {
    words: Vec<u64>,
}

impl Sample {
    fn draw(seed: u64, index: u64, horizon: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let n = (horizon as usize).div_ceil(64);
        Sample {
            words: (0..n).map(|_| rng.next_u64()).collect(),
        }
    }

    fn at(&self, index: u32) -> Toss {
        let j = (index - 1) as usize;
        if self.words[j / 64] >> (j % 64) & 1 == 1 {
            Toss::H
        } else {
            Toss::T
        }
    }

    fn agrees_with(&self, p: &CoinPoint, horizon: u32) -> bool {
        (1..=horizon).all(|i| self.at(i) == p.at(i))
    }
}

pub fn estimate(event: &CoinEvent, config: &EstimateConfig) -> Result<Estimate, EstimateError> {
    if config.samples == 0 {
        return Err(EstimateError::NoSamples);
    }
    if config.horizon < event.max_index() {
        return Err(EstimateError::HorizonTooSmall {
            horizon: config.horizon,
            max_index: event.max_index(),
        });
    }
    let horizon = config.horizon.max(1);
    let exceptional: Vec<&CoinPoint> = event.plus().iter().chain(event.minus()).collect();
    let chunks = config.samples.div_ceil(CHUNK);
    let (hits, ambiguous) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = (0, 0);
            for i in c * CHUNK..((c + 1) * CHUNK).min(config.samples) {
                let s = Sample::draw(config.seed, i, horizon);
                tally.0 += event.base_contains_assignment(|j| s.at(j)) as u64;
                tally.1 += exceptional.iter().any(|p| s.agrees_with(p, horizon)) as u64;
            }
            tally
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let standard_part = kolmogorov_measure(event)
        .as_finite()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let p = standard_part.to_f64().unwrap_or(0.0);
    let n = config.samples as f64;
    let frequency = hits as f64 / n;
    Ok(Estimate {
        samples: config.samples,
        hits,
        ambiguous,
        frequency,
        gap: (frequency - p).abs(),
        half_width: 3.0 * (p * (1.0 - p) / n).sqrt(),
        standard_part,
    })
}
