//! Seeded randomness for the solvers, with hooks to force outcomes in tests.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sequence::ItemId;

/// `p = (√3 − 1) / 2`, the coin probability that maximizes `p(1−p)/(2p+1)`.
pub fn optimal_p() -> f64 {
    (3f64.sqrt() - 1.0) / 2.0
}

/// `p(1−p)/(2p+1)`: the expected-approximation factor of the sampling greedy.
pub fn approximation_factor(p: f64) -> f64 {
    p * (1.0 - p) / (2.0 * p + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub p: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Self { p, seed })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            p: optimal_p(),
            seed: 0,
        }
    }
}

/// Source of Bernoulli(p) coin outcomes.
#[derive(Debug, Clone)]
pub enum CoinStream {
    Seeded {
        p: f64,
        rng: ChaCha8Rng,
        drawn: usize,
    },
    Forced {
        bits: Vec<bool>,
        drawn: usize,
    },
}

impl CoinStream {
    pub fn seeded(p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(0);
        CoinStream::Seeded { p, rng, drawn: 0 }
    }

    pub fn forced(bits: Vec<bool>) -> Self {
        CoinStream::Forced { bits, drawn: 0 }
    }

    pub fn toss(&mut self) -> Result<bool> {
        match self {
            CoinStream::Seeded { p, rng, drawn } => {
                *drawn += 1;
                Ok(rng.gen_bool(*p))
            }
            CoinStream::Forced { bits, drawn } => {
                let bit = bits
                    .get(*drawn)
                    .copied()
                    .ok_or(Error::CoinStreamExhausted(*drawn))?;
                *drawn += 1;
                Ok(bit)
            }
        }
    }

    pub fn drawn(&self) -> usize {
        match self {
            CoinStream::Seeded { drawn, .. } | CoinStream::Forced { drawn, .. } => *drawn,
        }
    }
}

/// All randomness one solver run consumes: coin tosses and backup sets.
///
/// Coins and backups come from independent streams of the same seed, so
/// forcing one does not shift the other.
#[derive(Debug, Clone)]
pub struct Draws {
    coins: CoinStream,
    backup_rng: ChaCha8Rng,
    forced_backups: VecDeque<Vec<ItemId>>,
}

impl Draws {
    pub fn new(cfg: &SamplerConfig) -> Self {
        let mut backup_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        backup_rng.set_stream(1);
        Self {
            coins: CoinStream::seeded(cfg.p, cfg.seed),
            backup_rng,
            forced_backups: VecDeque::new(),
        }
    }

    /// Replaces the coin source with a fixed list of outcomes.
    pub fn with_forced_coins(mut self, bits: Vec<bool>) -> Self {
        self.coins = CoinStream::forced(bits);
        self
    }

    /// Queues a backup set to return instead of the next random draw.
    pub fn with_forced_backup(mut self, backup: Vec<ItemId>) -> Self {
        self.forced_backups.push_back(backup);
        self
    }

    pub fn toss(&mut self) -> Result<bool> {
        self.coins.toss()
    }

    pub fn coins_drawn(&self) -> usize {
        self.coins.drawn()
    }

    /// Uniform `m`-subset of `candidates`, in draw order (a partial
    /// Fisher-Yates shuffle), so any fixed slice of it is uniform too.
    pub fn backup(&mut self, candidates: &[ItemId], m: usize) -> Result<Vec<ItemId>> {
        if let Some(forced) = self.forced_backups.pop_front() {
            let mut seen = Vec::with_capacity(forced.len());
            let valid = forced.len() == m
                && forced.iter().all(|i| {
                    let fresh = !seen.contains(i);
                    seen.push(*i);
                    fresh && candidates.contains(i)
                });
            if !valid {
                return Err(Error::InvalidForcedBackup {
                    forced,
                    expected: m,
                    candidates: candidates.to_vec(),
                });
            }
            return Ok(forced);
        }
        if m > candidates.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot draw {m} backup items from {} candidates",
                candidates.len()
            )));
        }
        let mut pool = candidates.to_vec();
        for i in 0..m {
            let j = self.backup_rng.gen_range(i..pool.len());
            pool.swap(i, j);
        }
        pool.truncate(m);
        Ok(pool)
    }
}
