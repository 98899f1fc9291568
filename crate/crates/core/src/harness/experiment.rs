use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::Constraint;
use crate::error::{Error, Result};
use crate::functions::{auto_scaled_beta, similarity_from_tags, CoverageDiversityFn};
use crate::harness::monte_carlo::{run_monte_carlo, Algorithm, ExperimentSpec, Instance, RunStats};
use crate::harness::weights::UserTypeDistribution;

/// Redundancy weight used for the recommendation experiments.
pub const DEFAULT_ETA: f64 = 35.0;

/// Raw data behind a synthetic recommendation instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticData {
    /// Uniform on `[0, 5]`.
    pub ratings: Vec<f64>,
    /// `n × d` tag relevances; each entry is nonzero with probability `density`
    /// and then uniform on `(0, 1]`.
    pub tags: Vec<Vec<f64>>,
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
}

impl SyntheticData {
    pub fn generate(n: usize, d: usize, density: f64, eta: f64, seed: u64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter(format!(
                "need n, d > 0, got n = {n}, d = {d}"
            )));
        }
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidParameter(format!(
                "tag density {density} is outside [0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ratings: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=5.0)).collect();
        let tags: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            1.0 - rng.gen::<f64>()
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        let similarity = similarity_from_tags(&tags)?;
        let beta = auto_scaled_beta(&ratings, &similarity);
        Ok(SyntheticData {
            ratings,
            tags,
            alpha: 1.0,
            beta,
            eta,
        })
    }

    pub fn build(&self) -> Result<CoverageDiversityFn<f64>> {
        CoverageDiversityFn::new(
            self.ratings.clone(),
            similarity_from_tags(&self.tags)?,
            self.alpha,
            self.beta,
            self.eta,
        )
    }
}

/// SG, COVDIV and QUALITY under every distribution, flexible then fixed.
pub fn comparative_experiment(
    f: CoverageDiversityFn<f64>,
    distributions: &[UserTypeDistribution],
    k: usize,
    p: f64,
    rounds: usize,
    base_seed: u64,
) -> Result<RunStats> {
    let instance = Instance::coverage_diversity(f);
    let mut cells = Vec::new();
    for constraint in [Constraint::Flexible, Constraint::Fixed] {
        let spec = ExperimentSpec {
            algorithms: vec![
                Algorithm::SamplingGreedy,
                Algorithm::CovDiv,
                Algorithm::Quality,
            ],
            distributions: distributions.to_vec(),
            constraint,
            k,
            p,
            rounds,
            base_seed,
        };
        cells.extend(run_monte_carlo(&instance, &spec)?.cells);
    }
    Ok(RunStats { cells })
}
