use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algorithms::{
    baseline_covdiv, baseline_quality, brute_force, fixed_length_solve, homogeneous_solve,
    presampled_greedy, sampling_greedy, Constraint, Draws, SamplerConfig,
};
use crate::error::{Error, Result};
use crate::functions::CoverageDiversityFn;
use crate::harness::stats::Summary;
use crate::harness::weights::{make_weights, UserTypeDistribution};
use crate::objective::{SetFunction, WeightProfile};
use crate::sequence::Sequence;
use crate::Bundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Sampling greedy; padded with a random backup set under the fixed constraint.
    SamplingGreedy,
    /// Presampled form of the sampling greedy (flexible only).
    Presampled,
    /// Sampling greedy plus backup, whatever the constraint.
    FixedLength,
    /// Best-of-two-branches solver for homogeneous bundles.
    Homogeneous,
    /// Diversity-only greedy baseline.
    CovDiv,
    /// Rating-sort baseline.
    Quality,
    /// Exhaustive optimum.
    BruteForce,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SamplingGreedy => "sg",
            Algorithm::Presampled => "presampled",
            Algorithm::FixedLength => "fixed",
            Algorithm::Homogeneous => "homog",
            Algorithm::CovDiv => "covdiv",
            Algorithm::Quality => "quality",
            Algorithm::BruteForce => "brute",
        }
    }

    pub fn is_randomized(self) -> bool {
        !matches!(self, Algorithm::Quality | Algorithm::BruteForce)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sg" => Algorithm::SamplingGreedy,
            "presampled" => Algorithm::Presampled,
            "fixed" => Algorithm::FixedLength,
            "homog" => Algorithm::Homogeneous,
            "covdiv" => Algorithm::CovDiv,
            "quality" => Algorithm::Quality,
            "brute" => Algorithm::BruteForce,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown algorithm '{other}' (expected sg|presampled|fixed|homog|covdiv|quality|brute)"
                )))
            }
        })
    }
}

/// Set-function side of a problem, before position weights are chosen.
#[derive(Clone)]
pub enum Oracles {
    Homogeneous(Arc<dyn SetFunction<f64>>),
    PerPosition(Vec<Arc<dyn SetFunction<f64>>>),
}

/// A problem instance the harness can re-weight: oracles plus the extra data
/// the baselines need.
#[derive(Clone)]
pub struct Instance {
    pub oracles: Oracles,
    pub coverage: Option<Arc<CoverageDiversityFn<f64>>>,
    pub ratings: Option<Vec<f64>>,
}

impl Instance {
    /// Homogeneous instance over a coverage-diversity function; ratings and the
    /// diversity term feed the baselines.
    pub fn coverage_diversity(f: CoverageDiversityFn<f64>) -> Self {
        let f = Arc::new(f);
        Instance {
            oracles: Oracles::Homogeneous(f.clone()),
            ratings: Some(f.ratings().to_vec()),
            coverage: Some(f),
        }
    }

    pub fn homogeneous(f: Arc<dyn SetFunction<f64>>) -> Self {
        Instance {
            oracles: Oracles::Homogeneous(f),
            coverage: None,
            ratings: None,
        }
    }

    pub fn n(&self) -> usize {
        match &self.oracles {
            Oracles::Homogeneous(f) => f.ground_size(),
            Oracles::PerPosition(fs) => fs.first().map_or(0, |f| f.ground_size()),
        }
    }

    /// Bundle with the given weights; per-position oracles are cut to `k`.
    pub fn bundle(&self, weights: WeightProfile<f64>) -> Result<Bundle> {
        match &self.oracles {
            Oracles::Homogeneous(f) => Bundle::homogeneous(f.clone(), weights),
            Oracles::PerPosition(fs) => {
                if weights.k() > fs.len() {
                    return Err(Error::OracleCount {
                        expected: weights.k(),
                        got: fs.len(),
                    });
                }
                Bundle::heterogeneous(fs[..weights.k()].to_vec(), weights)
            }
        }
    }
}

/// Runs one algorithm once.
pub fn solve(
    algorithm: Algorithm,
    constraint: Constraint,
    instance: &Instance,
    bundle: &Bundle,
    draws: &mut Draws,
) -> Result<Sequence> {
    match (algorithm, constraint) {
        (Algorithm::SamplingGreedy, Constraint::Flexible) => {
            Ok(sampling_greedy(bundle, draws)?.output)
        }
        (Algorithm::SamplingGreedy, Constraint::Fixed) | (Algorithm::FixedLength, _) => {
            Ok(fixed_length_solve(bundle, draws)?.sequence)
        }
        (Algorithm::Presampled, Constraint::Flexible) => presampled_greedy(bundle, draws),
        (Algorithm::Presampled, Constraint::Fixed) => Err(Error::InvalidParameter(
            "the presampled greedy only supports the flexible constraint".into(),
        )),
        (Algorithm::Homogeneous, _) => Ok(homogeneous_solve(bundle, draws)?.sequence),
        (Algorithm::CovDiv, _) => {
            let f = instance.coverage.as_ref().ok_or_else(|| {
                Error::InvalidParameter("covdiv needs a coverage-diversity instance".into())
            })?;
            baseline_covdiv(f, bundle, constraint, draws)
        }
        (Algorithm::Quality, _) => {
            let ratings = instance
                .ratings
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("quality needs item ratings".into()))?;
            baseline_quality(ratings, bundle.k())
        }
        (Algorithm::BruteForce, _) => Ok(brute_force(bundle, constraint)?.0),
    }
}

/// Seed for round `round` of a run with seed `base`.
///
/// SplitMix64 of `base + (round + 1)·γ`; distinct rounds get distinct seeds
/// because both steps are bijections on `u64`.
pub fn round_seed(base: u64, round: usize) -> u64 {
    let mut z = base.wrapping_add(
        (round as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub algorithms: Vec<Algorithm>,
    pub distributions: Vec<UserTypeDistribution>,
    pub constraint: Constraint,
    pub k: usize,
    pub p: f64,
    pub rounds: usize,
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundResult {
    pub round: usize,
    pub seed: u64,
    pub value: f64,
    pub length: usize,
    pub oracle_calls: u64,
}

/// Aggregate for one (algorithm, distribution) pair.
#[derive(Debug, Clone)]
pub struct CellStats {
    pub algorithm: Algorithm,
    pub distribution: UserTypeDistribution,
    pub constraint: Constraint,
    pub rounds: Vec<RoundResult>,
    pub summary: Summary,
    pub mean_length: f64,
    pub mean_oracle_calls: f64,
    /// Not part of equality: it is the one nondeterministic field.
    pub wall_time: Duration,
}

impl PartialEq for CellStats {
    fn eq(&self, other: &Self) -> bool {
        self.algorithm == other.algorithm
            && self.distribution == other.distribution
            && self.constraint == other.constraint
            && self.rounds == other.rounds
            && self.summary == other.summary
            && self.mean_length == other.mean_length
            && self.mean_oracle_calls == other.mean_oracle_calls
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub cells: Vec<CellStats>,
}

impl RunStats {
    pub fn cell(
        &self,
        algorithm: Algorithm,
        distribution: &UserTypeDistribution,
        constraint: Constraint,
    ) -> Option<&CellStats> {
        self.cells.iter().find(|c| {
            c.algorithm == algorithm
                && &c.distribution == distribution
                && c.constraint == constraint
        })
    }
}

/// Runs one algorithm for `rounds` seeded rounds on a fixed bundle.
pub fn run_rounds(
    algorithm: Algorithm,
    constraint: Constraint,
    instance: &Instance,
    bundle: &Bundle,
    p: f64,
    base_seed: u64,
    rounds: usize,
) -> Result<Vec<RoundResult>> {
    run_seeded(bundle, p, base_seed, rounds, |b, d| {
        solve(algorithm, constraint, instance, b, d)
    })
}

/// Runs `solver` once per round with that round's seed and a fresh call counter.
///
/// Rounds run in parallel; results come back in round order, so the aggregate
/// is identical to a sequential run.
pub fn run_seeded<F>(
    bundle: &Bundle,
    p: f64,
    base_seed: u64,
    rounds: usize,
    solver: F,
) -> Result<Vec<RoundResult>>
where
    F: Fn(&Bundle, &mut Draws) -> Result<Sequence> + Sync,
{
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be at least 1".into()));
    }
    SamplerConfig::new(p, base_seed)?;
    (0..rounds)
        .into_par_iter()
        .map(|round| {
            let seed = round_seed(base_seed, round);
            let local = bundle.with_fresh_counter();
            let run = || -> Result<RoundResult> {
                let cfg = SamplerConfig::new(p, seed)?;
                let seq = solver(&local, &mut Draws::new(&cfg))?;
                let calls = local.oracle_calls();
                let value = local.evaluate(&seq)?;
                Ok(RoundResult {
                    round,
                    seed,
                    value,
                    length: seq.len(),
                    oracle_calls: calls,
                })
            };
            run().map_err(|e| Error::Round {
                round,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Every algorithm under every distribution, `spec.rounds` times each.
pub fn run_monte_carlo(instance: &Instance, spec: &ExperimentSpec) -> Result<RunStats> {
    SamplerConfig::new(spec.p, spec.base_seed)?;
    let mut cells = Vec::new();
    for dist in &spec.distributions {
        let bundle = instance.bundle(make_weights(dist, spec.k)?)?;
        for &algorithm in &spec.algorithms {
            let start = Instant::now();
            let rounds = run_rounds(
                algorithm,
                spec.constraint,
                instance,
                &bundle,
                spec.p,
                spec.base_seed,
                spec.rounds,
            )?;
            let wall_time = start.elapsed();
            let values: Vec<f64> = rounds.iter().map(|r| r.value).collect();
            let count = rounds.len() as f64;
            cells.push(CellStats {
                algorithm,
                distribution: dist.clone(),
                constraint: spec.constraint,
                summary: Summary::of(&values),
                mean_length: rounds.iter().map(|r| r.length as f64).sum::<f64>() / count,
                mean_oracle_calls: rounds.iter().map(|r| r.oracle_calls as f64).sum::<f64>()
                    / count,
                rounds,
                wall_time,
            });
        }
    }
    Ok(RunStats { cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::tiny_instance;

    fn tiny() -> Instance {
        let mut inst = Instance::homogeneous(Arc::new(tiny_instance::<f64>()));
        inst.ratings = Some(vec![3.0, 2.0, 2.0]);
        inst
    }

    fn spec(algorithms: Vec<Algorithm>, rounds: usize) -> ExperimentSpec {
        ExperimentSpec {
            algorithms,
            distributions: vec![UserTypeDistribution::Uniform],
            constraint: Constraint::Flexible,
            k: 2,
            p: 0.5,
            rounds,
            base_seed: 17,
        }
    }

    #[test]
    fn single_round_equals_single_run() {
        let stats = run_monte_carlo(&tiny(), &spec(vec![Algorithm::SamplingGreedy], 1)).unwrap();
        let cell = &stats.cells[0];
        let bundle = tiny()
            .bundle(make_weights(&UserTypeDistribution::Uniform, 2).unwrap())
            .unwrap();
        let cfg = SamplerConfig::new(0.5, round_seed(17, 0)).unwrap();
        let seq = sampling_greedy(&bundle, &mut Draws::new(&cfg))
            .unwrap()
            .output;
        assert_eq!(cell.summary.mean, bundle.evaluate(&seq).unwrap());
        assert_eq!(cell.summary.std, 0.0);
    }

    #[test]
    fn deterministic_algorithm_has_zero_spread() {
        let stats = run_monte_carlo(&tiny(), &spec(vec![Algorithm::Quality], 25)).unwrap();
        assert_eq!(stats.cells[0].summary.std, 0.0);
    }

    #[test]
    fn reruns_are_identical() {
        let s = spec(vec![Algorithm::SamplingGreedy, Algorithm::FixedLength], 200);
        assert_eq!(
            run_monte_carlo(&tiny(), &s).unwrap(),
            run_monte_carlo(&tiny(), &s).unwrap()
        );
    }

    #[test]
    fn round_seeds_are_distinct() {
        let mut seeds: Vec<u64> = (0..10_000).map(|r| round_seed(5, r)).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), 10_000);
    }

    #[test]
    fn round_order_does_not_change_aggregates() {
        let s = spec(vec![Algorithm::SamplingGreedy], 300);
        let stats = run_monte_carlo(&tiny(), &s).unwrap();
        let mut values: Vec<f64> = stats.cells[0].rounds.iter().map(|r| r.value).collect();
        values.reverse();
        let reversed = Summary::of(&values);
        assert!((reversed.mean - stats.cells[0].summary.mean).abs() < 1e-12);
    }

    #[test]
    fn solver_errors_carry_the_round() {
        let err = run_monte_carlo(&tiny(), &spec(vec![Algorithm::CovDiv], 3)).unwrap_err();
        assert!(matches!(err, Error::Round { round: 0, .. }));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [
            Algorithm::SamplingGreedy,
            Algorithm::Presampled,
            Algorithm::FixedLength,
            Algorithm::Homogeneous,
            Algorithm::CovDiv,
            Algorithm::Quality,
            Algorithm::BruteForce,
        ] {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
    }
}
