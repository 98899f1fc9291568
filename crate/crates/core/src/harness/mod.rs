//! Weight profiles, seeded Monte Carlo runs and approximation-bound checks.

mod bounds;
mod experiment;
mod monte_carlo;
mod stats;
mod weights;

pub use bounds::{bound_check, BoundMode, BoundVerdict};
pub use experiment::{comparative_experiment, SyntheticData, DEFAULT_ETA};
pub use monte_carlo::{
    round_seed, run_monte_carlo, run_rounds, run_seeded, solve, Algorithm, CellStats,
    ExperimentSpec, Instance, Oracles, RoundResult, RunStats,
};
pub use stats::{tally, two_sample_chi_square, ChiSquareTest, Summary};
pub use weights::{make_weights, UserTypeDistribution};
