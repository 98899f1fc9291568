//! Solvers and exact oracles.

mod baselines;
mod brute;
mod draws;
mod fixed;
mod greedy;
mod homogeneous;

use std::fmt;
use std::str::FromStr;

pub use baselines::{baseline_covdiv, baseline_quality};
pub use brute::{brute_force, enumeration_size, MAX_BRUTE_FORCE_ITEMS, MAX_BRUTE_FORCE_SEQUENCES};
pub use draws::{approximation_factor, optimal_p, CoinStream, Draws, SamplerConfig};
pub use fixed::{fixed_length_solve, FixedLengthSolution};
pub use greedy::{greedy_on_pool, presampled_greedy, sampling_greedy, Consideration, GreedyTrace};
pub use homogeneous::{
    assemble_second_half, complement_greedy, half_split, homogeneous_first_half, homogeneous_solve,
    prefix_complement_sample, second_half_solve, Branch, HomogeneousSolution,
};

/// Feasibility: at most `k` items, or exactly `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Flexible,
    Fixed,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Flexible => "flexible",
            Constraint::Fixed => "fixed",
        })
    }
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flexible" => Ok(Constraint::Flexible),
            "fixed" => Ok(Constraint::Fixed),
            other => Err(format!(
                "unknown constraint '{other}' (expected flexible|fixed)"
            )),
        }
    }
}
