//! Sequential submodular maximization with non-monotone utilities.
//!
//! A solution is an ordered, duplicate-free sequence `π` over a ground set
//! `V = {0, .., n-1}`. Its value is
//!
//! ```text
//! F(π) = Σ_{j=1..k} λ_j · f_j(π_[j])
//! ```
//!
//! where `π_[j]` is the first `j` items of `π` and each `f_j` is a
//! (possibly non-monotone) submodular set function. The crate provides:
//!
//! - [`objective`]: the weighted sequential objective and marginal gains,
//! - [`functions`]: built-in set-function families and the complement transform,
//! - [`algorithms`]: randomized greedy solvers, exact enumeration and baselines,
//! - [`harness`]: weight profiles, seeded Monte Carlo runs and bound checks.
//!
//! Core math is generic over a [`Scalar`]; [`Bundle`] and [`ExactBundle`] fix it
//! to `f64` and exact rationals respectively.

pub mod algorithms;
pub mod error;
pub mod functions;
pub mod harness;
pub mod objective;
pub mod scalar;
pub mod sequence;

pub use error::{Error, Result};
pub use objective::{EvalCounter, ObjectiveBundle, SetFunction, WeightProfile};
pub use scalar::Scalar;
pub use sequence::{ItemId, Sequence};

/// Exact rational scalar, used to check algorithms without rounding noise.
pub type Rational = num_rational::Ratio<i64>;

/// Objective bundle over 64-bit floats.
pub type Bundle = ObjectiveBundle<f64>;
/// Objective bundle over exact rationals.
pub type ExactBundle = ObjectiveBundle<Rational>;
/// Weight profile over 64-bit floats.
pub type Weights = WeightProfile<f64>;

pub type PenaltyFn = functions::ModularPenaltyFn<f64>;
pub type ExactPenaltyFn = functions::ModularPenaltyFn<Rational>;
pub type CoverageDiversity = functions::CoverageDiversityFn<f64>;
pub type WeightedCoverage = functions::WeightedCoverageFn<f64>;
