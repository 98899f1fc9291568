//! Built-in set-function families and the complement transform.

mod complement;
mod coverage;
mod coverage_diversity;
mod penalty;
mod probe;

pub use complement::ComplementFn;
pub use coverage::WeightedCoverageFn;
pub use coverage_diversity::{auto_scaled_beta, similarity_from_tags, CoverageDiversityFn};
pub use penalty::{random_nonnegative_penalty, tiny_instance, ModularPenaltyFn};
pub use probe::{is_monotone, submodularity_probe, ProbeReport, Violation, PROBE_TOLERANCE};

use crate::sequence::ItemId;

/// Membership mask of `set` over `[0, n)`.
pub(crate) fn mask_of(set: &[ItemId], n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &i in set {
        mask[i] = true;
    }
    mask
}
