//! Comparison baselines: diversity-only greedy and rating sort.

use crate::algorithms::draws::Draws;
use crate::algorithms::greedy::by_rank;
use crate::algorithms::Constraint;
use crate::error::{Error, Result};
use crate::functions::CoverageDiversityFn;
use crate::objective::ObjectiveBundle;
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

/// Greedy on the diversity term `g` alone, in selection order.
///
/// Stops at `k` items or when no item has a positive `g`-marginal. Under the
/// fixed constraint the sequence is then filled with a random backup set
/// (ascending id).
pub fn baseline_covdiv<S: Scalar>(
    f: &CoverageDiversityFn<S>,
    bundle: &ObjectiveBundle<S>,
    constraint: Constraint,
    draws: &mut Draws,
) -> Result<Sequence> {
    let (n, k) = (bundle.n(), bundle.k());
    if f.n() != n {
        return Err(Error::OracleGroundSet {
            index: 0,
            expected: n,
            got: f.n(),
        });
    }
    let mut picked: Vec<ItemId> = Vec::with_capacity(k);
    let mut available = vec![true; n];
    while picked.len() < k {
        let mut best: Option<(ItemId, S)> = None;
        for i in (0..n).filter(|&i| available[i]) {
            bundle.counter().add(1);
            let gain = f.diversity_marginal(i, &picked);
            if gain > S::zero()
                && best
                    .as_ref()
                    .is_none_or(|(b, bg)| by_rank(&i, &gain, b, bg).is_lt())
            {
                best = Some((i, gain));
            }
        }
        let Some((item, _)) = best else { break };
        available[item] = false;
        picked.push(item);
    }
    if constraint == Constraint::Fixed && picked.len() < k {
        let candidates: Vec<ItemId> = (0..n).filter(|&i| available[i]).collect();
        let mut backup = draws.backup(&candidates, k - picked.len())?;
        backup.sort_unstable();
        picked.extend(backup);
    }
    Sequence::new(picked)
}

/// Top-`k` items by rating, descending, ties to the lower id. Always `k` items.
pub fn baseline_quality<S: Scalar>(ratings: &[S], k: usize) -> Result<Sequence> {
    let n = ratings.len();
    if k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut order: Vec<ItemId> = (0..n).collect();
    order.sort_by(|&a, &b| by_rank(&a, &ratings[a], &b, &ratings[b]));
    order.truncate(k);
    Sequence::new(order)
}
