//! The sampling greedy, in its deferred-coin and presampled forms.

use std::cmp::Ordering;

use crate::algorithms::draws::Draws;
use crate::error::Result;
use crate::objective::ObjectiveBundle;
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

/// One item the greedy considered, with its window gain and coin outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Consideration<S> {
    pub item: ItemId,
    pub gain: S,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace<S> {
    pub considered: Vec<Consideration<S>>,
    pub output: Sequence,
}

impl<S> GreedyTrace<S> {
    /// Considered items in order, without gains.
    pub fn considered_items(&self) -> Vec<(ItemId, bool)> {
        self.considered
            .iter()
            .map(|c| (c.item, c.accepted))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate<S> {
    pub item: ItemId,
    pub gain: S,
    // Ordering key; equals `gain` except for homogeneous bundles, where the
    // shared positive weight factor is dropped.
    key: S,
}

/// Best-first: larger key, then lower id.
pub(crate) fn by_rank<S: Scalar>(a: &ItemId, ka: &S, b: &ItemId, kb: &S) -> Ordering {
    kb.partial_cmp(ka).unwrap_or(Ordering::Equal).then(a.cmp(b))
}

/// Items with a strictly positive window gain at position `t`, best first.
pub(crate) fn rank_candidates<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    set: &[ItemId],
    t: usize,
    eligible: &[bool],
) -> Vec<Candidate<S>> {
    let mut out: Vec<Candidate<S>> = if bundle.is_homogeneous() {
        let suffix = bundle.weights().suffix_sum(t);
        if !(suffix > S::zero()) {
            return Vec::new();
        }
        (0..bundle.n())
            .filter(|&i| eligible[i])
            .map(|item| {
                let key = bundle.f_marginal(1, item, set);
                Candidate {
                    item,
                    gain: suffix * key,
                    key,
                }
            })
            .filter(|c| c.key > S::zero())
            .collect()
    } else {
        (0..bundle.n())
            .filter(|&i| eligible[i])
            .map(|item| {
                let gain = bundle.window_gain(set, t, item);
                Candidate {
                    item,
                    gain,
                    key: gain,
                }
            })
            .filter(|c| c.key > S::zero())
            .collect()
    };
    out.sort_by(|a, b| by_rank(&a.item, &a.key, &b.item, &b.key));
    out
}

/// Deferred-coin sampling greedy.
///
/// Repeatedly considers the remaining item with the largest positive window
/// gain `Σ_{j=t..k} λ_j f_j(i | π)` (ties to the lowest id), removes it from the
/// pool, and appends it only if its coin comes up heads. Stops when `k` items
/// are placed or no remaining item has a positive gain.
pub fn sampling_greedy<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<GreedyTrace<S>> {
    let k = bundle.k();
    let mut available = vec![true; bundle.n()];
    let mut picked: Vec<ItemId> = Vec::with_capacity(k);
    let mut considered = Vec::new();

    let mut queue = rank_candidates(bundle, &picked, 1, &available);
    let mut cursor = 0;
    while picked.len() < k && cursor < queue.len() {
        let Candidate { item, gain, .. } = queue[cursor];
        cursor += 1;
        available[item] = false;
        let accepted = draws.toss()?;
        considered.push(Consideration {
            item,
            gain,
            accepted,
        });
        if accepted {
            picked.push(item);
            if picked.len() < k {
                queue = rank_candidates(bundle, &picked, picked.len() + 1, &available);
                cursor = 0;
            }
        }
        // A rejected item leaves π unchanged, so the rest of the queue is
        // still correctly ranked.
    }
    Ok(GreedyTrace {
        considered,
        output: Sequence::new(picked)?,
    })
}

/// Presampled form: keep each item with probability `p` (coins drawn in item-id
/// order), then run the deterministic positive-gain greedy on the kept pool.
pub fn presampled_greedy<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<Sequence> {
    let mut pool = vec![false; bundle.n()];
    for slot in pool.iter_mut() {
        *slot = draws.toss()?;
    }
    Ok(greedy_on_pool(bundle, &pool))
}

/// Deterministic positive-gain greedy restricted to `pool`.
pub fn greedy_on_pool<S: Scalar>(bundle: &ObjectiveBundle<S>, pool: &[bool]) -> Sequence {
    let mut available = pool.to_vec();
    let limit = bundle.k().min(pool.iter().filter(|&&b| b).count());
    let mut picked = Vec::with_capacity(limit);
    while picked.len() < limit {
        let ranked = rank_candidates(bundle, &picked, picked.len() + 1, &available);
        let Some(best) = ranked.first() else { break };
        available[best.item] = false;
        picked.push(best.item);
    }
    Sequence::new(picked).expect("greedy never repeats items")
}
