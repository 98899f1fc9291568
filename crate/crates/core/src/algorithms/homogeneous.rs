//! Fixed-length solver for homogeneous bundles (`f_j = f` for every `j`).
//!
//! When `k ≥ ⌈n/2⌉` two candidate solutions are built and the better one is
//! kept:
//!
//! - the *first-half* branch solves the problem truncated to the first
//!   `⌈n/2⌉` positions and pads the rest;
//! - the *second-half* branch greedily grows a set `U` with respect to the
//!   complement `g(S) = f(V ∖ S)` and lays the sequence out back to front, so
//!   that each long prefix `π_[j]` is the complement of a greedy solution for
//!   `max g(S)` with `|S| = n − j`.
//!
//! Odd `n` is handled by splitting at `⌈n/2⌉` everywhere.

use std::sync::Arc;

use crate::algorithms::draws::Draws;
use crate::algorithms::fixed::{fixed_length_solve, pad_ascending};
use crate::algorithms::greedy::by_rank;
use crate::error::{Error, Result};
use crate::functions::ComplementFn;
use crate::objective::{EvalCounter, ObjectiveBundle, SetFunction};
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

/// `⌈n/2⌉`.
pub fn half_split(n: usize) -> usize {
    n.div_ceil(2)
}

fn require_upper_regime<S: Scalar>(bundle: &ObjectiveBundle<S>) -> Result<usize> {
    if !bundle.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let half = half_split(bundle.n());
    if bundle.k() < half {
        return Err(Error::BelowHalf {
            k: bundle.k(),
            half,
            n: bundle.n(),
        });
    }
    Ok(half)
}

/// Solves the first `⌈n/2⌉` positions with [`fixed_length_solve`] and pads
/// with unused items in ascending id. Positions past `⌈n/2⌉` are ignored by the
/// inner problem.
pub fn homogeneous_first_half<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<Sequence> {
    let half = require_upper_regime(bundle)?;
    let inner = bundle.truncated(half)?;
    let mut seq = fixed_length_solve(&inner, draws)?.sequence;
    pad_ascending(&mut seq, bundle.n(), bundle.k());
    Ok(seq)
}

/// Deferred-coin greedy on `g(S) = f(V ∖ S)`: accept up to `cap` items,
/// considering only items with positive `g`-marginal. Returns `U` in
/// acceptance order.
pub fn complement_greedy<S: Scalar>(
    f: &Arc<dyn SetFunction<S>>,
    cap: usize,
    draws: &mut Draws,
    counter: &EvalCounter,
) -> Result<Vec<ItemId>> {
    let g = ComplementFn::new(f.clone());
    let n = g.ground_size();
    let mut available = vec![true; n];
    let mut accepted: Vec<ItemId> = Vec::with_capacity(cap);

    let rank = |accepted: &[ItemId], available: &[bool]| {
        let mut ranked: Vec<(ItemId, S)> = (0..n)
            .filter(|&i| available[i])
            .map(|i| {
                counter.add(1);
                (i, g.marginal(i, accepted))
            })
            .filter(|(_, gain)| *gain > S::zero())
            .collect();
        ranked.sort_by(|a, b| by_rank(&a.0, &a.1, &b.0, &b.1));
        ranked
    };

    if cap == 0 {
        return Ok(accepted);
    }
    let mut queue = rank(&accepted, &available);
    let mut cursor = 0;
    while accepted.len() < cap && cursor < queue.len() {
        let (item, _) = queue[cursor];
        cursor += 1;
        available[item] = false;
        if draws.toss()? {
            accepted.push(item);
            if accepted.len() < cap {
                queue = rank(&accepted, &available);
                cursor = 0;
            }
        }
    }
    Ok(accepted)
}

/// Lays out `π^{V∖(U∪B)} ⊕ π^B ⊕ π^U` and keeps the first `k` items.
///
/// `π^U` is the last `|U| − n + k` items of `u_order` reversed (empty when that
/// count is not positive), `π^B` is `backup` as given, and the remaining items
/// go first in ascending id.
pub fn assemble_second_half(
    n: usize,
    k: usize,
    u_order: &[ItemId],
    backup: &[ItemId],
) -> Result<Sequence> {
    if k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut taken = vec![false; n];
    for &i in u_order.iter().chain(backup) {
        if i >= n {
            return Err(Error::ItemOutOfRange { item: i, n });
        }
        if taken[i] {
            return Err(Error::DuplicateItem(i));
        }
        taken[i] = true;
    }
    let tail = (u_order.len() + k).saturating_sub(n);
    let mut out: Vec<ItemId> = (0..n).filter(|&i| !taken[i]).collect();
    out.extend_from_slice(backup);
    out.extend(u_order[u_order.len() - tail..].iter().rev());
    out.truncate(k);
    Sequence::new(out)
}

/// Second-half branch: complement greedy capped at `⌈n/2⌉`, then a random
/// backup `B ⊆ V ∖ U` of size `⌈n/2⌉ − |U|` kept in draw order, then
/// [`assemble_second_half`].
pub fn second_half_solve<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<Sequence> {
    let half = require_upper_regime(bundle)?;
    let n = bundle.n();
    let u = complement_greedy(bundle.oracle(1), half, draws, bundle.counter())?;
    let mut in_u = vec![false; n];
    for &i in &u {
        in_u[i] = true;
    }
    let candidates: Vec<ItemId> = (0..n).filter(|&i| !in_u[i]).collect();
    let backup = draws.backup(&candidates, half - u.len())?;
    assemble_second_half(n, bundle.k(), &u, &backup)
}

/// Complement greedy capped at `n − j`, topped up with a random backup to
/// exactly `n − j` items. Returned in ascending id.
///
/// `j` must lie in `⌊n/2⌋..=n`, which keeps `n − j ≤ ⌈n/2⌉`.
pub fn prefix_complement_sample<S: Scalar>(
    f: &Arc<dyn SetFunction<S>>,
    j: usize,
    draws: &mut Draws,
) -> Result<Vec<ItemId>> {
    let n = f.ground_size();
    let lo = (n / 2).max(1);
    if j < lo || j > n {
        return Err(Error::InvalidPosition { j, n, lo, hi: n });
    }
    let size = n - j;
    let mut set = complement_greedy(f, size, draws, &EvalCounter::new())?;
    let mut in_set = vec![false; n];
    for &i in &set {
        in_set[i] = true;
    }
    let candidates: Vec<ItemId> = (0..n).filter(|&i| !in_set[i]).collect();
    set.extend(draws.backup(&candidates, size - set.len())?);
    set.sort_unstable();
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `k < ⌈n/2⌉`: plain fixed-length solver.
    FixedLength,
    FirstHalf,
    SecondHalf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousSolution<S> {
    pub sequence: Sequence,
    pub value: S,
    pub branch: Branch,
    /// Both branch outcomes when `k ≥ ⌈n/2⌉`.
    pub candidates: Option<[(Sequence, S); 2]>,
}

/// Best of the two branches for `k ≥ ⌈n/2⌉` (ties keep the first-half
/// branch); the plain fixed-length solver otherwise.
pub fn homogeneous_solve<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<HomogeneousSolution<S>> {
    if !bundle.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if bundle.k() < half_split(bundle.n()) {
        let sequence = fixed_length_solve(bundle, draws)?.sequence;
        let value = bundle.evaluate(&sequence)?;
        return Ok(HomogeneousSolution {
            sequence,
            value,
            branch: Branch::FixedLength,
            candidates: None,
        });
    }
    let first = homogeneous_first_half(bundle, draws)?;
    let second = second_half_solve(bundle, draws)?;
    let first_value = bundle.evaluate(&first)?;
    let second_value = bundle.evaluate(&second)?;
    let (sequence, value, branch) = if second_value > first_value {
        (second.clone(), second_value, Branch::SecondHalf)
    } else {
        (first.clone(), first_value, Branch::FirstHalf)
    };
    Ok(HomogeneousSolution {
        sequence,
        value,
        branch,
        candidates: Some([(first, first_value), (second, second_value)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::draws::SamplerConfig;
    use crate::functions::{tiny_instance, ModularPenaltyFn};
    use crate::objective::WeightProfile;

    fn draws(seed: u64) -> Draws {
        Draws::new(&SamplerConfig::new(0.5, seed).unwrap())
    }

    fn tiny(k: usize) -> ObjectiveBundle<f64> {
        ObjectiveBundle::homogeneous(Arc::new(tiny_instance::<f64>()), WeightProfile::ones(k))
            .unwrap()
    }

    #[test]
    fn running_example_layout() {
        // Items 1..=10 shifted to ids 0..=9.
        let u: Vec<ItemId> = [5, 1, 9, 10].iter().map(|x| x - 1).collect();
        let seq = assemble_second_half(10, 8, &u, &[1]).unwrap();
        let labels: Vec<_> = seq.items().iter().map(|x| x + 1).collect();
        assert_eq!(labels, vec![3, 4, 6, 7, 8, 2, 10, 9]);
    }

    #[test]
    fn short_u_leaves_tail_empty() {
        // n = 4, k = 3, |U| = 1 = n − k: nothing from U is placed.
        let seq = assemble_second_half(4, 3, &[3], &[1]).unwrap();
        assert_eq!(seq.items(), &[0, 2, 1]);
        // |U| = 2 > n − k: the later addition goes last.
        let seq = assemble_second_half(4, 3, &[3, 0], &[]).unwrap();
        assert_eq!(seq.items(), &[1, 2, 0]);
    }

    #[test]
    fn assemble_rejects_overlap() {
        assert_eq!(
            assemble_second_half(4, 3, &[1], &[1]),
            Err(Error::DuplicateItem(1))
        );
    }

    #[test]
    fn first_half_smallest_case() {
        let f = ModularPenaltyFn::modular(vec![1.0, 2.0]);
        let b = ObjectiveBundle::homogeneous(Arc::new(f), WeightProfile::ones(2)).unwrap();
        let mut d = Draws::new(&SamplerConfig::new(1.0, 0).unwrap());
        assert_eq!(homogeneous_first_half(&b, &mut d).unwrap().items(), &[1, 0]);
    }

    #[test]
    fn first_half_padding_is_weightless() {
        // n = 4, k = 3, λ = (1, 1, 0): the padded third item cannot change F.
        let f = ModularPenaltyFn::new(
            vec![3.0, 1.0, 2.0, 2.0],
            vec![
                vec![0.0, 1.0, 2.0, 0.0],
                vec![1.0, 0.0, 0.0, 1.0],
                vec![2.0, 0.0, 0.0, 3.0],
                vec![0.0, 1.0, 3.0, 0.0],
            ],
        )
        .unwrap();
        let w = WeightProfile::new(vec![1.0, 1.0, 0.0]).unwrap();
        let b = ObjectiveBundle::homogeneous(Arc::new(f), w).unwrap();
        for seed in 0..30 {
            let seq = homogeneous_first_half(&b, &mut draws(seed)).unwrap();
            assert_eq!(seq.len(), 3);
            let head = b.evaluate(&seq.prefix_seq(2)).unwrap();
            assert_eq!(b.evaluate(&seq).unwrap(), head);
        }
    }

    #[test]
    fn below_half_is_rejected() {
        let f = ModularPenaltyFn::modular(vec![1.0; 6]);
        let b = ObjectiveBundle::homogeneous(Arc::new(f), WeightProfile::ones(2)).unwrap();
        assert!(matches!(
            homogeneous_first_half(&b, &mut draws(0)),
            Err(Error::BelowHalf { .. })
        ));
        assert!(matches!(
            second_half_solve(&b, &mut draws(0)),
            Err(Error::BelowHalf { .. })
        ));
        let sol = homogeneous_solve(&b, &mut draws(0)).unwrap();
        assert_eq!(sol.branch, Branch::FixedLength);
        assert_eq!(sol.sequence.len(), 2);
    }

    #[test]
    fn second_half_outputs_k_items() {
        for seed in 0..50 {
            for k in 2..=3 {
                let seq = second_half_solve(&tiny(k), &mut draws(seed)).unwrap();
                assert_eq!(seq.len(), k);
            }
        }
    }

    #[test]
    fn solver_keeps_the_better_branch() {
        for seed in 0..50 {
            let sol = homogeneous_solve(&tiny(2), &mut draws(seed)).unwrap();
            let [(_, a), (_, b)] = sol.candidates.clone().unwrap();
            assert_eq!(sol.value, a.max(b));
            assert_eq!(sol.value, tiny(2).evaluate(&sol.sequence).unwrap());
            if a == b {
                assert_eq!(sol.branch, Branch::FirstHalf);
            }
        }
    }

    #[test]
    fn prefix_complement_sample_sizes() {
        let f: Arc<dyn SetFunction<f64>> = Arc::new(tiny_instance::<f64>());
        assert!(prefix_complement_sample(&f, 3, &mut draws(0))
            .unwrap()
            .is_empty());
        assert!(prefix_complement_sample(&f, 4, &mut draws(0)).is_err());
        assert!(prefix_complement_sample(&f, 0, &mut draws(0)).is_err());
        // g singletons: g({0}) = f({1,2}) = 1, g({1}) = 5, g({2}) = f({0,1}) = 3.
        // With the first coin accepted the greedy takes item 1.
        let mut d = draws(0).with_forced_coins(vec![true]);
        assert_eq!(prefix_complement_sample(&f, 2, &mut d).unwrap(), vec![1]);
    }

    #[test]
    fn complement_greedy_with_all_gains_nonpositive_is_all_backup() {
        // g(i | S) = −r_i ≤ 0 for a modular f with nonnegative rewards.
        let f: Arc<dyn SetFunction<f64>> =
            Arc::new(ModularPenaltyFn::modular(vec![1.0, 2.0, 0.0, 4.0]));
        let u = complement_greedy(&f, 2, &mut draws(1), &EvalCounter::new()).unwrap();
        assert!(u.is_empty());
        let s = prefix_complement_sample(&f, 2, &mut draws(5)).unwrap();
        assert_eq!(s.len(), 2);
    }
}
