use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::objective::SetFunction;
use crate::scalar::Scalar;
use crate::sequence::ItemId;

/// Absolute slack allowed before a diminishing-returns check counts as violated.
pub const PROBE_TOLERANCE: f64 = 1e-9;

/// One observed `f(i | X) < f(i | Y)` with `X ⊆ Y`, `i ∉ Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub smaller: Vec<ItemId>,
    pub larger: Vec<ItemId>,
    pub item: ItemId,
    pub gain_smaller: f64,
    pub gain_larger: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub trials: usize,
    pub violations: Vec<Violation>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn gain<S: Scalar>(f: &dyn SetFunction<S>, item: ItemId, set: &[ItemId]) -> S {
    let mut grown = set.to_vec();
    grown.push(item);
    f.value(&grown) - f.value(set)
}

/// Samples random chains `X ⊆ Y ⊆ V∖{i}` and records every diminishing-returns
/// violation. Gains are computed from `value` differences so that a custom
/// `marginal` cannot mask a broken `value`.
pub fn submodularity_probe<S: Scalar>(
    f: &dyn SetFunction<S>,
    n: usize,
    trials: usize,
    seed: u64,
) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = S::from_f64(PROBE_TOLERANCE).unwrap_or_else(S::zero);
    let mut violations = Vec::new();
    if n == 0 {
        return ProbeReport { trials, violations };
    }
    for _ in 0..trials {
        let item = rng.gen_range(0..n);
        let fill_larger: f64 = rng.gen();
        let keep_smaller: f64 = rng.gen();
        let mut smaller = Vec::new();
        let mut larger = Vec::new();
        for s in (0..n).filter(|&s| s != item) {
            if rng.gen_bool(fill_larger) {
                larger.push(s);
                if rng.gen_bool(keep_smaller) {
                    smaller.push(s);
                }
            }
        }
        let gs = gain(f, item, &smaller);
        let gl = gain(f, item, &larger);
        if gs < gl - tol {
            violations.push(Violation {
                smaller,
                larger,
                item,
                gain_smaller: gs.to_f64_lossy(),
                gain_larger: gl.to_f64_lossy(),
            });
        }
    }
    ProbeReport { trials, violations }
}

/// Exhaustive check that no marginal is negative. Only for small `n`.
pub fn is_monotone<S: Scalar>(f: &dyn SetFunction<S>, n: usize) -> bool {
    assert!(n <= 20, "exhaustive monotonicity check needs n <= 20");
    (0u32..1 << n).all(|mask| {
        let set: Vec<_> = (0..n).filter(|&s| mask >> s & 1 == 1).collect();
        (0..n)
            .filter(|&i| mask >> i & 1 == 0)
            .all(|i| gain(f, i, &set) >= S::zero())
    })
}
