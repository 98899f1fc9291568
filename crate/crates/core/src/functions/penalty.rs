use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::scalar::Scalar;
use crate::sequence::ItemId;

/// `f(S) = Σ_{s∈S} r_s − Σ_{{s,t}⊆S} c_st` with `c ≥ 0`.
///
/// Marginals `r_i − Σ_{s∈S} c_is` only shrink as `S` grows, so the function is
/// submodular; a large enough penalty makes it non-monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularPenaltyFn<S> {
    rewards: Vec<S>,
    // Row-major n×n, symmetric, diagonal unused.
    penalty: Vec<S>,
}

impl<S: Scalar> ModularPenaltyFn<S> {
    pub fn new(rewards: Vec<S>, penalty: Vec<Vec<S>>) -> Result<Self> {
        let n = rewards.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty ground set".into()));
        }
        if penalty.len() != n || penalty.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "penalty matrix must be {n}x{n}"
            )));
        }
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                if !(penalty[s][t] >= S::zero()) {
                    return Err(Error::InvalidParameter(format!(
                        "penalty c[{s}][{t}] = {} is negative",
                        penalty[s][t]
                    )));
                }
                if penalty[s][t] != penalty[t][s] {
                    return Err(Error::InvalidParameter(format!(
                        "penalty matrix is not symmetric at ({s}, {t})"
                    )));
                }
            }
        }
        Ok(Self {
            rewards,
            penalty: penalty.into_iter().flatten().collect(),
        })
    }

    /// No penalties: a modular function.
    pub fn modular(rewards: Vec<S>) -> Self {
        let n = rewards.len();
        Self {
            rewards,
            penalty: vec![S::zero(); n * n],
        }
    }

    pub fn rewards(&self) -> &[S] {
        &self.rewards
    }

    pub fn penalty(&self, s: ItemId, t: ItemId) -> S {
        if s == t {
            S::zero()
        } else {
            self.penalty[s * self.rewards.len() + t]
        }
    }

    pub fn penalty_rows(&self) -> Vec<Vec<S>> {
        let n = self.rewards.len();
        (0..n)
            .map(|s| (0..n).map(|t| self.penalty(s, t)).collect())
            .collect()
    }
}

impl<S: Scalar> SetFunction<S> for ModularPenaltyFn<S> {
    fn ground_size(&self) -> usize {
        self.rewards.len()
    }

    fn value(&self, set: &[ItemId]) -> S {
        let mut total = S::zero();
        for (a, &s) in set.iter().enumerate() {
            total = total + self.rewards[s];
            for &t in &set[..a] {
                total = total - self.penalty(s, t);
            }
        }
        total
    }

    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        set.iter()
            .fold(self.rewards[item], |acc, &s| acc - self.penalty(item, s))
    }
}

/// The three-item example used throughout the tests.
///
/// `r = (3, 2, 2)`, `c_01 = 2`, `c_02 = 0`, `c_12 = 3`. Submodular and
/// non-monotone: `f(2 | {1}) = −1`.
pub fn tiny_instance<S: Scalar>() -> ModularPenaltyFn<S> {
    let int = |v: i64| S::from_i64(v).expect("small integer");
    let z = int(0);
    ModularPenaltyFn::new(
        vec![int(3), int(2), int(2)],
        vec![
            vec![z, int(2), z],
            vec![int(2), z, int(3)],
            vec![z, int(3), z],
        ],
    )
    .expect("tiny instance is valid")
}

/// Random integer-valued penalty function that is nonnegative on every subset.
///
/// Rewards are drawn from `0..=max_reward`, each pair gets a penalty from
/// `0..=max_penalty` with probability `density`; draws that go negative on some
/// subset are rejected and redrawn. Exhaustive, so `n` must stay small.
pub fn random_nonnegative_penalty<S: Scalar, R: Rng + ?Sized>(
    n: usize,
    max_reward: i64,
    max_penalty: i64,
    density: f64,
    rng: &mut R,
) -> Result<ModularPenaltyFn<S>> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidParameter(format!(
            "random penalty family supports 1 <= n <= 16, got {n}"
        )));
    }
    loop {
        let rewards: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_reward)).collect();
        let mut penalty = vec![vec![0i64; n]; n];
        for s in 0..n {
            for t in s + 1..n {
                if rng.gen_bool(density) {
                    let c = rng.gen_range(0..=max_penalty);
                    penalty[s][t] = c;
                    penalty[t][s] = c;
                }
            }
        }
        let nonnegative = (0u32..1 << n).all(|mask| {
            let mut v = 0;
            for s in 0..n {
                if mask >> s & 1 == 1 {
                    v += rewards[s];
                    for t in 0..s {
                        if mask >> t & 1 == 1 {
                            v -= penalty[s][t];
                        }
                    }
                }
            }
            v >= 0
        });
        if nonnegative {
            let conv = |v: i64| S::from_i64(v).expect("small integer");
            return ModularPenaltyFn::new(
                rewards.into_iter().map(conv).collect(),
                penalty
                    .into_iter()
                    .map(|row| row.into_iter().map(conv).collect())
                    .collect(),
            );
        }
    }
}
