//! The weighted sequential objective `F(π) = Σ_j λ_j f_j(π_[j])`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

/// A set function over the ground set `[0, n)`.
///
/// Implementations must be pure: the same set always yields the same value.
/// Sets are passed as slices of distinct item ids in no particular order.
pub trait SetFunction<S: Scalar>: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[ItemId]) -> S;

    /// `f(item | set) = f(set ∪ {item}) − f(set)`, for `item ∉ set`.
    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        let mut grown = Vec::with_capacity(set.len() + 1);
        grown.extend_from_slice(set);
        grown.push(item);
        self.value(&grown) - self.value(set)
    }
}

impl<S: Scalar, F: SetFunction<S> + ?Sized> SetFunction<S> for Arc<F> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, set: &[ItemId]) -> S {
        (**self).value(set)
    }

    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        (**self).marginal(item, set)
    }
}

/// Shared count of oracle queries.
///
/// Clones share the same underlying counter.
#[derive(Debug, Clone, Default)]
pub struct EvalCounter(Arc<AtomicU64>);

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&self, calls: u64) {
        self.0.fetch_add(calls, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// Nonnegative position weights `λ_1..λ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile<S> {
    lambdas: Vec<S>,
}

impl<S: Scalar> WeightProfile<S> {
    pub fn new(lambdas: Vec<S>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidParameter(
                "weight profile must be nonempty".into(),
            ));
        }
        for (index, &value) in lambdas.iter().enumerate() {
            // Written so that NaN is rejected too.
            if !(value >= S::zero()) {
                return Err(Error::NegativeWeight {
                    index,
                    value: value.to_f64_lossy(),
                });
            }
        }
        Ok(Self { lambdas })
    }

    /// `λ_j = 1` for every position.
    pub fn ones(k: usize) -> Self {
        Self {
            lambdas: vec![S::one(); k.max(1)],
        }
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.lambdas
    }

    /// `λ_j` for 1-based position `j`.
    pub fn get(&self, j: usize) -> S {
        self.lambdas[j - 1]
    }

    /// `Σ_{j=t..k} λ_j`, zero when `t > k`.
    pub fn suffix_sum(&self, t: usize) -> S {
        if t > self.lambdas.len() {
            return S::zero();
        }
        self.lambdas[t.max(1) - 1..].iter().copied().sum()
    }

    /// The first `len` weights.
    pub fn truncated(&self, len: usize) -> Self {
        Self {
            lambdas: self.lambdas[..len.min(self.lambdas.len())].to_vec(),
        }
    }
}

/// `k` set-function oracles plus their position weights.
#[derive(Clone)]
pub struct ObjectiveBundle<S: Scalar> {
    n: usize,
    weights: WeightProfile<S>,
    // One entry when homogeneous, otherwise one per position.
    oracles: Vec<Arc<dyn SetFunction<S>>>,
    homogeneous: bool,
    counter: EvalCounter,
}

impl<S: Scalar> fmt::Debug for ObjectiveBundle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveBundle")
            .field("n", &self.n)
            .field("k", &self.k())
            .field("homogeneous", &self.homogeneous)
            .field("weights", &self.weights)
            .finish()
    }
}

impl<S: Scalar> ObjectiveBundle<S> {
    /// Every position uses the same function `f`.
    pub fn homogeneous(f: Arc<dyn SetFunction<S>>, weights: WeightProfile<S>) -> Result<Self> {
        let n = f.ground_size();
        if weights.k() > n {
            return Err(Error::InvalidK { k: weights.k(), n });
        }
        Ok(Self {
            n,
            weights,
            oracles: vec![f],
            homogeneous: true,
            counter: EvalCounter::new(),
        })
    }

    /// One oracle per position; `oracles[j-1]` is `f_j`.
    pub fn heterogeneous(
        oracles: Vec<Arc<dyn SetFunction<S>>>,
        weights: WeightProfile<S>,
    ) -> Result<Self> {
        if oracles.len() != weights.k() {
            return Err(Error::OracleCount {
                expected: weights.k(),
                got: oracles.len(),
            });
        }
        let n = oracles[0].ground_size();
        for (index, oracle) in oracles.iter().enumerate() {
            if oracle.ground_size() != n {
                return Err(Error::OracleGroundSet {
                    index,
                    expected: n,
                    got: oracle.ground_size(),
                });
            }
        }
        if weights.k() > n {
            return Err(Error::InvalidK { k: weights.k(), n });
        }
        Ok(Self {
            n,
            weights,
            oracles,
            homogeneous: false,
            counter: EvalCounter::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.weights.k()
    }

    pub fn weights(&self) -> &WeightProfile<S> {
        &self.weights
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `f_j` for 1-based position `j`.
    pub fn oracle(&self, j: usize) -> &Arc<dyn SetFunction<S>> {
        if self.homogeneous {
            &self.oracles[0]
        } else {
            &self.oracles[j - 1]
        }
    }

    pub fn counter(&self) -> &EvalCounter {
        &self.counter
    }

    pub fn oracle_calls(&self) -> u64 {
        self.counter.get()
    }

    /// Same oracles, a counter of its own.
    pub fn with_fresh_counter(&self) -> Self {
        Self {
            counter: EvalCounter::new(),
            ..self.clone()
        }
    }

    /// Same oracles (and shared counter) under a different weight profile.
    ///
    /// Heterogeneous bundles can only be re-weighted to at most their current `k`.
    pub fn with_weights(&self, weights: WeightProfile<S>) -> Result<Self> {
        if weights.k() > self.n {
            return Err(Error::InvalidK {
                k: weights.k(),
                n: self.n,
            });
        }
        let oracles = if self.homogeneous {
            self.oracles.clone()
        } else {
            if weights.k() > self.oracles.len() {
                return Err(Error::OracleCount {
                    expected: weights.k(),
                    got: self.oracles.len(),
                });
            }
            self.oracles[..weights.k()].to_vec()
        };
        Ok(Self {
            n: self.n,
            weights,
            oracles,
            homogeneous: self.homogeneous,
            counter: self.counter.clone(),
        })
    }

    /// Keeps positions `1..=len` only.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        self.with_weights(self.weights.truncated(len))
    }

    /// Counted `f_j(set)`.
    pub fn f_value(&self, j: usize, set: &[ItemId]) -> S {
        self.counter.add(1);
        self.oracle(j).value(set)
    }

    /// Counted `f_j(item | set)`.
    pub fn f_marginal(&self, j: usize, item: ItemId, set: &[ItemId]) -> S {
        self.counter.add(1);
        self.oracle(j).marginal(item, set)
    }

    /// `Σ_{j=t..k} λ_j f_j(item | set)` without validation.
    ///
    /// Homogeneous bundles query the oracle once.
    pub fn window_gain(&self, set: &[ItemId], t: usize, item: ItemId) -> S {
        let k = self.k();
        if t > k {
            return S::zero();
        }
        if self.homogeneous {
            let suffix = self.weights.suffix_sum(t);
            if suffix == S::zero() {
                return S::zero();
            }
            return suffix * self.f_marginal(1, item, set);
        }
        (t..=k)
            .filter(|&j| self.weights.get(j) != S::zero())
            .map(|j| self.weights.get(j) * self.f_marginal(j, item, set))
            .sum()
    }

    /// `F(seq)`; prefixes past the end of `seq` saturate to the whole sequence.
    pub fn evaluate(&self, seq: &Sequence) -> Result<S> {
        seq.check_within(self.n)?;
        Ok(self.evaluate_unchecked(seq.items()))
    }

    pub(crate) fn evaluate_unchecked(&self, items: &[ItemId]) -> S {
        let k = self.k();
        let len = items.len();
        let mut total = S::zero();
        if self.homogeneous {
            // Positions j >= len all see the full sequence.
            let full_from = len.max(1);
            for j in 1..full_from.min(k + 1) {
                let w = self.weights.get(j);
                if w != S::zero() {
                    total = total + w * self.f_value(1, &items[..j]);
                }
            }
            if full_from <= k {
                let tail = self.weights.suffix_sum(full_from);
                if tail != S::zero() {
                    total = total + tail * self.f_value(1, items);
                }
            }
            return total;
        }
        for j in 1..=k {
            let w = self.weights.get(j);
            if w != S::zero() {
                total = total + w * self.f_value(j, &items[..j.min(len)]);
            }
        }
        total
    }

    /// `F(seq ⊕ item) − F(seq) = Σ_{j=|seq|+1..k} λ_j f_j(item | seq)`.
    pub fn marginal_gain(&self, seq: &Sequence, item: ItemId) -> Result<S> {
        seq.check_within(self.n)?;
        if item >= self.n {
            return Err(Error::ItemOutOfRange { item, n: self.n });
        }
        if seq.contains(item) {
            return Err(Error::ItemAlreadyPresent(item));
        }
        Ok(self.window_gain(seq.items(), seq.len() + 1, item))
    }

    /// `Σ_t Σ_{j=t..k} λ_j f_j(π_t | π_[t−1])`.
    ///
    /// Equals [`ObjectiveBundle::evaluate`] when every `f_j(∅) = 0`.
    pub fn telescoping_value(&self, seq: &Sequence) -> Result<S> {
        seq.check_within(self.n)?;
        let items = seq.items();
        let steps = items.len().min(self.k());
        let mut total = S::zero();
        for t in 1..=steps {
            let (before, rest) = items.split_at(t - 1);
            for j in t..=self.k() {
                total = total + self.weights.get(j) * self.f_marginal(j, rest[0], before);
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{tiny_instance, ModularPenaltyFn};
    use crate::Rational;

    fn tiny_bundle() -> ObjectiveBundle<f64> {
        ObjectiveBundle::homogeneous(Arc::new(tiny_instance::<f64>()), WeightProfile::ones(2))
            .unwrap()
    }

    fn seq(items: &[ItemId]) -> Sequence {
        Sequence::new(items.to_vec()).unwrap()
    }

    #[test]
    fn empty_sequence_is_zero_for_normalized_oracles() {
        assert_eq!(tiny_bundle().evaluate(&Sequence::empty()).unwrap(), 0.0);
    }

    #[test]
    fn modular_identity() {
        let f = ModularPenaltyFn::modular(vec![2.0, 0.0]);
        let b = ObjectiveBundle::homogeneous(Arc::new(f), WeightProfile::ones(1)).unwrap();
        assert_eq!(b.evaluate(&seq(&[0])).unwrap(), 2.0);
    }

    #[test]
    fn tiny_instance_value() {
        assert_eq!(tiny_bundle().evaluate(&seq(&[0, 2])).unwrap(), 8.0);
        let exact = ObjectiveBundle::homogeneous(
            Arc::new(tiny_instance::<Rational>()),
            WeightProfile::ones(2),
        )
        .unwrap();
        assert_eq!(
            exact.evaluate(&seq(&[0, 2])).unwrap(),
            Rational::from_integer(8)
        );
    }

    #[test]
    fn marginal_gain_examples() {
        let b = tiny_bundle();
        assert_eq!(b.marginal_gain(&Sequence::empty(), 0).unwrap(), 6.0);
        assert_eq!(b.marginal_gain(&seq(&[1]), 2).unwrap(), -1.0);
        assert_eq!(
            b.marginal_gain(&seq(&[1]), 1),
            Err(Error::ItemAlreadyPresent(1))
        );
    }

    #[test]
    fn zero_marginal_item() {
        let f = ModularPenaltyFn::modular(vec![1.0, 0.0, 4.0]);
        let b = ObjectiveBundle::homogeneous(Arc::new(f), WeightProfile::ones(2)).unwrap();
        assert_eq!(b.marginal_gain(&seq(&[0]), 1).unwrap(), 0.0);
    }

    #[test]
    fn telescoping_examples() {
        let b = tiny_bundle();
        assert_eq!(b.telescoping_value(&seq(&[0, 2])).unwrap(), 8.0);
        assert_eq!(b.telescoping_value(&Sequence::empty()).unwrap(), 0.0);
        // A single item counts with every position's weight.
        assert_eq!(b.telescoping_value(&seq(&[1])).unwrap(), 4.0);
    }

    #[test]
    fn out_of_range_sequences_are_rejected() {
        assert_eq!(
            tiny_bundle().evaluate(&seq(&[0, 7])),
            Err(Error::ItemOutOfRange { item: 7, n: 3 })
        );
    }

    #[test]
    fn short_sequences_saturate() {
        // F([0]) = λ1 f({0}) + λ2 f({0}) with the prefix convention.
        let w = WeightProfile::new(vec![1.0, 2.0]).unwrap();
        let b = ObjectiveBundle::homogeneous(Arc::new(tiny_instance::<f64>()), w).unwrap();
        assert_eq!(b.evaluate(&seq(&[0])).unwrap(), 9.0);
    }

    #[test]
    fn weights_validation() {
        assert!(matches!(
            WeightProfile::new(vec![1.0, -0.5]),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
        assert!(WeightProfile::<f64>::new(vec![]).is_err());
        let w = WeightProfile::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(w.suffix_sum(2), 5.0);
        assert_eq!(w.suffix_sum(4), 0.0);
    }

    #[test]
    fn counter_is_shared_by_reweighted_bundles() {
        let b = tiny_bundle();
        let t = b.truncated(1).unwrap();
        t.evaluate(&seq(&[0])).unwrap();
        assert!(b.oracle_calls() > 0);
        assert_eq!(b.with_fresh_counter().oracle_calls(), 0);
    }
}
