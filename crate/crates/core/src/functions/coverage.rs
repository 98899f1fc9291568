use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::scalar::Scalar;
use crate::sequence::ItemId;

/// Weighted set coverage: each item covers some universe elements and `f(S)` is
/// the total weight of elements covered by `S`. Monotone and submodular.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCoverageFn<S> {
    covers: Vec<Vec<usize>>,
    element_weights: Vec<S>,
}

impl<S: Scalar> WeightedCoverageFn<S> {
    pub fn new(covers: Vec<Vec<usize>>, element_weights: Vec<S>) -> Result<Self> {
        if covers.is_empty() {
            return Err(Error::InvalidParameter("empty ground set".into()));
        }
        let m = element_weights.len();
        if let Some(bad) = covers.iter().flatten().find(|&&e| e >= m) {
            return Err(Error::InvalidParameter(format!(
                "element {bad} outside universe of size {m}"
            )));
        }
        if element_weights.iter().any(|&w| !(w >= S::zero())) {
            return Err(Error::InvalidParameter(
                "element weights must be nonnegative".into(),
            ));
        }
        Ok(Self {
            covers,
            element_weights,
        })
    }

    /// `n` items over a universe of `m` elements; each item covers each element
    /// with probability `density`; integer weights in `1..=max_weight`.
    pub fn random<R: Rng + ?Sized>(
        n: usize,
        m: usize,
        density: f64,
        max_weight: i64,
        rng: &mut R,
    ) -> Result<Self> {
        let covers = (0..n)
            .map(|_| (0..m).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        let weights = (0..m)
            .map(|_| S::from_i64(rng.gen_range(1..=max_weight)).expect("small integer"))
            .collect();
        Self::new(covers, weights)
    }

    fn covered(&self, set: &[ItemId]) -> Vec<bool> {
        let mut covered = vec![false; self.element_weights.len()];
        for &s in set {
            for &e in &self.covers[s] {
                covered[e] = true;
            }
        }
        covered
    }
}

impl<S: Scalar> SetFunction<S> for WeightedCoverageFn<S> {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn value(&self, set: &[ItemId]) -> S {
        self.covered(set)
            .iter()
            .zip(&self.element_weights)
            .filter(|(&c, _)| c)
            .map(|(_, &w)| w)
            .sum()
    }

    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        let covered = self.covered(set);
        let mut seen = Vec::new();
        let mut gain = S::zero();
        for &e in &self.covers[item] {
            if !covered[e] && !seen.contains(&e) {
                seen.push(e);
                gain = gain + self.element_weights[e];
            }
        }
        gain
    }
}
