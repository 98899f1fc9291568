use std::sync::Arc;

use crate::objective::SetFunction;
use crate::scalar::Scalar;
use crate::sequence::ItemId;

use super::mask_of;

/// `g(S) = f(V \ S)`. Submodular whenever `f` is.
#[derive(Clone)]
pub struct ComplementFn<S: Scalar> {
    base: Arc<dyn SetFunction<S>>,
}

impl<S: Scalar> ComplementFn<S> {
    pub fn new(base: Arc<dyn SetFunction<S>>) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &Arc<dyn SetFunction<S>> {
        &self.base
    }

    fn rest(&self, set: &[ItemId], also_skip: Option<ItemId>) -> Vec<ItemId> {
        let n = self.base.ground_size();
        let mut mask = mask_of(set, n);
        if let Some(i) = also_skip {
            mask[i] = true;
        }
        (0..n).filter(|&i| !mask[i]).collect()
    }
}

impl<S: Scalar> SetFunction<S> for ComplementFn<S> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn value(&self, set: &[ItemId]) -> S {
        self.base.value(&self.rest(set, None))
    }

    // g(i | S) = f(V∖(S∪{i})) − f(V∖S) = −f(i | V∖(S∪{i}))
    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        S::zero() - self.base.marginal(item, &self.rest(set, Some(item)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::tiny_instance;

    fn g() -> ComplementFn<f64> {
        ComplementFn::new(Arc::new(tiny_instance::<f64>()))
    }

    #[test]
    fn complement_examples() {
        let f = tiny_instance::<f64>();
        assert_eq!(g().value(&[]), f.value(&[0, 1, 2]));
        assert_eq!(g().value(&[0, 1, 2]), 0.0);
        assert_eq!(g().value(&[1]), 5.0);
    }

    #[test]
    fn marginal_matches_difference() {
        let g = g();
        for item in 0..3 {
            for mask in 0u32..8 {
                if mask >> item & 1 == 1 {
                    continue;
                }
                let set: Vec<_> = (0..3).filter(|&s| mask >> s & 1 == 1).collect();
                let mut grown = set.clone();
                grown.push(item);
                assert_eq!(g.marginal(item, &set), g.value(&grown) - g.value(&set));
            }
        }
    }

    #[test]
    fn double_complement_is_identity() {
        let f: Arc<dyn SetFunction<f64>> = Arc::new(tiny_instance::<f64>());
        let gg = ComplementFn::new(Arc::new(ComplementFn::new(f.clone())));
        for mask in 0u32..8 {
            let set: Vec<_> = (0..3).filter(|&s| mask >> s & 1 == 1).collect();
            assert_eq!(gg.value(&set), f.value(&set));
        }
    }
}
