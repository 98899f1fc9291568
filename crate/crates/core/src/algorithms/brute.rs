use crate::algorithms::Constraint;
use crate::error::{Error, Result};
use crate::objective::ObjectiveBundle;
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

pub const MAX_BRUTE_FORCE_ITEMS: usize = 9;
pub const MAX_BRUTE_FORCE_SEQUENCES: u128 = 10_000_000;

/// Number of duplicate-free sequences the enumeration would visit.
pub fn enumeration_size(n: usize, k: usize, constraint: Constraint) -> u128 {
    let mut total: u128 = 0;
    let mut perms: u128 = 1;
    for len in 0..=k.min(n) {
        if len > 0 {
            perms *= (n - len + 1) as u128;
        }
        if constraint == Constraint::Flexible || len == k {
            total += perms;
        }
    }
    total
}

/// Exact optimum by enumerating every feasible sequence in lexicographic order.
///
/// Flexible allows any length `0..=k`, fixed requires exactly `k`. Ties keep
/// the lexicographically smallest sequence (a prefix sorts before its
/// extensions).
pub fn brute_force<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    constraint: Constraint,
) -> Result<(Sequence, S)> {
    let (n, k) = (bundle.n(), bundle.k());
    if k > n {
        return Err(Error::InvalidK { k, n });
    }
    if n > MAX_BRUTE_FORCE_ITEMS || enumeration_size(n, k, constraint) > MAX_BRUTE_FORCE_SEQUENCES {
        return Err(Error::TooLarge { n, k });
    }
    let mut search = Search {
        bundle,
        k,
        constraint,
        used: vec![false; n],
        current: Vec::with_capacity(k),
        best: None,
    };
    search.visit();
    let (items, value) = search.best.expect("at least one feasible sequence");
    Ok((Sequence::new(items)?, value))
}

struct Search<'a, S: Scalar> {
    bundle: &'a ObjectiveBundle<S>,
    k: usize,
    constraint: Constraint,
    used: Vec<bool>,
    current: Vec<ItemId>,
    best: Option<(Vec<ItemId>, S)>,
}

impl<S: Scalar> Search<'_, S> {
    fn visit(&mut self) {
        let feasible = match self.constraint {
            Constraint::Flexible => true,
            Constraint::Fixed => self.current.len() == self.k,
        };
        if feasible {
            let value = self.bundle.evaluate_unchecked(&self.current);
            if self.best.as_ref().is_none_or(|(_, b)| value > *b) {
                self.best = Some((self.current.clone(), value));
            }
        }
        if self.current.len() == self.k {
            return;
        }
        for item in 0..self.used.len() {
            if self.used[item] {
                continue;
            }
            self.used[item] = true;
            self.current.push(item);
            self.visit();
            self.current.pop();
            self.used[item] = false;
        }
    }
}
