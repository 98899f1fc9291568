use crate::algorithms::draws::Draws;
use crate::algorithms::greedy::{sampling_greedy, GreedyTrace};
use crate::error::{Error, Result};
use crate::objective::ObjectiveBundle;
use crate::scalar::Scalar;
use crate::sequence::{ItemId, Sequence};

/// Output of [`fixed_length_solve`]: the padded sequence and the greedy run behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedLengthSolution<S> {
    pub sequence: Sequence,
    pub greedy: GreedyTrace<S>,
    pub backup: Vec<ItemId>,
}

/// Sampling greedy followed by a uniformly random backup set that fills the
/// sequence to exactly `k` items. Backup items are appended in ascending id.
pub fn fixed_length_solve<S: Scalar>(
    bundle: &ObjectiveBundle<S>,
    draws: &mut Draws,
) -> Result<FixedLengthSolution<S>> {
    let (n, k) = (bundle.n(), bundle.k());
    if k > n {
        return Err(Error::InvalidK { k, n });
    }
    let greedy = sampling_greedy(bundle, draws)?;
    let mut sequence = greedy.output.clone();
    let mut backup = Vec::new();
    if sequence.len() < k {
        let mask = sequence.mask(n);
        let candidates: Vec<ItemId> = (0..n).filter(|&i| !mask[i]).collect();
        backup = draws.backup(&candidates, k - sequence.len())?;
        backup.sort_unstable();
        for &item in &backup {
            sequence.push(item)?;
        }
    }
    Ok(FixedLengthSolution {
        sequence,
        greedy,
        backup,
    })
}

/// Appends unused items in ascending id until `seq` has `len` items.
pub(crate) fn pad_ascending(seq: &mut Sequence, n: usize, len: usize) {
    let mask = seq.mask(n);
    for item in (0..n).filter(|&i| !mask[i]) {
        if seq.len() >= len {
            break;
        }
        seq.push(item).expect("unused item");
    }
}
