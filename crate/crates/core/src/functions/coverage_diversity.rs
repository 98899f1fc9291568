use num_traits::Float;

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::scalar::Scalar;
use crate::sequence::ItemId;

/// Rating plus coverage-minus-redundancy objective.
///
/// ```text
/// f(S) = α Σ_{s∈S} ρ_s + β g(S)
/// g(S) = Σ_{s∈S} Σ_{t∈V} w_st − η Σ_{s∈S} Σ_{t∈S} w_st
/// ```
///
/// The redundancy sum runs over ordered pairs and includes `s = t`, so the
/// diagonal `w_ss` is charged once per selected item. Coverage uses row sums
/// over the whole ground set, precomputed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageDiversityFn<S> {
    ratings: Vec<S>,
    similarity: Vec<S>,
    alpha: S,
    beta: S,
    eta: S,
    row_sums: Vec<S>,
}

impl<S: Scalar> CoverageDiversityFn<S> {
    pub fn new(
        ratings: Vec<S>,
        similarity: Vec<Vec<S>>,
        alpha: S,
        beta: S,
        eta: S,
    ) -> Result<Self> {
        let n = ratings.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty ground set".into()));
        }
        if similarity.len() != n || similarity.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "similarity matrix must be {n}x{n}"
            )));
        }
        if !(alpha >= S::zero()) || !(beta >= S::zero()) {
            return Err(Error::InvalidParameter(
                "alpha and beta must be nonnegative".into(),
            ));
        }
        if !(eta >= S::one()) {
            return Err(Error::InvalidParameter(format!(
                "eta = {eta} must be at least 1"
            )));
        }
        if let Some(i) = ratings.iter().position(|&r| !(r >= S::zero())) {
            return Err(Error::InvalidParameter(format!("rating {i} is negative")));
        }
        for s in 0..n {
            for t in 0..n {
                if !(similarity[s][t] >= S::zero()) {
                    return Err(Error::InvalidParameter(format!(
                        "similarity w[{s}][{t}] is negative"
                    )));
                }
                if similarity[s][t] != similarity[t][s] {
                    return Err(Error::InvalidParameter(format!(
                        "similarity matrix is not symmetric at ({s}, {t})"
                    )));
                }
            }
        }
        let row_sums = similarity
            .iter()
            .map(|row| row.iter().copied().sum())
            .collect();
        Ok(Self {
            ratings,
            similarity: similarity.into_iter().flatten().collect(),
            alpha,
            beta,
            eta,
            row_sums,
        })
    }

    pub fn n(&self) -> usize {
        self.ratings.len()
    }

    pub fn ratings(&self) -> &[S] {
        &self.ratings
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn beta(&self) -> S {
        self.beta
    }

    pub fn eta(&self) -> S {
        self.eta
    }

    pub fn row_sums(&self) -> &[S] {
        &self.row_sums
    }

    pub fn w(&self, s: ItemId, t: ItemId) -> S {
        self.similarity[s * self.ratings.len() + t]
    }

    pub fn similarity_rows(&self) -> Vec<Vec<S>> {
        self.similarity
            .chunks(self.ratings.len())
            .map(|row| row.to_vec())
            .collect()
    }

    fn check(&self, set: &[ItemId]) -> Result<()> {
        match set.iter().find(|&&i| i >= self.n()) {
            Some(&item) => Err(Error::ItemOutOfRange { item, n: self.n() }),
            None => Ok(()),
        }
    }

    /// `f(S)`, rejecting out-of-range items.
    pub fn eval(&self, set: &[ItemId]) -> Result<S> {
        self.check(set)?;
        Ok(self.value(set))
    }

    /// The diversity term `g(S)` alone.
    pub fn diversity_value(&self, set: &[ItemId]) -> S {
        let mut coverage = S::zero();
        let mut redundancy = S::zero();
        for &s in set {
            coverage = coverage + self.row_sums[s];
            for &t in set {
                redundancy = redundancy + self.w(s, t);
            }
        }
        coverage - self.eta * redundancy
    }

    /// `g(item | S) = rowsum_i − η (w_ii + 2 Σ_{s∈S} w_is)`, in O(|S|).
    pub fn diversity_marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        let cross: S = set.iter().map(|&s| self.w(item, s)).sum();
        self.row_sums[item] - self.eta * (self.w(item, item) + cross + cross)
    }
}

impl<S: Scalar> SetFunction<S> for CoverageDiversityFn<S> {
    fn ground_size(&self) -> usize {
        self.ratings.len()
    }

    fn value(&self, set: &[ItemId]) -> S {
        let quality: S = set.iter().map(|&s| self.ratings[s]).sum();
        self.alpha * quality + self.beta * self.diversity_value(set)
    }

    fn marginal(&self, item: ItemId, set: &[ItemId]) -> S {
        self.alpha * self.ratings[item] + self.beta * self.diversity_marginal(item, set)
    }
}

/// `w_ij = ‖min(t_i, t_j)‖₂` over tag-relevance rows in `[0, 1]`.
pub fn similarity_from_tags<T: Scalar + Float>(tags: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let Some(first) = tags.first() else {
        return Err(Error::InvalidParameter("tag matrix is empty".into()));
    };
    let d = first.len();
    if d == 0 {
        return Err(Error::InvalidParameter("tag vectors are empty".into()));
    }
    for (i, row) in tags.iter().enumerate() {
        if row.len() != d {
            return Err(Error::InvalidParameter(format!(
                "tag row {i} has {} columns, expected {d}",
                row.len()
            )));
        }
        if let Some(l) = row.iter().position(|&v| !(v >= T::zero() && v <= T::one())) {
            return Err(Error::InvalidParameter(format!(
                "tag value ({i}, {l}) = {} is outside [0, 1]",
                row[l]
            )));
        }
    }
    let n = tags.len();
    let mut w = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let sq: T = tags[i]
                .iter()
                .zip(&tags[j])
                .map(|(&a, &b)| {
                    let m = a.min(b);
                    m * m
                })
                .sum();
            let v = sq.sqrt();
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    Ok(w)
}

/// `β = Σρ / max(1, Σ_s rowsum_s)`, which puts the rating term and the
/// coverage term on the same scale over the full ground set (with `α = 1`).
pub fn auto_scaled_beta<S: Scalar>(ratings: &[S], similarity: &[Vec<S>]) -> S {
    let total_rating: S = ratings.iter().copied().sum();
    let total_coverage: S = similarity.iter().flat_map(|row| row.iter().copied()).sum();
    let denom = if total_coverage > S::one() {
        total_coverage
    } else {
        S::one()
    };
    total_rating / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_items() -> CoverageDiversityFn<f64> {
        CoverageDiversityFn::new(
            vec![1.0, 1.0],
            vec![vec![0.0, 0.5], vec![0.5, 0.0]],
            1.0,
            1.0,
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn direct_formula_examples() {
        let f = two_items();
        assert_eq!(f.eval(&[]).unwrap(), 0.0);
        assert_eq!(f.eval(&[0]).unwrap(), 1.5);
        assert_eq!(f.eval(&[0, 1]).unwrap(), 2.0);
        // Second item adds 0.5 < 1.5.
        assert_eq!(f.marginal(1, &[0]), 0.5);
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert_eq!(
            two_items().eval(&[2]),
            Err(Error::ItemOutOfRange { item: 2, n: 2 })
        );
    }

    #[test]
    fn constructor_validation() {
        let w = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        assert!(CoverageDiversityFn::new(vec![1.0, 1.0], w.clone(), 1.0, 1.0, 0.5).is_err());
        assert!(CoverageDiversityFn::new(vec![1.0, 1.0], w.clone(), -1.0, 1.0, 1.0).is_err());
        let asym = vec![vec![0.0, 0.5], vec![0.4, 0.0]];
        assert!(CoverageDiversityFn::new(vec![1.0, 1.0], asym, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn diagonal_is_charged() {
        let f = CoverageDiversityFn::new(vec![0.0], vec![vec![2.0]], 1.0, 1.0, 3.0).unwrap();
        // rowsum 2 minus η·w_00 = 2 − 6
        assert_eq!(f.value(&[0]), -4.0);
    }

    #[test]
    fn similarity_examples() {
        let w = similarity_from_tags(&[vec![0.6, 0.2], vec![0.3, 0.8]]).unwrap();
        assert!((w[0][1] - 0.13f64.sqrt()).abs() < 1e-15);
        assert_eq!(w[0][1], w[1][0]);
        assert!((w[0][0] - (0.36f64 + 0.04).sqrt()).abs() < 1e-15);

        let same = similarity_from_tags(&[vec![0.3, 0.4], vec![0.3, 0.4]]).unwrap();
        assert!((same[0][1] - 0.5).abs() < 1e-15);

        let disjoint = similarity_from_tags(&[vec![0.7, 0.0], vec![0.0, 0.9]]).unwrap();
        assert_eq!(disjoint[0][1], 0.0);
    }

    #[test]
    fn similarity_validation() {
        assert!(similarity_from_tags::<f64>(&[]).is_err());
        assert!(similarity_from_tags(&[vec![1.5]]).is_err());
        assert!(similarity_from_tags(&[vec![0.5], vec![0.5, 0.1]]).is_err());
    }

    #[test]
    fn auto_scale_balances_terms() {
        let w = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert_eq!(auto_scaled_beta(&[2.0, 6.0], &w), 2.0);
        let tiny = vec![vec![0.1]];
        assert_eq!(auto_scaled_beta(&[3.0], &tiny), 3.0);
    }
}
