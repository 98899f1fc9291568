use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Sample summary of per-round values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator); zero for one sample.
    pub std: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let count = values.len();
        if count == 0 {
            return Summary {
                count,
                mean: f64::NAN,
                std: f64::NAN,
                stderr: f64::NAN,
                ci95: (f64::NAN, f64::NAN),
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            return Summary {
                count,
                mean: min,
                std: 0.0,
                stderr: 0.0,
                ci95: (min, min),
                min,
                max,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let var = if count > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        let std = var.sqrt();
        let stderr = std / (count as f64).sqrt();
        // Rounding can push the mean a hair outside the sample range.
        let mean = mean.clamp(min, max);
        Summary {
            count,
            mean,
            std,
            stderr,
            ci95: (mean - 1.96 * stderr, mean + 1.96 * stderr),
            min,
            max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Minimum pooled count for a category to get its own bin.
const MIN_BIN_COUNT: u64 = 10;

/// Two-sample chi-square test of homogeneity between categorical samples.
///
/// Categories whose pooled count is below 10 are merged into one bin.
pub fn two_sample_chi_square<K: Ord + Clone>(
    a: &BTreeMap<K, u64>,
    b: &BTreeMap<K, u64>,
) -> ChiSquareTest {
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut bins: Vec<(u64, u64)> = Vec::new();
    let mut rare = (0u64, 0u64);
    for key in keys {
        let ca = a.get(key).copied().unwrap_or(0);
        let cb = b.get(key).copied().unwrap_or(0);
        if ca + cb < MIN_BIN_COUNT {
            rare.0 += ca;
            rare.1 += cb;
        } else {
            bins.push((ca, cb));
        }
    }
    if rare.0 + rare.1 > 0 {
        bins.push(rare);
    }
    let na: u64 = bins.iter().map(|x| x.0).sum();
    let nb: u64 = bins.iter().map(|x| x.1).sum();
    if bins.len() < 2 || na == 0 || nb == 0 {
        return ChiSquareTest {
            statistic: 0.0,
            degrees_of_freedom: 0,
            p_value: 1.0,
        };
    }
    let total = (na + nb) as f64;
    let statistic: f64 = bins
        .iter()
        .map(|&(ca, cb)| {
            let pooled = (ca + cb) as f64;
            let ea = na as f64 * pooled / total;
            let eb = nb as f64 * pooled / total;
            (ca as f64 - ea).powi(2) / ea + (cb as f64 - eb).powi(2) / eb
        })
        .sum();
    let df = bins.len() - 1;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    ChiSquareTest {
        statistic,
        degrees_of_freedom: df,
        p_value: 1.0 - dist.cdf(statistic),
    }
}

/// Tallies occurrences of each value.
pub fn tally<K: Ord, I: IntoIterator<Item = K>>(items: I) -> BTreeMap<K, u64> {
    let mut counts = BTreeMap::new();
    for item in items {
        *counts.entry(item).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_basics() {
        let s = Summary::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((s.min, s.max), (1.0, 4.0));
        let one = Summary::of(&[7.0]);
        assert_eq!((one.mean, one.std), (7.0, 0.0));
        // 0.1 summed 3 times is not 0.3; identical samples still get zero spread.
        let same = Summary::of(&[0.1; 3]);
        assert_eq!((same.mean, same.std, same.stderr), (0.1, 0.0, 0.0));
    }

    #[test]
    fn identical_samples_do_not_reject() {
        let a = tally(["x"; 50].into_iter().chain(["y"; 50]));
        let t = two_sample_chi_square(&a, &a);
        assert_eq!(t.statistic, 0.0);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn very_different_samples_reject() {
        let a = tally(std::iter::repeat_n(0, 900).chain(std::iter::repeat_n(1, 100)));
        let b = tally(std::iter::repeat_n(0, 100).chain(std::iter::repeat_n(1, 900)));
        let t = two_sample_chi_square(&a, &b);
        assert_eq!(t.degrees_of_freedom, 1);
        assert!(t.p_value < 1e-10);
    }

    #[test]
    fn known_statistic() {
        // 2x2 table [[30, 10], [20, 20]]: chi-square = 5.333..., df = 1.
        let a = BTreeMap::from([(0, 30), (1, 10)]);
        let b = BTreeMap::from([(0, 20), (1, 20)]);
        let t = two_sample_chi_square(&a, &b);
        assert!((t.statistic - 16.0 / 3.0).abs() < 1e-12);
        assert!((t.p_value - 0.020_921).abs() < 1e-5);
    }
}
