use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::objective::WeightProfile;

/// How user patience is distributed over positions `1..=k`.
#[derive(Debug, Clone, PartialEq)]
pub enum UserTypeDistribution {
    /// `λ_j = 1/k`.
    Uniform,
    /// Normal density evaluated at each integer `j`, renormalized over `1..=k`.
    Normal { mu: f64, sigma: f64 },
    /// Used as given.
    Explicit(Vec<f64>),
}

impl UserTypeDistribution {
    /// Short label used in result tables.
    pub fn label(&self) -> String {
        match self {
            UserTypeDistribution::Uniform => "uniform".into(),
            UserTypeDistribution::Normal { mu, sigma } => format!("normal:{mu},{sigma}"),
            UserTypeDistribution::Explicit(w) => format!("explicit[{}]", w.len()),
        }
    }
}

impl fmt::Display for UserTypeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for UserTypeDistribution {
    type Err = Error;

    /// Parses `uniform` or `normal:MU,SIGMA`. Explicit profiles come from files.
    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            return Ok(UserTypeDistribution::Uniform);
        }
        if let Some(rest) = s.strip_prefix("normal:") {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if let [mu, sigma] = parts[..] {
                let mu = mu
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidParameter(format!("bad mu '{mu}': {e}")))?;
                let sigma = sigma
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidParameter(format!("bad sigma '{sigma}': {e}")))?;
                return Ok(UserTypeDistribution::Normal { mu, sigma });
            }
        }
        Err(Error::InvalidParameter(format!(
            "unknown weight distribution '{s}' (expected uniform or normal:MU,SIGMA)"
        )))
    }
}

/// Builds `λ_1..λ_k` for `dist`.
pub fn make_weights(dist: &UserTypeDistribution, k: usize) -> Result<WeightProfile<f64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    match dist {
        UserTypeDistribution::Uniform => WeightProfile::new(vec![1.0 / k as f64; k]),
        UserTypeDistribution::Normal { mu, sigma } => {
            if !(*sigma > 0.0) || !sigma.is_finite() || !mu.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "normal profile needs finite mu and sigma > 0, got mu = {mu}, sigma = {sigma}"
                )));
            }
            // The 1/(σ√2π) factor cancels on renormalization.
            let density: Vec<f64> = (1..=k)
                .map(|j| {
                    let z = (j as f64 - mu) / sigma;
                    (-0.5 * z * z).exp()
                })
                .collect();
            let total: f64 = density.iter().sum();
            if !(total > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "normal profile mu = {mu}, sigma = {sigma} puts no mass on 1..={k}"
                )));
            }
            WeightProfile::new(density.into_iter().map(|d| d / total).collect())
        }
        UserTypeDistribution::Explicit(lambdas) => {
            if lambdas.len() != k {
                return Err(Error::WeightCount {
                    expected: k,
                    got: lambdas.len(),
                });
            }
            WeightProfile::new(lambdas.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_profile() {
        let w = make_weights(&UserTypeDistribution::Uniform, 4).unwrap();
        assert_eq!(w.as_slice(), &[0.25; 4]);
    }

    #[test]
    fn normal_profile_matches_direct_pdf() {
        let w = make_weights(
            &UserTypeDistribution::Normal {
                mu: 2.0,
                sigma: 1.0,
            },
            3,
        )
        .unwrap();
        // Oracle: unnormalized standard normal pdf at -1, 0, 1.
        let pdf = |z: f64| (-z * z / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let raw = [pdf(-1.0), pdf(0.0), pdf(1.0)];
        let z: f64 = raw.iter().sum();
        for (got, want) in w.as_slice().iter().zip(raw.iter().map(|r| r / z)) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((w.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn narrow_normal_concentrates() {
        let w = make_weights(
            &UserTypeDistribution::Normal {
                mu: 2.0,
                sigma: 1e-3,
            },
            3,
        )
        .unwrap();
        assert_eq!(w.as_slice(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn invalid_profiles() {
        assert!(make_weights(
            &UserTypeDistribution::Normal {
                mu: 2.0,
                sigma: 0.0
            },
            3
        )
        .is_err());
        assert!(make_weights(
            &UserTypeDistribution::Normal {
                mu: 2.0,
                sigma: -1.0
            },
            3
        )
        .is_err());
        assert!(make_weights(
            &UserTypeDistribution::Normal {
                mu: 1e6,
                sigma: 1.0
            },
            3
        )
        .is_err());
        assert!(make_weights(&UserTypeDistribution::Explicit(vec![1.0]), 2).is_err());
        assert!(make_weights(&UserTypeDistribution::Explicit(vec![1.0, -1.0]), 2).is_err());
    }

    #[test]
    fn explicit_is_kept_as_given() {
        let w = make_weights(&UserTypeDistribution::Explicit(vec![2.0, 0.0, 5.0]), 3).unwrap();
        assert_eq!(w.as_slice(), &[2.0, 0.0, 5.0]);
    }

    #[test]
    fn parse_labels() {
        assert_eq!(
            "uniform".parse::<UserTypeDistribution>().unwrap(),
            UserTypeDistribution::Uniform
        );
        assert_eq!(
            "normal:10,5".parse::<UserTypeDistribution>().unwrap(),
            UserTypeDistribution::Normal {
                mu: 10.0,
                sigma: 5.0
            }
        );
        assert!("normal:10".parse::<UserTypeDistribution>().is_err());
        assert!("gamma".parse::<UserTypeDistribution>().is_err());
    }
}
