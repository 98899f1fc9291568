use std::fmt;

use crate::algorithms::{
    approximation_factor, brute_force, fixed_length_solve, homogeneous_solve, sampling_greedy,
    Constraint, Draws, SamplerConfig,
};
use crate::error::{Error, Result};
use crate::functions::is_monotone;
use crate::harness::monte_carlo::run_seeded;
use crate::harness::stats::Summary;
use crate::Bundle;

/// Which guarantee to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Sampling greedy against the flexible-length optimum.
    Flexible,
    /// Fixed-length solver against the fixed-length optimum, scaled by `1 − k/n`.
    Fixed,
    /// Homogeneous solver with `k ≥ ⌈n/2⌉`, a quarter of the flexible factor.
    Homogeneous,
}

impl BoundMode {
    pub fn constraint(self) -> Constraint {
        match self {
            BoundMode::Flexible => Constraint::Flexible,
            BoundMode::Fixed | BoundMode::Homogeneous => Constraint::Fixed,
        }
    }

    /// Guaranteed fraction of the optimum at acceptance probability `p`.
    pub fn factor(self, p: f64, n: usize, k: usize) -> f64 {
        let base = approximation_factor(p);
        match self {
            BoundMode::Flexible => base,
            BoundMode::Fixed => base * (1.0 - k as f64 / n as f64),
            BoundMode::Homogeneous => base / 4.0,
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Flexible => "flexible",
            BoundMode::Fixed => "fixed",
            BoundMode::Homogeneous => "homogeneous",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundVerdict {
    pub mode: BoundMode,
    pub opt: f64,
    pub mean: f64,
    pub stderr: f64,
    pub factor: f64,
    /// `factor·OPT − 3·stderr`, or `factor·OPT` for a deterministic check.
    pub threshold: f64,
    /// `mean − threshold`.
    pub margin: f64,
    pub pass: bool,
    /// Set when `p = 1` on monotone oracles: a single run against `OPT/2`.
    pub deterministic: bool,
}

/// Compares the empirical mean of the solver for `mode` with its guarantee.
///
/// The optimum comes from exhaustive enumeration, so the bundle must be small.
pub fn bound_check(
    bundle: &Bundle,
    mode: BoundMode,
    cfg: &SamplerConfig,
    rounds: usize,
) -> Result<BoundVerdict> {
    let (n, k) = (bundle.n(), bundle.k());
    if mode == BoundMode::Homogeneous {
        if !bundle.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let half = n.div_ceil(2);
        if k < half {
            return Err(Error::BelowHalf { k, half, n });
        }
    }
    let (_, opt) = brute_force(&bundle.with_fresh_counter(), mode.constraint())?;

    let monotone = (0..k).all(|j| is_monotone(bundle.oracle(j + 1).as_ref(), n));
    if cfg.p == 1.0 && mode == BoundMode::Flexible && monotone {
        let local = bundle.with_fresh_counter();
        let seq = sampling_greedy(&local, &mut Draws::new(cfg))?.output;
        let value = local.evaluate(&seq)?;
        let threshold = 0.5 * opt;
        return Ok(BoundVerdict {
            mode,
            opt,
            mean: value,
            stderr: 0.0,
            factor: 0.5,
            threshold,
            margin: value - threshold,
            pass: value >= threshold,
            deterministic: true,
        });
    }

    let results = run_seeded(bundle, cfg.p, cfg.seed, rounds, |b, d| match mode {
        BoundMode::Flexible => Ok(sampling_greedy(b, d)?.output),
        BoundMode::Fixed => Ok(fixed_length_solve(b, d)?.sequence),
        BoundMode::Homogeneous => Ok(homogeneous_solve(b, d)?.sequence),
    })?;
    let values: Vec<f64> = results.iter().map(|r| r.value).collect();
    let summary = Summary::of(&values);
    let factor = mode.factor(cfg.p, n, k);
    let threshold = factor * opt - 3.0 * summary.stderr;
    Ok(BoundVerdict {
        mode,
        opt,
        mean: summary.mean,
        stderr: summary.stderr,
        factor,
        threshold,
        margin: summary.mean - threshold,
        pass: summary.mean >= threshold,
        deterministic: false,
    })
}
