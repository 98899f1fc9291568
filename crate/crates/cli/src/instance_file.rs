//! Instance files: TOML metadata plus optional dense matrix files.
//!
//! ```toml
//! n = 3
//! family = "covdiv"
//! ratings = [3.0, 1.0, 2.0]
//! eta = 35.0
//! tags_file = "movies.tags.txt"   # or similarity_file, or inline similarity
//! ```
//!
//! Matrix files hold one row per line, whitespace separated, no header. Paths
//! are resolved relative to the instance file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use seqsub::functions::{
    auto_scaled_beta, similarity_from_tags, CoverageDiversityFn, ModularPenaltyFn,
};
use seqsub::harness::{Instance, Oracles};
use seqsub::SetFunction;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(flatten)]
    pub oracle: OracleSpec,
    /// One oracle per position for heterogeneous bundles; the top-level oracle
    /// then only supplies baseline data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_position: Option<Vec<OracleSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum OracleSpec {
    Covdiv(CovDivSpec),
    ModularPenalty(PenaltySpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovDivSpec {
    pub ratings: Vec<f64>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Auto-scaled from ratings and similarity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags_file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltySpec {
    pub rewards: Vec<f64>,
    /// Symmetric pairwise penalties; all zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<Vec<Vec<f64>>>,
}

fn default_alpha() -> f64 {
    1.0
}

fn default_eta() -> f64 {
    seqsub::harness::DEFAULT_ETA
}

/// A parsed oracle together with the data the baselines need.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedOracle {
    CoverageDiversity(CoverageDiversityFn<f64>),
    Penalty(ModularPenaltyFn<f64>),
}

impl LoadedOracle {
    fn as_set_function(&self) -> Arc<dyn SetFunction<f64>> {
        match self {
            LoadedOracle::CoverageDiversity(f) => Arc::new(f.clone()),
            LoadedOracle::Penalty(f) => Arc::new(f.clone()),
        }
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Parses a headerless whitespace-separated matrix.
pub fn parse_matrix(text: &str, path: &Path) -> CliResult<Vec<Vec<f64>>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(lineno, line)| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|e| CliError::Parse {
                        path: path.to_path_buf(),
                        message: format!("line {}: '{tok}': {e}", lineno + 1),
                    })
                })
                .collect()
        })
        .collect()
}

pub fn read_matrix(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    parse_matrix(&read_text(path)?, path)
}

pub fn format_matrix(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

impl InstanceFile {
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        Self::parse(&read_text(path)?, path)
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self)
            .map_err(|e| CliError::Malformed(format!("cannot serialize instance: {e}")))
    }

    /// Builds the oracles; relative matrix paths resolve against `base_dir`.
    pub fn load(&self, base_dir: &Path) -> CliResult<(LoadedOracle, Instance)> {
        let main = load_oracle(&self.oracle, self.n, base_dir)?;
        let oracles = match &self.per_position {
            None => Oracles::Homogeneous(main.as_set_function()),
            Some(specs) => {
                if specs.is_empty() {
                    return Err(CliError::Malformed("per_position must not be empty".into()));
                }
                let fs = specs
                    .iter()
                    .map(|s| load_oracle(s, self.n, base_dir).map(|o| o.as_set_function()))
                    .collect::<CliResult<Vec<_>>>()?;
                Oracles::PerPosition(fs)
            }
        };
        let instance = match &main {
            LoadedOracle::CoverageDiversity(f) => Instance {
                oracles,
                coverage: Some(Arc::new(f.clone())),
                ratings: Some(f.ratings().to_vec()),
            },
            LoadedOracle::Penalty(f) => Instance {
                oracles,
                coverage: None,
                ratings: Some(f.rewards().to_vec()),
            },
        };
        Ok((main, instance))
    }
}

/// Reads and loads an instance file in one step.
pub fn load_instance(path: &Path) -> CliResult<(LoadedOracle, Instance)> {
    let file = InstanceFile::read(path)?;
    file.load(path.parent().unwrap_or(Path::new(".")))
}

fn load_oracle(spec: &OracleSpec, n: usize, base_dir: &Path) -> CliResult<LoadedOracle> {
    match spec {
        OracleSpec::Covdiv(c) => {
            check_len("ratings", c.ratings.len(), n)?;
            let sources = [
                c.similarity.is_some(),
                c.similarity_file.is_some(),
                c.tags_file.is_some(),
            ];
            if sources.iter().filter(|&&s| s).count() != 1 {
                return Err(CliError::Malformed(
                    "covdiv needs exactly one of similarity, similarity_file, tags_file".into(),
                ));
            }
            let similarity = if let Some(w) = &c.similarity {
                w.clone()
            } else if let Some(p) = &c.similarity_file {
                read_matrix(&base_dir.join(p))?
            } else {
                let path = base_dir.join(c.tags_file.as_ref().expect("checked above"));
                let tags = read_matrix(&path)?;
                check_len("tag rows", tags.len(), n)?;
                similarity_from_tags(&tags)?
            };
            check_len("similarity rows", similarity.len(), n)?;
            let beta = c
                .beta
                .unwrap_or_else(|| auto_scaled_beta(&c.ratings, &similarity));
            Ok(LoadedOracle::CoverageDiversity(CoverageDiversityFn::new(
                c.ratings.clone(),
                similarity,
                c.alpha,
                beta,
                c.eta,
            )?))
        }
        OracleSpec::ModularPenalty(p) => {
            check_len("rewards", p.rewards.len(), n)?;
            let f = match &p.penalty {
                Some(c) => ModularPenaltyFn::new(p.rewards.clone(), c.clone())?,
                None => ModularPenaltyFn::modular(p.rewards.clone()),
            };
            Ok(LoadedOracle::Penalty(f))
        }
    }
}

fn check_len(what: &str, got: usize, n: usize) -> CliResult<()> {
    if got != n {
        return Err(CliError::Malformed(format!(
            "{what}: expected {n} entries, got {got}"
        )));
    }
    Ok(())
}
