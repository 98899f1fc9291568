use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqsub::algorithms::{optimal_p, Constraint, Draws, SamplerConfig};
use seqsub::functions::{random_nonnegative_penalty, submodularity_probe, tiny_instance};
use seqsub::harness::{
    bound_check, make_weights, run_monte_carlo, solve, Algorithm, BoundMode, ExperimentSpec,
    RunStats, SyntheticData, UserTypeDistribution, DEFAULT_ETA,
};
use seqsub::WeightProfile;
use serde::Deserialize;

use crate::error::{CliError, CliResult, EXIT_BOUND_VIOLATED, EXIT_OK};
use crate::instance_file::{
    format_matrix, load_instance, read_matrix, read_text, write_text, CovDivSpec, InstanceFile,
    OracleSpec, PenaltySpec,
};

#[derive(Debug, Parser)]
#[command(
    name = "seqsub",
    version,
    about = "Sequential submodular maximization solvers and experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print the sequence, its value and the oracle calls.
    Solve(SolveArgs),
    /// Run a seeded Monte Carlo experiment and write per-round and summary CSVs.
    Experiment(ExperimentArgs),
    /// Check a solver's mean against its guarantee, using the exact optimum.
    Check(CheckArgs),
    /// Write a synthetic instance.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "flexible")]
    pub constraint: Constraint,
    #[arg(long, default_value = "sg")]
    pub algorithm: Algorithm,
    #[arg(long, default_value_t = optimal_p())]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// uniform | normal:MU,SIGMA | explicit:PATH
    #[arg(long, default_value = "uniform")]
    pub weights: String,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Overrides the spec file; 100 when neither sets it.
    #[arg(long)]
    pub rounds: Option<usize>,
    /// Per-round CSV; the summary goes next to it with a `.summary.csv` suffix.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "flexible")]
    pub constraint: Constraint,
    /// Check the homogeneous solver (needs k ≥ ⌈n/2⌉) instead.
    #[arg(long)]
    pub homogeneous: bool,
    #[arg(long, default_value_t = 10_000)]
    pub rounds: usize,
    #[arg(long, default_value_t = optimal_p())]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "uniform")]
    pub weights: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Covdiv,
    ModularPenalty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// The three-item modular-penalty example.
    Tiny,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Tag dimension (covdiv only).
    #[arg(long, default_value_t = 20)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "covdiv")]
    pub family: Family,
    /// Probability that a tag entry (covdiv) or item pair (modular-penalty) is nonzero.
    #[arg(long, default_value_t = 0.2)]
    pub density: f64,
    #[arg(long, default_value_t = DEFAULT_ETA)]
    pub eta: f64,
    /// Overrides the auto-scaled rating weight.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Overrides the auto-scaled diversity weight.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Instance TOML; a covdiv tag matrix is written beside it as `<stem>.tags.txt`.
    #[arg(long)]
    pub out: PathBuf,
}

/// Runs a command, writing human-readable output to `out`; returns the exit status.
pub fn run(cli: Cli, out: &mut String) -> CliResult<i32> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Experiment(a) => cmd_experiment(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
    }
}

/// `uniform`, `normal:MU,SIGMA` or `explicit:PATH`.
pub fn parse_weights(spec: &str) -> CliResult<UserTypeDistribution> {
    if let Some(path) = spec.strip_prefix("explicit:") {
        let path = Path::new(path);
        let values: Vec<f64> = read_matrix(path)?.into_iter().flatten().collect();
        return Ok(UserTypeDistribution::Explicit(values));
    }
    spec.parse()
        .map_err(|e: seqsub::Error| CliError::Malformed(e.to_string()))
}

fn weight_profile(spec: &str, k: usize) -> CliResult<WeightProfile<f64>> {
    Ok(make_weights(&parse_weights(spec)?, k)?)
}

fn check_k(k: usize, n: usize) -> CliResult<()> {
    if k == 0 || k > n {
        return Err(CliError::Infeasible(seqsub::Error::InvalidK { k, n }));
    }
    Ok(())
}

pub fn cmd_solve(a: &SolveArgs, out: &mut String) -> CliResult<i32> {
    let (_, instance) = load_instance(&a.instance)?;
    check_k(a.k, instance.n())?;
    let bundle = instance.bundle(weight_profile(&a.weights, a.k)?)?;
    let cfg = SamplerConfig::new(a.p, a.seed)?;
    let seq = solve(
        a.algorithm,
        a.constraint,
        &instance,
        &bundle,
        &mut Draws::new(&cfg),
    )?;
    let calls = bundle.oracle_calls();
    let value = bundle.evaluate(&seq)?;
    writeln!(out, "{seq}").unwrap();
    writeln!(out, "F={value}").unwrap();
    writeln!(out, "oracle_calls={calls}").unwrap();
    Ok(EXIT_OK)
}

/// Experiment description read by `experiment --spec`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    /// Instance TOML, relative to the spec file.
    pub instance: PathBuf,
    pub algorithms: Vec<String>,
    pub distributions: Vec<String>,
    #[serde(default = "default_constraints")]
    pub constraints: Vec<String>,
    pub k: usize,
    #[serde(default = "optimal_p")]
    pub p: f64,
    #[serde(default)]
    pub seed: u64,
    pub rounds: Option<usize>,
}

fn default_constraints() -> Vec<String> {
    vec!["flexible".into()]
}

fn malformed<E: ToString>(e: E) -> CliError {
    CliError::Malformed(e.to_string())
}

pub fn cmd_experiment(a: &ExperimentArgs, out: &mut String) -> CliResult<i32> {
    let text = read_text(&a.spec)?;
    let spec: SpecFile = toml::from_str(&text).map_err(|e| CliError::Parse {
        path: a.spec.clone(),
        message: e.to_string(),
    })?;
    let rounds = a.rounds.or(spec.rounds).unwrap_or(100);
    if rounds == 0 {
        return Err(CliError::Malformed("rounds must be at least 1".into()));
    }
    let base = a.spec.parent().unwrap_or(Path::new("."));
    let (_, instance) = load_instance(&base.join(&spec.instance))?;
    check_k(spec.k, instance.n())?;
    let algorithms: Vec<Algorithm> = spec
        .algorithms
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let distributions: Vec<UserTypeDistribution> = spec
        .distributions
        .iter()
        .map(|s| parse_weights(s))
        .collect::<CliResult<_>>()?;
    let constraints: Vec<Constraint> = spec
        .constraints
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()
        .map_err(malformed)?;
    if algorithms.is_empty() || distributions.is_empty() || constraints.is_empty() {
        return Err(CliError::Malformed(
            "algorithms, distributions and constraints must be nonempty".into(),
        ));
    }

    let mut cells = Vec::new();
    for constraint in constraints {
        let run = ExperimentSpec {
            algorithms: algorithms.clone(),
            distributions: distributions.clone(),
            constraint,
            k: spec.k,
            p: spec.p,
            rounds,
            base_seed: spec.seed,
        };
        cells.extend(run_monte_carlo(&instance, &run)?.cells);
    }
    let stats = RunStats { cells };

    let header = format!(
        "# seed={} p={} k={} rounds={} instance={}\n",
        spec.seed,
        spec.p,
        spec.k,
        rounds,
        spec.instance.display()
    );
    write_text(&a.out, &(header.clone() + &rounds_csv(&stats)?))?;
    let summary_path = summary_path(&a.out);
    let summary = summary_csv(&stats)?;
    write_text(&summary_path, &(header + &summary))?;
    out.push_str(&summary);
    Ok(EXIT_OK)
}

/// `results.csv` → `results.summary.csv`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn rounds_csv(stats: &RunStats) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "algorithm",
        "distribution",
        "constraint",
        "round",
        "seed",
        "value",
        "length",
        "oracle_calls",
    ])?;
    for c in &stats.cells {
        for r in &c.rounds {
            w.write_record([
                c.algorithm.to_string(),
                c.distribution.label(),
                c.constraint.to_string(),
                r.round.to_string(),
                r.seed.to_string(),
                r.value.to_string(),
                r.length.to_string(),
                r.oracle_calls.to_string(),
            ])?;
        }
    }
    csv_string(w)
}

fn summary_csv(stats: &RunStats) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "algorithm",
        "distribution",
        "constraint",
        "rounds",
        "mean",
        "std",
        "ci95_low",
        "ci95_high",
        "min",
        "max",
        "mean_length",
        "mean_oracle_calls",
    ])?;
    for c in &stats.cells {
        let s = &c.summary;
        w.write_record([
            c.algorithm.to_string(),
            c.distribution.label(),
            c.constraint.to_string(),
            s.count.to_string(),
            s.mean.to_string(),
            s.std.to_string(),
            s.ci95.0.to_string(),
            s.ci95.1.to_string(),
            s.min.to_string(),
            s.max.to_string(),
            c.mean_length.to_string(),
            c.mean_oracle_calls.to_string(),
        ])?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn cmd_check(a: &CheckArgs, out: &mut String) -> CliResult<i32> {
    let (_, instance) = load_instance(&a.instance)?;
    check_k(a.k, instance.n())?;
    let bundle = instance.bundle(weight_profile(&a.weights, a.k)?)?;
    let mode = match (a.homogeneous, a.constraint) {
        (true, _) => BoundMode::Homogeneous,
        (false, Constraint::Flexible) => BoundMode::Flexible,
        (false, Constraint::Fixed) => BoundMode::Fixed,
    };
    let cfg = SamplerConfig::new(a.p, a.seed)?;
    let v = bound_check(&bundle, mode, &cfg, a.rounds)?;
    writeln!(
        out,
        "{} mode={} deterministic={} opt={} mean={} stderr={} factor={} threshold={} margin={}",
        if v.pass { "PASS" } else { "FAIL" },
        v.mode,
        v.deterministic,
        v.opt,
        v.mean,
        v.stderr,
        v.factor,
        v.threshold,
        v.margin
    )
    .unwrap();
    Ok(if v.pass { EXIT_OK } else { EXIT_BOUND_VIOLATED })
}

pub fn cmd_gen(a: &GenArgs, out: &mut String) -> CliResult<i32> {
    let file = match (a.preset, a.family) {
        (Some(Preset::Tiny), _) => {
            let f = tiny_instance::<f64>();
            InstanceFile {
                n: 3,
                oracle: OracleSpec::ModularPenalty(PenaltySpec {
                    rewards: f.rewards().to_vec(),
                    penalty: Some(f.penalty_rows()),
                }),
                per_position: None,
            }
        }
        (None, Family::ModularPenalty) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            if !(0.0..=1.0).contains(&a.density) {
                return Err(CliError::Malformed(format!(
                    "density {} is outside [0, 1]",
                    a.density
                )));
            }
            let f = random_nonnegative_penalty::<f64, _>(a.n, 5, 4, a.density, &mut rng)?;
            InstanceFile {
                n: a.n,
                oracle: OracleSpec::ModularPenalty(PenaltySpec {
                    rewards: f.rewards().to_vec(),
                    penalty: Some(f.penalty_rows()),
                }),
                per_position: None,
            }
        }
        (None, Family::Covdiv) => {
            let mut data = SyntheticData::generate(a.n, a.d, a.density, a.eta, a.seed)?;
            data.alpha = a.alpha.unwrap_or(data.alpha);
            data.beta = a.beta.unwrap_or(data.beta);
            let f = data.build()?;
            let probe = submodularity_probe(&f, a.n, 1000, a.seed);
            if !probe.passed() {
                return Err(CliError::Malformed(format!(
                    "generated instance failed the submodularity probe: {:?}",
                    probe.violations.first()
                )));
            }
            let stem = a
                .out
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let tags_name = format!("{stem}.tags.txt");
            write_text(
                &a.out.with_file_name(&tags_name),
                &format_matrix(&data.tags),
            )?;
            InstanceFile {
                n: a.n,
                oracle: OracleSpec::Covdiv(CovDivSpec {
                    ratings: data.ratings.clone(),
                    alpha: data.alpha,
                    beta: Some(data.beta),
                    eta: data.eta,
                    similarity: None,
                    similarity_file: None,
                    tags_file: Some(PathBuf::from(tags_name)),
                }),
                per_position: None,
            }
        }
    };
    write_text(&a.out, &file.to_toml()?)?;
    writeln!(out, "wrote {}", a.out.display()).unwrap();
    Ok(EXIT_OK)
}
