use std::path::Path;
use std::process::{Command, Output};

use seqsub::functions::{submodularity_probe, tiny_instance};
use seqsub::harness::{SyntheticData, DEFAULT_ETA};
use seqsub_cli::instance_file::{load_instance, LoadedOracle};

fn seqsub(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqsub"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tiny_file(dir: &Path) {
    let o = seqsub(
        dir,
        &[
            "gen",
            "--family",
            "modular-penalty",
            "--n",
            "3",
            "--preset",
            "tiny",
            "--out",
            "t.toml",
        ],
    );
    assert!(o.status.success(), "{o:?}");
}

#[test]
fn brute_force_on_tiny_instance() {
    let dir = tempfile::tempdir().unwrap();
    tiny_file(dir.path());
    std::fs::write(dir.path().join("ones.txt"), "1 1\n").unwrap();
    let o = seqsub(
        dir.path(),
        &[
            "solve",
            "--instance",
            "t.toml",
            "--algorithm",
            "brute",
            "--k",
            "2",
            "--constraint",
            "flexible",
            "--weights",
            "explicit:ones.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("0 2"));
    assert_eq!(lines.next(), Some("F=8"));
    assert!(lines.next().unwrap().starts_with("oracle_calls="));
}

#[test]
fn quality_sorts_by_rating() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("q.toml"),
        "n = 3\nfamily = \"covdiv\"\nratings = [3, 1, 2]\nsimilarity = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]\n",
    )
    .unwrap();
    let o = seqsub(
        dir.path(),
        &[
            "solve",
            "--instance",
            "q.toml",
            "--algorithm",
            "quality",
            "--k",
            "2",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0 2"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    tiny_file(dir.path());
    let d = dir.path();
    assert_eq!(
        seqsub(d, &["solve", "--instance", "t.toml", "--k", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        seqsub(d, &["solve", "--instance", "missing.toml", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        seqsub(
            d,
            &["solve", "--instance", "t.toml", "--k", "1", "--p", "2"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        seqsub(
            d,
            &[
                "solve",
                "--instance",
                "t.toml",
                "--k",
                "1",
                "--weights",
                "gamma"
            ]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(seqsub(d, &["solve", "--bogus"]).status.code(), Some(2));
    std::fs::write(d.join("bad.toml"), "n = 3\nfamily = \"nope\"\n").unwrap();
    assert_eq!(
        seqsub(d, &["solve", "--instance", "bad.toml", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_passes_on_tiny_instance() {
    let dir = tempfile::tempdir().unwrap();
    tiny_file(dir.path());
    let o = seqsub(
        dir.path(),
        &[
            "check",
            "--instance",
            "t.toml",
            "--k",
            "2",
            "--constraint",
            "flexible",
            "--rounds",
            "5000",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn check_monotone_with_certain_acceptance() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("m.toml"),
        "n = 4\nfamily = \"modular-penalty\"\nrewards = [1, 4, 2, 3]\n",
    )
    .unwrap();
    let o = seqsub(
        dir.path(),
        &[
            "check",
            "--instance",
            "m.toml",
            "--k",
            "2",
            "--p",
            "1",
            "--rounds",
            "10",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("deterministic=true") && out.contains("margin="),
        "{out}"
    );
}

#[test]
fn check_oversized_instance_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let o = seqsub(
        dir.path(),
        &["gen", "--n", "30", "--d", "4", "--out", "big.toml"],
    );
    assert!(o.status.success());
    let o = seqsub(
        dir.path(),
        &[
            "check",
            "--instance",
            "big.toml",
            "--k",
            "5",
            "--rounds",
            "10",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_round_trips_and_is_submodular() {
    let dir = tempfile::tempdir().unwrap();
    let o = seqsub(
        dir.path(),
        &[
            "gen", "--n", "10", "--d", "5", "--seed", "4", "--out", "g.toml",
        ],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("g.toml")).unwrap();
    assert!(text.contains("eta = 35.0"));
    let (loaded, _) = load_instance(&dir.path().join("g.toml")).unwrap();
    let LoadedOracle::CoverageDiversity(f) = loaded else {
        panic!("wrong family")
    };
    let expected = SyntheticData::generate(10, 5, 0.2, DEFAULT_ETA, 4)
        .unwrap()
        .build()
        .unwrap();
    assert_eq!(f, expected);
    assert!(submodularity_probe(&f, 10, 2000, 1).passed());
}

#[test]
fn tiny_preset_is_the_tiny_instance() {
    let dir = tempfile::tempdir().unwrap();
    tiny_file(dir.path());
    let (loaded, _) = load_instance(&dir.path().join("t.toml")).unwrap();
    assert_eq!(loaded, LoadedOracle::Penalty(tiny_instance::<f64>()));
}

fn write_spec(dir: &Path, algorithms: &str, rounds: Option<usize>) {
    let o = seqsub(
        dir,
        &[
            "gen",
            "--n",
            "12",
            "--d",
            "6",
            "--seed",
            "2",
            "--out",
            "inst.toml",
        ],
    );
    assert!(o.status.success());
    let mut spec = format!(
        "instance = \"inst.toml\"\nalgorithms = {algorithms}\ndistributions = [\"uniform\", \"normal:2,1\"]\nconstraints = [\"flexible\", \"fixed\"]\nk = 4\nseed = 11\n"
    );
    if let Some(r) = rounds {
        spec.push_str(&format!("rounds = {r}\n"));
    }
    std::fs::write(dir.join("spec.toml"), spec).unwrap();
}

fn read_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn experiment_is_byte_identical_on_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_spec(d, "[\"sg\", \"covdiv\", \"quality\"]", None);
    assert!(seqsub(
        d,
        &[
            "experiment",
            "--spec",
            "spec.toml",
            "--rounds",
            "30",
            "--out",
            "a.csv"
        ]
    )
    .status
    .success());
    assert!(seqsub(
        d,
        &[
            "experiment",
            "--spec",
            "spec.toml",
            "--rounds",
            "30",
            "--out",
            "b.csv"
        ]
    )
    .status
    .success());
    assert_eq!(
        std::fs::read(d.join("a.csv")).unwrap(),
        std::fs::read(d.join("b.csv")).unwrap()
    );
    assert_eq!(
        std::fs::read(d.join("a.summary.csv")).unwrap(),
        std::fs::read(d.join("b.summary.csv")).unwrap()
    );
    // 3 algorithms x 2 distributions x 2 constraints.
    assert_eq!(read_rows(&d.join("a.csv")).len(), 30 * 12);
    assert_eq!(read_rows(&d.join("a.summary.csv")).len(), 12);
}

#[test]
fn summary_is_recomputable_from_rounds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_spec(d, "[\"sg\"]", Some(25));
    assert!(
        seqsub(d, &["experiment", "--spec", "spec.toml", "--out", "r.csv"])
            .status
            .success()
    );
    let rounds = read_rows(&d.join("r.csv"));
    for s in read_rows(&d.join("r.summary.csv")) {
        let values: Vec<f64> = rounds
            .iter()
            .filter(|r| r[0] == s[0] && r[1] == s[1] && r[2] == s[2])
            .map(|r| r[5].parse().unwrap())
            .collect();
        assert_eq!(values.len(), 25);
        let mean = values.iter().sum::<f64>() / 25.0;
        assert!((mean - s[4].parse::<f64>().unwrap()).abs() < 1e-9);
    }
}

#[test]
fn single_round_deterministic_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_spec(d, "[\"quality\"]", None);
    std::fs::write(
        d.join("one.toml"),
        "instance = \"inst.toml\"\nalgorithms = [\"quality\"]\ndistributions = [\"uniform\"]\nk = 3\n",
    )
    .unwrap();
    assert!(seqsub(
        d,
        &[
            "experiment",
            "--spec",
            "one.toml",
            "--rounds",
            "1",
            "--out",
            "one.csv"
        ]
    )
    .status
    .success());
    let summary = read_rows(&d.join("one.summary.csv"));
    assert_eq!(summary.len(), 1);
    assert_eq!(&summary[0][5], "0");
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("s.toml"), "algorithms = 3\n").unwrap();
    assert_eq!(
        seqsub(d, &["experiment", "--spec", "s.toml", "--out", "o.csv"])
            .status
            .code(),
        Some(2)
    );
}
