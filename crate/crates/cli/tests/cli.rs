use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use expander_rewire::edgelist;
use expander_rewire::trace::{parse_trace_csv, TraceMetadata};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_expander-rewire"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn run_err(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    out
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &TempDir, name: &str, flags: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["generate"];
    args.extend_from_slice(flags);
    args.extend_from_slice(&["--out", path_str(&path)]);
    run_ok(&args);
    path
}

fn header(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

fn metric_values(csv: &str, metric: &str) -> Vec<String> {
    csv.lines()
        .filter(|l| l.starts_with(&format!("{metric},")))
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect()
}

#[test]
fn generated_headers() {
    let dir = TempDir::new().unwrap();
    let ring = generate(
        &dir,
        "g.el",
        &[
            "--family",
            "ring-of-cliques",
            "--degree",
            "4",
            "--num-cliques",
            "50",
        ],
    );
    assert_eq!(header(&ring), "250 500");
    let poc = generate(
        &dir,
        "p.el",
        &[
            "--family",
            "path-of-cliques",
            "--clique-size",
            "10",
            "--num-cliques",
            "3",
        ],
    );
    assert_eq!(header(&poc), "30 137");
    let k4 = generate(&dir, "k4.el", &["--family", "complete", "--n", "4"]);
    assert_eq!(header(&k4), "4 6");
    let text = fs::read_to_string(&k4).unwrap();
    assert_eq!(
        text,
        "4 6\n# generator: complete n=4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
    );
}

#[test]
fn generate_parse_write_round_trip() {
    let dir = TempDir::new().unwrap();
    for flags in [
        &["--family", "dumbbell", "--clique-size", "6"][..],
        &[
            "--family",
            "random-regular",
            "--n",
            "20",
            "--degree",
            "3",
            "--seed",
            "4",
        ][..],
        &["--family", "cycle", "--n", "9"][..],
    ] {
        let path = generate(&dir, "r.el", flags);
        let text = fs::read_to_string(&path).unwrap();
        let list = edgelist::parse(&text).unwrap();
        assert_eq!(edgelist::write(&list), text);
    }
    let dumbbell = generate(&dir, "d.el", &["--family", "dumbbell"]);
    assert_eq!(header(&dumbbell), "50 601");
}

#[test]
fn generate_to_stdout_and_usage_errors() {
    let text = run_ok(&["generate", "--family", "path", "--n", "3"]);
    assert_eq!(text, "3 2\n# generator: path n=3\n0 1\n1 2\n");
    let out = run_err(&["generate", "--family", "ring-of-cliques", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--num-cliques"));
    let out = run_err(&["generate", "--family", "cycle", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_err(&["generate", "--family", "hypercube"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rewire_writes_trace_metadata_and_graph() {
    let dir = TempDir::new().unwrap();
    let g = generate(
        &dir,
        "g.el",
        &["--family", "dumbbell", "--clique-size", "25"],
    );
    let (out, trace) = (dir.path().join("g2.el"), dir.path().join("t.csv"));
    let summary = run_ok(&[
        "rewire",
        "--algo",
        "grlef",
        "--iters",
        "500",
        "--tau",
        "5",
        "--seed",
        "42",
        "--in",
        path_str(&g),
        "--out",
        path_str(&out),
        "--trace",
        path_str(&trace),
        "--metric-every",
        "10",
    ]);
    assert!(summary.starts_with("algo=grlef seed=42 iterations=500 records=51"));
    let text = fs::read_to_string(&trace).unwrap();
    assert!(text.starts_with("iter,m,connected,norm_gap,triangles,aborted\n"));
    let records = parse_trace_csv(&text).unwrap();
    assert_eq!(records.len(), 51);
    assert!(records[0].normalized_gap < 0.05);
    assert!(records[50].normalized_gap > records[0].normalized_gap);

    let rewired = edgelist::read_file(&out).unwrap();
    let original = edgelist::read_file(&g).unwrap();
    assert_eq!(rewired.graph.degrees(), original.graph.degrees());
    assert_eq!(rewired.comments, original.comments);

    let meta: TraceMetadata =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t.meta.json")).unwrap()).unwrap();
    assert_eq!(meta.algorithm, "grlef");
    assert_eq!((meta.seed, meta.tau, meta.records), (42, Some(5.0), 51));
    assert_eq!(meta.generator.as_deref(), Some("dumbbell clique-size=25"));
    assert!((meta.final_norm_gap - records[50].normalized_gap).abs() < 1e-8);
}

#[test]
fn zero_iterations_reproduce_the_input() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.el");
    fs::write(&input, "5 4\n# hand made\n3 4\n0 1\n2 1\n2 3\n").unwrap();
    let out = dir.path().join("out.el");
    run_ok(&[
        "rewire",
        "--algo",
        "rlef",
        "--iters",
        "0",
        "--in",
        path_str(&input),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "5 4\n# hand made\n0 1\n1 2\n2 3\n3 4\n"
    );
}

#[test]
fn sdrf_disconnects_the_ring() {
    let dir = TempDir::new().unwrap();
    let g = generate(
        &dir,
        "ring.el",
        &[
            "--family",
            "ring-of-cliques",
            "--degree",
            "4",
            "--num-cliques",
            "50",
        ],
    );
    let trace = dir.path().join("sdrf.csv");
    run_ok(&[
        "rewire",
        "--algo",
        "sdrf",
        "--iters",
        "5000",
        "--seed",
        "0",
        "--in",
        path_str(&g),
        "--trace",
        path_str(&trace),
        "--metric-every",
        "10",
        "--stop-on-disconnect",
    ]);
    let records = parse_trace_csv(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(records.iter().any(|r| !r.connected));
    assert!(records.iter().all(|r| r.edge_count == 500));
}

#[test]
fn seed_fan_out_matches_single_runs() {
    let dir = TempDir::new().unwrap();
    let g = generate(
        &dir,
        "g.el",
        &[
            "--family",
            "ring-of-cliques",
            "--degree",
            "4",
            "--num-cliques",
            "6",
        ],
    );
    let trace = dir.path().join("t.csv");
    let plot = dir.path().join("t.svg");
    let out = bin()
        .env("EXPANDER_REWIRE_THREADS", "2")
        .args([
            "rewire",
            "--algo",
            "rlef",
            "--iters",
            "200",
            "--seeds",
            "0..3",
            "--in",
            path_str(&g),
            "--trace",
            path_str(&trace),
            "--metric-every",
            "20",
            "--plot",
            path_str(&plot),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let lines: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 3);
    for seed in 0..3u64 {
        assert!(lines[seed as usize].contains(&format!("seed={seed} ")));
        let single = dir.path().join(format!("single{seed}.csv"));
        run_ok(&[
            "rewire",
            "--algo",
            "rlef",
            "--iters",
            "200",
            "--seed",
            &seed.to_string(),
            "--in",
            path_str(&g),
            "--trace",
            path_str(&single),
            "--metric-every",
            "20",
        ]);
        let fanned = fs::read(dir.path().join(format!("t.seed{seed}.csv"))).unwrap();
        assert_eq!(fanned, fs::read(&single).unwrap());
        assert!(dir.path().join(format!("t.seed{seed}.meta.json")).exists());
        let svg = fs::read_to_string(dir.path().join(format!("t.seed{seed}.svg"))).unwrap();
        assert!(svg.starts_with("<svg"));
    }
    let bad = bin()
        .env("EXPANDER_REWIRE_THREADS", "zero")
        .args([
            "rewire",
            "--algo",
            "rlef",
            "--iters",
            "1",
            "--seeds",
            "0..2",
            "--in",
            path_str(&g),
        ])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn rewire_errors() {
    let dir = TempDir::new().unwrap();
    let split = dir.path().join("split.el");
    fs::write(&split, "4 2\n0 1\n2 3\n").unwrap();
    for algo in ["rlef", "grlef"] {
        let out = run_err(&[
            "rewire",
            "--algo",
            algo,
            "--iters",
            "5",
            "--in",
            path_str(&split),
        ]);
        assert_eq!(out.status.code(), Some(3));
        assert!(stderr(&out).contains("connected"));
    }
    let broken = dir.path().join("broken.el");
    fs::write(&broken, "4 3\n0 1\n1 2\n2 2\n").unwrap();
    let out = run_err(&[
        "rewire",
        "--algo",
        "rlef",
        "--iters",
        "5",
        "--in",
        path_str(&broken),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(
        stderr(&out).contains("broken.el:4: self-loop"),
        "{}",
        stderr(&out)
    );
    let out = run_err(&[
        "rewire",
        "--algo",
        "gat",
        "--iters",
        "5",
        "--in",
        path_str(&broken),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.el");
    let out = run_err(&[
        "rewire",
        "--algo",
        "rlef",
        "--iters",
        "5",
        "--in",
        path_str(&missing),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run_err(&[
        "rewire",
        "--algo",
        "grlef",
        "--iters",
        "5",
        "--tau",
        "-1",
        "--in",
        path_str(&split),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metrics_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = generate(&dir, "k4.el", &["--family", "complete", "--n", "4"]);
    let csv = run_ok(&["metrics", "--in", path_str(&k4), "--cheeger-exact"]);
    assert_eq!(csv, "metric,u,v,value\ncheeger_exact,,,2\n");
    let path4 = generate(&dir, "path4.el", &["--family", "path", "--n", "4"]);
    let csv = run_ok(&["metrics", "--in", path_str(&path4), "--cheeger-exact"]);
    assert_eq!(metric_values(&csv, "cheeger_exact"), ["0.5"]);
    let k3 = generate(&dir, "k3.el", &["--family", "complete", "--n", "3"]);
    let csv = run_ok(&["metrics", "--in", path_str(&k3), "--effective-resistance"]);
    assert_eq!(
        metric_values(&csv, "effective_resistance"),
        ["0.666666667"; 3]
    );
    assert!(csv.contains("effective_resistance,0,1,0.666666667\n"));
}

#[test]
fn metrics_defaults_json_and_curvature() {
    let dir = TempDir::new().unwrap();
    let c6 = generate(&dir, "c6.el", &["--family", "cycle", "--n", "6"]);
    let csv = run_ok(&["metrics", "--in", path_str(&c6)]);
    assert_eq!(metric_values(&csv, "norm_gap"), ["0.5"]);
    assert_eq!(metric_values(&csv, "gap"), ["1"]);
    assert_eq!(metric_values(&csv, "triangles"), ["0"]);
    let out = dir.path().join("m.json");
    run_ok(&[
        "metrics",
        "--in",
        path_str(&c6),
        "--json",
        "--curvature",
        "--cheeger-bounds",
        "--out",
        path_str(&out),
    ]);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["curvature"].as_array().unwrap().len(), 6);
    assert!(v["graph_curvature"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["cheeger_lower"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn metrics_errors() {
    let dir = TempDir::new().unwrap();
    let big = generate(&dir, "c21.el", &["--family", "cycle", "--n", "21"]);
    let out = run_err(&["metrics", "--in", path_str(&big), "--cheeger-exact"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("at most 20"));
    let big = generate(&dir, "c61.el", &["--family", "cycle", "--n", "61"]);
    let out = run_err(&["metrics", "--in", path_str(&big), "--curvature"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("per-edge"));
    let csv = run_ok(&["metrics", "--in", path_str(&big), "--edge-curvature"]);
    assert_eq!(metric_values(&csv, "curvature").len(), 61);
    let split = dir.path().join("split.el");
    fs::write(&split, "4 2\n0 1\n2 3\n").unwrap();
    let out = run_err(&["metrics", "--in", path_str(&split), "--norm-gap"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn info_bound_scalar_mode() {
    let csv = run_ok(&[
        "info-bound",
        "--delta",
        "0.4",
        "--fanin",
        "3",
        "--distance",
        "2",
    ]);
    assert_eq!(
        csv,
        "delta,k,d,eta,bound_bits,clamped_bits\n0.4,3,2,0.04,0.0144,0.0144\n"
    );
    let csv = run_ok(&[
        "info-bound",
        "--delta",
        "0.5",
        "--fanin",
        "3",
        "--distance",
        "1",
    ]);
    assert_eq!(csv.lines().nth(1), Some("0.5,3,1,0,0,0"));
    let csv = run_ok(&[
        "info-bound",
        "--delta",
        "0,0.1",
        "--fanin",
        "3",
        "--distance",
        "0,2",
    ]);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.contains("\n0,3,2,1,9,1\n"));
    let out = run_err(&[
        "info-bound",
        "--delta",
        "0.6",
        "--fanin",
        "3",
        "--distance",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_err(&["info-bound", "--delta", "0.1", "--distance", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn info_bound_circuit_mode() {
    let dir = TempDir::new().unwrap();
    let chain = dir.path().join("chain2.json");
    fs::write(
        &chain,
        r#"{"inputs": 1, "gates": [{"wires": [0], "truth_table": "01"}, {"wires": [1], "truth_table": "01"}], "output": 2}"#,
    )
    .unwrap();
    let csv = run_ok(&[
        "info-bound",
        "--circuit",
        path_str(&chain),
        "--delta",
        "0.1",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("delta,k,d,eta,bound_bits,exact_mi_bits"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], ["0.1", "1", "2", "0.64", "0.4096"]);
    let exact: f64 = row[5].parse().unwrap();
    assert!((exact - 0.3199).abs() < 1e-3 && exact <= 0.4096);

    let shared = dir.path().join("shared.json");
    fs::write(
        &shared,
        r#"{"inputs": 2, "gates": [
            {"wires": [0, 1], "truth_table": "0001"},
            {"wires": [0, 1], "truth_table": "0111"},
            {"wires": [2, 3], "truth_table": "0110"}], "output": 4}"#,
    )
    .unwrap();
    let out = run_err(&[
        "info-bound",
        "--circuit",
        path_str(&shared),
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("tree"));
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{\n \"inputs\": 1,\n \"gates\": oops\n}").unwrap();
    let out = run_err(&[
        "info-bound",
        "--circuit",
        path_str(&garbage),
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("garbage.json:3:"), "{}", stderr(&out));
}

#[test]
fn help_and_version_succeed() {
    assert!(run_ok(&["--help"]).contains("rewire"));
    assert!(run_ok(&["--version"]).starts_with("expander-rewire"));
    assert_eq!(run_err(&[]).status.code(), Some(2));
}
