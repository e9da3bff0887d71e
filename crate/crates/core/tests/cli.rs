use std::path::{Path, PathBuf};
use std::process::Command;

use taxosim::cli::run;
use taxosim::{IndexBundle, MetricKind, Scorer};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["taxosim"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn build_toy(dir: &Path) -> PathBuf {
    let idx = dir.join("toy.idx");
    let (code, out, err) = call(&[
        "build",
        "--taxonomy",
        &s(&data("toy_taxonomy.tsv")),
        "--freq",
        &s(&data("toy_freq.tsv")),
        "--out",
        &s(&idx),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("words: 8"), "{out}");
    assert!(out.contains("nodes: 15"), "{out}");
    idx
}

fn json_r(report: &str, column: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_str(report).unwrap();
    v["correlations"][column].as_f64().unwrap()
}

#[test]
fn build_is_byte_identical_on_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    let first = std::fs::read(build_toy(dir.path())).unwrap();
    let second = std::fs::read(build_toy(dir.path())).unwrap();
    assert_eq!(first, second);
}

#[test]
fn build_reports_missing_freq_file() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.tsv");
    let (code, _, err) = call(&[
        "build",
        "--taxonomy",
        &s(&data("toy_taxonomy.tsv")),
        "--freq",
        &s(&missing),
        "--out",
        &s(&dir.path().join("x.idx")),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("nope.tsv"), "{err}");
}

#[test]
fn sim_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let bundle = IndexBundle::load(&idx).unwrap();
    let scorer = Scorer::new(&bundle.taxonomy, &bundle.ic);
    for (metric, a, b) in [
        ("edge", "car", "bird"),
        ("intervening", "lamp", "shore"),
        ("resnik", "crane", "bird"),
    ] {
        let (code, out, err) = call(&["sim", "--index", &s(&idx), a, b, "--metric", metric]);
        assert_eq!(code, 0, "{err}");
        let fields: Vec<&str> = out.trim_end().split('\t').collect();
        assert_eq!(fields[0], metric);
        let kind: MetricKind = metric.parse().unwrap();
        assert_eq!(
            fields[1].parse::<f64>().unwrap(),
            scorer.score(kind, a, b).unwrap().value
        );
    }
}

#[test]
fn sim_jcn_of_a_word_with_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let (code, out, _) = call(&[
        "--format",
        "json",
        "sim",
        "--index",
        &s(&idx),
        "lamp",
        "lamp",
        "--metric",
        "jcn",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"].as_f64(), Some(0.0));
    assert_eq!(v["polarity"], "distance");
}

#[test]
fn sim_edge_prints_group_path() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let (_, out, _) = call(&["sim", "--index", &s(&idx), "car", "lamp"]);
    assert_eq!(
        out,
        "edge\t0\tdistance\tlexicon/artifact/device/car\tlexicon/artifact/device/lamp\n"
    );
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let bin = env!("CARGO_BIN_EXE_taxosim");

    let unknown = Command::new(bin)
        .args(["sim", "--index", &s(&idx), "car", "zebra"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("zebra"));

    let bad_metric = Command::new(bin)
        .args([
            "sim",
            "--index",
            &s(&idx),
            "car",
            "lamp",
            "--metric",
            "cosine",
        ])
        .output()
        .unwrap();
    assert_eq!(bad_metric.status.code(), Some(2));

    let no_args = Command::new(bin).output().unwrap();
    assert_eq!(no_args.status.code(), Some(2));

    let ok = Command::new(bin)
        .args(["sim", "--index", &s(&idx), "car", "automobile"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn bench_builtin_precomputed() {
    let (code, out, err) = call(&["bench", "--pairs", "builtin:table1", "--precomputed"]);
    assert_eq!(code, 0, "{err}");
    assert!((json_r(&out, "roget_edges") - 0.8862).abs() < 0.01);
    assert!((json_r(&out, "intervening") - 0.5734).abs() < 0.01);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n_pairs"], 28);
}

#[test]
fn bench_two_rows_is_perfectly_correlated() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let pairs = dir.path().join("two.csv");
    std::fs::write(
        &pairs,
        "word1,word2,human_mc\ncar,automobile,3.9\ncar,bird,0.4\n",
    )
    .unwrap();
    let (code, out, err) = call(&[
        "bench",
        "--pairs",
        &s(&pairs),
        "--index",
        &s(&idx),
        "--metrics",
        "edge",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!((json_r(&out, "edge") - 1.0).abs() < 1e-12);
}

#[test]
fn bench_constant_column_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let pairs = dir.path().join("same.csv");
    std::fs::write(
        &pairs,
        "word1,word2,human_mc\ncar,automobile,3.9\nbird,crane,2.0\ncoast,shore,3.1\n",
    )
    .unwrap();
    let (code, _, err) = call(&[
        "bench",
        "--pairs",
        &s(&pairs),
        "--index",
        &s(&idx),
        "--metrics",
        "edge",
    ]);
    assert_eq!(code, 4);
    assert!(err.contains("degenerate input"), "{err}");
}

#[test]
fn bench_unknown_word_and_skip() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let pairs = dir.path().join("p.csv");
    std::fs::write(
        &pairs,
        "word1,word2,human_mc\ncar,automobile,3.9\ncar,zebra,1.0\ncar,bird,0.4\nlamp,shore,0.2\n",
    )
    .unwrap();
    let base = [
        "bench",
        "--pairs",
        &s(&pairs),
        "--index",
        &s(&idx),
        "--metrics",
        "edge,jcn",
    ];
    let (code, _, err) = call(&base);
    assert_eq!(code, 3);
    assert!(err.contains("zebra"), "{err}");

    let mut skip = base.to_vec();
    skip.push("--skip-unknown");
    let (code, out, err) = call(&skip);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n_pairs"], 3);
}

#[test]
fn bench_csv_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.csv");
    let (code, _, err) = call(&[
        "--format",
        "csv",
        "bench",
        "--pairs",
        "builtin:table1",
        "--precomputed",
        "--out",
        &s(&report),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("column,r,n_pairs\n"));
    assert_eq!(text.lines().count(), 1 + 6);
    let pairs = std::fs::read_to_string(dir.path().join("r.csv.pairs.csv")).unwrap();
    assert_eq!(pairs.lines().count(), 1 + 28);
    assert!(pairs
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0,car,automobile,"));
}

#[test]
fn export_ic_lists_every_node() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build_toy(dir.path());
    let (code, out, err) = call(&["export-ic", "--index", &s(&idx)]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "concept-path\tprobability\tic");
    assert_eq!(lines.len(), 1 + 15);
    let root: Vec<&str> = lines[1].split('\t').collect();
    assert_eq!(root[0], "lexicon");
    let p: f64 = root[1].parse().unwrap();
    let ic: f64 = root[2].parse().unwrap();
    assert!((ic + p.log2()).abs() < 1e-12);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["build", "sim", "bench", "export-ic"] {
        assert!(out.contains(sub), "{out}");
    }
}
