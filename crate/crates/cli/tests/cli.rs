use std::path::PathBuf;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("threeleaf").chain(args.iter().copied());
    let code = threeleaf_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn golden_outputs() {
    assert_eq!(ok(&["crossratio", "0", "0.5", "1", "inf"]), golden("crossratio.txt"));
    assert_eq!(ok(&["group", "add", "1", "1"]), golden("group_add.txt"));
    assert_eq!(ok(&["plot", "helix", "--k", "8", "--format", "csv"]), golden("plot_helix_k8.csv"));
}

#[test]
fn scalar_commands() {
    assert_eq!(ok(&["group", "add", "1", "1"]).trim(), "inf");
    assert_eq!(ok(&["crossratio", "0", "0.5", "1", "inf"]).trim(), "0.5");
    assert_eq!(ok(&["crossratio", "-1", "0", "1", "inf"]).trim(), "0.5");
    assert_eq!(ok(&["crossratio", "0", "1/3", "1/2", "inf"]).trim(), "0.666666666667");
    assert_eq!(ok(&["gamma", "0", "0.5", "1", "inf"]).trim(), "0");
    assert_eq!(ok(&["gamma", "0", "0", "1", "inf"]).trim(), "inf");
    assert_eq!(ok(&["kappa", "2"]).trim(), "0.5");
    assert_eq!(ok(&["group", "mul", "3", "1/2"]).trim(), "5.5");
    assert_eq!(ok(&["group", "neg", "inf"]).trim(), "inf");
    assert_eq!(ok(&["group", "torsion", "1/4"]).trim(), "1");
    assert_eq!(ok(&["cayley", "0"]).trim(), "0 -1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["crossratio", "0", "abc", "1", "inf"]).0, 2);
    assert!(run(&["crossratio", "0", "abc", "1", "inf"]).2.contains("abc"));
    assert_eq!(run(&["crossratio", "0", "1"]).0, 2);
    assert_eq!(run(&["crossratio", "0", "0", "0", "inf"]).0, 3);
    assert_eq!(run(&["metric", "--chart", "0.3,0.3000001"]).0, 3);
    assert_eq!(run(&["su11", "1", "2", "3", "4"]).0, 3);
    assert_eq!(run(&["rank-scan", "--n", "2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn rank_scan_is_deterministic() {
    let args = ["rank-scan", "--n", "4", "--trials", "10", "--seed", "0"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    for key in ["n", "trials", "seed", "h", "tol", "full_rank_count", "min_rank", "worst_sigma_ratio"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["min_rank"], 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("scan.conf", "# scan settings\nn = 3\ntrials = 7\nseed = 5\n");
    let path = cfg.to_str().unwrap();
    let v: Value = serde_json::from_str(&ok(&["rank-scan", "--config", path])).unwrap();
    assert_eq!((v["n"].as_u64(), v["trials"].as_u64(), v["seed"].as_u64()), (Some(3), Some(7), Some(5)));
    let v: Value = serde_json::from_str(&ok(&["rank-scan", "--config", path, "--trials", "3"])).unwrap();
    assert_eq!(v["trials"], 3);
    let bad = scratch("bad.conf", "n: 3\n");
    assert_eq!(run(&["rank-scan", "--config", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn emitted_json_is_accepted_back() {
    let first = ok(&["albanese", "--json", r#"{"n": 4, "points": [0, 0.2, [3, 5], 1, "inf"]}"#]);
    let again = ok(&["albanese", "--json", &first]);
    assert_eq!(first, again);
    let metric = ok(&["metric", "--chart", "0.3,0.7"]);
    assert_eq!(ok(&["metric", "--json", &metric]), metric);
    let v: Value = serde_json::from_str(&metric).unwrap();
    assert_eq!(v["rank"], 2);
    let chart = serde_json::to_string(&v["chart"]).unwrap();
    assert_eq!(ok(&["metric", "--json", &chart]), metric);
}

#[test]
fn curve_length_from_csv() {
    let mut rows = String::from("u1\n");
    for i in 0..=30 {
        rows.push_str(&format!("{}\n", 0.3 + 0.01 * i as f64));
    }
    let path = scratch("segment.csv", &rows);
    let len: f64 = ok(&["curve-length", "--input", path.to_str().unwrap()]).trim().parse().unwrap();
    assert!((len - 0.3).abs() < 1e-6);
}

#[test]
fn plots() {
    let svg = ok(&["plot", "tree3", "0", "0.5", "1", "inf"]);
    assert!(svg.starts_with("<?xml") && svg.contains("γ = 0"));
    let csv = ok(&["plot", "tree3", "0", "0.7310585786", "1", "inf", "--format", "csv"]);
    assert_eq!(csv.lines().last().unwrap(), "gamma,0.999999999847,,,,");
    let boundary = ok(&["plot", "tree3", "0", "0", "1", "inf", "--format", "json"]);
    let v: Value = serde_json::from_str(&boundary).unwrap();
    assert_eq!(v["boundary"], true);
    let graph = ok(&["plot", "kappa-graph", "--k", "5"]);
    assert_eq!(graph.lines().count(), 6);
    assert!(ok(&["plot", "helix", "--k", "50", "--format", "svg"]).contains("<polyline"));
}
