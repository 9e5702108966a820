use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use domtsp::instance::{gen_bernoulli, parse_instance, serialize_instance};
use domtsp::oracle::brute_force_min_tour_weight;
use domtsp::Instance01;
use serde_json::Value;

fn domtsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domtsp")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = domtsp(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_instance(dir: &Path, name: &str, inst: &Instance01) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serialize_instance(inst)).unwrap();
    path
}

#[test]
fn golden_reports() {
    for name in ["all_zero_8", "bernoulli_11", "clique_10"] {
        let input = golden(&format!("{name}.tsp01"));
        let solve = ok(&["solve", "-i", s(&input), "--json", "--exact"]);
        let classify = ok(&["classify", "-i", s(&input)]);
        assert_eq!(solve, std::fs::read_to_string(golden(&format!("{name}.solve.json"))).unwrap(), "{name} solve");
        assert_eq!(classify, std::fs::read_to_string(golden(&format!("{name}.classify.json"))).unwrap(), "{name} classify");
    }
}

#[test]
fn all_zero_instance_is_sparse_with_free_tour() {
    let v = json(&["solve", "-i", s(&golden("all_zero_8.tsp01")), "--json"]);
    assert_eq!(v["kind"], "sparse");
    assert_eq!(v["tour_weight"], 0);
    assert_eq!(v["schema"], 1);
}

#[test]
fn gen_round_trips_and_counts_clique_edges() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsp01");
    ok(&["gen", "--model", "bernoulli", "--n", "10", "--p", "0.5", "--seed", "1", "-o", s(&a)]);
    let text = std::fs::read_to_string(&a).unwrap();
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst, gen_bernoulli(10, 0.5, 1).unwrap());
    assert_eq!(serialize_instance(&inst), text);

    let b = dir.path().join("b.tsp01");
    ok(&["gen", "--model", "clique", "--n", "10", "--r", "4", "-o", s(&b)]);
    assert_eq!(parse_instance(&std::fs::read_to_string(&b).unwrap()).unwrap().one_edge_count(), 6);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.tsp01");
    assert_eq!(domtsp(&["gen", "--model", "bernoulli", "--n", "2", "--p", "0.5", "-o", s(&out)]).status.code(), Some(2));
    assert_eq!(domtsp(&["gen", "--model", "clique", "--n", "6", "--p", "0.5", "-o", s(&out)]).status.code(), Some(2));
    assert_eq!(domtsp(&["solve", "-i", s(&golden("all_zero_8.tsp01")), "--eps", "1/2"]).status.code(), Some(2));

    let missing = domtsp(&["solve", "-i", s(&dir.path().join("nope.tsp01"))]);
    assert_eq!(missing.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&missing.stderr).unwrap();
    assert_eq!(err["error"], "file-not-found");
    assert_eq!(err["schema"], 1);

    let bad = dir.path().join("bad.tsp01");
    std::fs::write(&bad, "p tsp01 4 1\ne 1 1\n").unwrap();
    assert_eq!(domtsp(&["classify", "-i", s(&bad)]).status.code(), Some(4));

    let big = write_instance(dir.path(), "big.tsp01", &Instance01::all_zero(20).unwrap());
    let too_big = domtsp(&["solve", "-i", s(&big), "--exact"]);
    assert_eq!(too_big.status.code(), Some(5));
    let err: Value = serde_json::from_slice(&too_big.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
    assert_eq!(domtsp(&["classify", "-i", s(&big), "--max-n", "10"]).status.code(), Some(5));

    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let csv = dir.path().join("out.csv");
    assert_eq!(domtsp(&["bench", "--corpus", s(&empty), "--out", s(&csv)]).status.code(), Some(6));
}

#[test]
fn exact_estimate_inside_monte_carlo_interval() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_instance(dir.path(), "i.tsp01", &gen_bernoulli(9, 0.5, 11).unwrap());
    let tour = dir.path().join("t.txt");
    std::fs::write(&tour, "t 9\n1\n2\n3\n4\n5\n6\n7\n8\n9\n").unwrap();
    let exact = json(&["estimate", "-i", s(&input), "-t", s(&tour), "--exact"]);
    let mc = json(&["estimate", "-i", s(&input), "-t", s(&tour), "--samples", "1000000", "--seed", "5", "--workers", "2"]);
    let p = exact["empirical_estimate"].as_f64().unwrap();
    assert_eq!(exact["samples"], 20160);
    assert!(mc["lower"].as_f64().unwrap() <= p && p <= mc["upper"].as_f64().unwrap(), "{p} vs {mc}");
}

#[test]
fn reduction_instances() {
    let dir = tempfile::tempdir().unwrap();
    let triangle = dir.path().join("tri.g");
    std::fs::write(&triangle, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    let empty = dir.path().join("empty.g");
    std::fs::write(&empty, "p edge 3 0\n").unwrap();

    let out = dir.path().join("tri.tsp01");
    let v = json(&["reduce", "-g", s(&triangle), "--eps", "0.4", "-o", s(&out), "--n-prime", "7"]);
    assert_eq!(v["n_prime"], 7);
    assert_eq!(v["s_set"], serde_json::json!([1, 2, 3]));
    let inst = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(brute_force_min_tour_weight(&inst).unwrap(), 2);

    let v = json(&["reduce", "-g", s(&empty), "--eps", "0.4", "-o", s(&out), "--n-prime", "7"]);
    assert_eq!(v["n"], 3);
    let inst = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(brute_force_min_tour_weight(&inst).unwrap() > 2);

    // without --n-prime the smallest admissible size is used
    let v = json(&["reduce", "-g", s(&triangle), "--eps", "0.4", "-o", s(&out)]);
    assert_eq!(v["n_prime"], 2752);
    assert_eq!(parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap().vertex_count(), 2752);

    let missing = domtsp(&["reduce", "-g", s(&dir.path().join("none.g")), "--eps", "0.4", "-o", s(&out)]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn bench_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    for seed in 0..20 {
        write_instance(&corpus, &format!("b{seed:02}.tsp01"), &gen_bernoulli(10, 0.5, seed).unwrap());
    }
    let csv = dir.path().join("out.csv");
    ok(&["bench", "--corpus", s(&corpus), "--out", s(&csv)]);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header.join(","), domtsp_header());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for row in &rows {
        assert_eq!(&row[col("schema")], "1");
        let w: f64 = row[col("tour_weight")].parse().unwrap();
        let dn: f64 = row[col("dn")].parse().unwrap();
        assert!(w <= dn + 1e-9, "{row:?}");
        assert_eq!(&row[col("empirical_method")], "exact");
        assert_eq!(&row[col("solve_ms")], "");
    }

    let ones = dir.path().join("ones");
    std::fs::create_dir(&ones).unwrap();
    write_instance(&ones, "ones.tsp01", &Instance01::all_ones(9).unwrap());
    ok(&["bench", "--corpus", s(&ones), "--out", s(&csv), "--timing"]);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[col("empirical_estimate")], "1.0");
    assert!(!row[col("solve_ms")].is_empty());
}

fn domtsp_header() -> &'static str {
    "schema,instance_id,n,d_num,d_den,kind,algorithm,tour_weight,dn,certified_ratio,certified_source,\
empirical_method,empirical_estimate,empirical_halfwidth,samples,classify_ms,solve_ms,estimate_ms"
}

#[test]
fn text_summary_without_json() {
    let text = ok(&["solve", "-i", s(&golden("clique_10.tsp01"))]);
    assert!(text.starts_with("n = 10, d = 2/15"), "{text}");
    assert!(text.contains("tour weight"));
}
