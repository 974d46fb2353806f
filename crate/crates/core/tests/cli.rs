use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn relex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

const PAINTBOX: &str = r#"{"sig":[1],"support":[
    {"code":"{1:[(1)]}","weight":"1/2"},
    {"code":"{1:[(2)]}","weight":"3/10"},
    {"code":"{1:[(0)]}","weight":"1/5"}]}"#;

// the dagger output of [4,0,2,0,2,2,0]
const PARTITION: &str = r#"{"format":1,"sig":[1],"n":7}
{"i":1,"rels":[[[4]]]}
{"i":2,"rels":[[[0]]]}
{"i":3,"rels":[[[2]]]}
{"i":4,"rels":[[[-1]]]}
{"i":5,"rels":[[[2]]]}
{"i":6,"rels":[[[2]]]}
{"i":7,"rels":[[[-2]]]}
"#;

fn json_line(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(bytes)))
}

#[test]
fn sample_is_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", PAINTBOX);
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let c = dir.path().join("c.jsonl");
    for (out, seed) in [(&a, "9"), (&b, "9"), (&c, "10")] {
        let o = relex(&["sample", "--model", path_str(&model), "--n", "40", "--seed", seed, "--out", path_str(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn estimate_partition_trace() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.jsonl", PARTITION);
    let o = relex(&["estimate", "--in", path_str(&input), "--threshold", "2"]);
    assert!(o.status.success());
    let v = json_line(&o.stdout);
    let support: Vec<(String, String)> = v["support"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["code"].as_str().unwrap().into(), e["weight"].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        support,
        vec![("{1:[(0)]}".to_string(), "4/7".to_string()), ("{1:[(1)]}".into(), "3/7".into())]
    );
}

#[test]
fn canon_then_restrict_and_dist() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.jsonl", PARTITION);
    let canon = dir.path().join("c.jsonl");
    assert!(relex(&["canon", "--in", path_str(&input), "--out", path_str(&canon)]).status.success());
    let text = fs::read_to_string(&canon).unwrap();
    assert_eq!(
        text.lines().skip(1).map(|l| json_line(l.as_bytes())["rels"][0][0][0].as_i64().unwrap()).collect::<Vec<_>>(),
        vec![1, 2, 3, 4, 3, 3, 5]
    );

    // canonical files are a fixed point of canon
    let again = dir.path().join("c2.jsonl");
    assert!(relex(&["canon", "--in", path_str(&canon), "--out", path_str(&again)]).status.success());
    assert_eq!(fs::read(&canon).unwrap(), fs::read(&again).unwrap());

    let prefix = dir.path().join("p.jsonl");
    assert!(relex(&["restrict", "--in", path_str(&canon), "--n", "3", "--out", path_str(&prefix)]).status.success());
    assert_eq!(fs::read_to_string(&prefix).unwrap().lines().count(), 4);

    let o = relex(&["dist", "--a", path_str(&canon), "--b", path_str(&canon), "--depth", "7"]);
    assert_eq!(json_line(&o.stdout)["distance"], "0");
    let other = write(&dir, "o.jsonl", &PARTITION.replace("[[[-2]]]", "[[[4]]]"));
    let o = relex(&["dist", "--a", path_str(&canon), "--b", path_str(&other)]);
    assert_eq!(json_line(&o.stdout)["distance"], "1/7");
}

#[test]
fn canon_reads_edge_lists() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "calls.txt", "# caller callee\n7 9\n2 7\n8 4\n7 2\n");
    let o = relex(&["canon", "--in", path_str(&edges), "--edge-list"]);
    assert!(o.status.success());
    let rels: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| json_line(l.as_bytes())["rels"][0][0].clone())
        .collect();
    assert_eq!(rels, serde_json::from_str::<Vec<Value>>("[[1,2],[3,1],[4,5],[1,3]]").unwrap());

    let loops = write(&dir, "loop.txt", "3 3\n");
    let o = relex(&["canon", "--in", path_str(&loops), "--edge-list"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json_line(&o.stderr)["error"].as_str().unwrap().contains("line 1"));
}

#[test]
fn roundtrip_accepts_golden_inputs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.jsonl", PARTITION);
    let o = relex(&["roundtrip", "--in", path_str(&input), "--seed", "3"]);
    assert!(o.status.success());
    assert_eq!(json_line(&o.stdout)["roundtrip"], true);

    let model = write(&dir, "m.json", PAINTBOX);
    let drawn = dir.path().join("s.jsonl");
    relex(&["sample", "--model", path_str(&model), "--n", "50", "--seed", "1", "--out", path_str(&drawn)]);
    assert!(relex(&["roundtrip", "--in", path_str(&drawn)]).status.success());
}

#[test]
fn test_exch_reports_zero_tv() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", PAINTBOX);
    let o = relex(&["test-exch", "--model", path_str(&model), "--n", "4", "--mode", "exact"]);
    assert!(o.status.success());
    let v = json_line(&o.stdout);
    assert_eq!(v["max_tv"], "0");
    assert_eq!(v["per_sigma"].as_array().unwrap().len(), 24);

    let o = relex(&[
        "test-exch", "--model", path_str(&model), "--n", "3", "--mode", "mc",
        "--samples", "2000", "--seed", "5", "--sigma", "2,3,1",
    ]);
    assert!(o.status.success());
    let v = json_line(&o.stdout);
    assert!(v["p"].as_f64().unwrap() > 1e-3);
}

#[test]
fn mixture_models_sample() {
    let dir = TempDir::new().unwrap();
    let model = write(
        &dir,
        "mix.json",
        r#"{"components":[
            {"weight":"1/2","model":{"sig":[1],"support":[{"code":"{1:[(1)]}","weight":"1"}]}},
            {"weight":"1/2","model":{"sig":[1],"support":[{"code":"{1:[(0)]}","weight":"1"}]}}]}"#,
    );
    let o = relex(&["sample", "--model", path_str(&model), "--n", "5", "--seed", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = relex(&["test-exch", "--model", path_str(&model), "--n", "3"]);
    assert_eq!(json_line(&o.stdout)["max_tv"], "0");
}

#[test]
fn failures_are_json_with_nonzero_exit() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.jsonl", "{\"format\":1,\"sig\":[2],\"n\":1}\n{\"i\":1,\"rels\":[[[1,2,3]]]}\n");
    let cases: Vec<Vec<String>> = vec![
        vec!["canon".into(), "--in".into(), path_str(&bad).into()],
        vec!["canon".into(), "--in".into(), "/nonexistent/x.jsonl".into()],
        vec!["sample".into(), "--model".into(), path_str(&bad).into(), "--n".into(), "3".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = relex(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let v = json_line(&o.stderr);
        assert!(v["error"].is_string(), "{args:?}");
    }
    let o = relex(&["canon", "--in", path_str(&bad)]);
    assert!(json_line(&o.stderr)["error"].as_str().unwrap().contains("line 2"));
}

#[test]
fn estimate_then_sample_then_estimate() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", PAINTBOX);
    let x = dir.path().join("x.jsonl");
    let f1 = dir.path().join("f1.json");
    let y = dir.path().join("y.jsonl");
    let f2 = dir.path().join("f2.json");
    for args in [
        vec!["sample", "--model", path_str(&model), "--n", "20000", "--seed", "1", "--out", path_str(&x)],
        vec!["estimate", "--in", path_str(&x), "--out", path_str(&f1)],
        vec!["sample", "--model", path_str(&f1), "--n", "20000", "--seed", "2", "--out", path_str(&y)],
        vec!["estimate", "--in", path_str(&y), "--out", path_str(&f2)],
    ] {
        let o = relex(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let load = |p: &Path| relex::io::read_model(p).unwrap();
    let (relex::io::Model::Point(a), relex::io::Model::Point(b)) = (load(&f1), load(&f2)) else {
        panic!("estimate writes point models");
    };
    assert!(relex::simplex::simplex_distance(&a, &b).unwrap() < 0.05);
}
