use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn reconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reconf"))
        .args(args)
        .env_remove("RECONF_CAP")
        .output()
        .expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = r#"{
  "kind": "csp",
  "arity": 2,
  "variables": ["a", "b", "c"],
  "alphabet": ["0", "1", "2"],
  "constraints": [
    {"scope": ["a", "b"], "allowed": [["0","1"],["0","2"],["1","0"],["1","2"],["2","0"],["2","1"]]},
    {"scope": ["b", "c"], "allowed": [["0","1"],["0","2"],["1","0"],["1","2"],["2","0"],["2","1"]]},
    {"scope": ["a", "c"], "allowed": [["0","1"],["0","2"],["1","0"],["1","2"],["2","0"],["2","1"]]}
  ],
  "endpoints": {
    "source": {"a": "0", "b": "1", "c": "2"},
    "target": {"a": "1", "b": "2", "c": "0"}
  }
}"#;

#[test]
fn exact_then_verify_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "tri.json");
    let seq = path(dir.path(), "seq.json");
    fs::write(&inst, TRIANGLE).unwrap();

    let o = reconf(&["exact", "maxmin", "--instance", &inst, "--out", &seq]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("optimum=2/3"));

    let o = reconf(&[
        "verify",
        "sequence",
        "--instance",
        &inst,
        "--sequence",
        &seq,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.contains("value=2/3"), "{line}");
    assert!(line.contains("endpoints_match=true"));
}

#[test]
fn invalid_sequence_exits_one_with_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "tri.json");
    let seq = path(dir.path(), "bad.json");
    fs::write(&inst, TRIANGLE).unwrap();
    // two variables change in one step
    fs::write(
        &seq,
        r#"{"kind":"sequence","variables":["a","b","c"],"steps":[["0","1","2"],["1","2","2"]]}"#,
    )
    .unwrap();
    let o = reconf(&[
        "--format",
        "json",
        "verify",
        "sequence",
        "--instance",
        &inst,
        "--sequence",
        &seq,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(reconf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(reconf(&["exact", "maxmin"]).status.code(), Some(2));
    assert_eq!(
        reconf(&["--format", "yaml", "gen", "clique"]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_file_is_domain_error() {
    let o = reconf(&["exact", "maxmin", "--instance", "/nonexistent/x.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cap_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "tri.json");
    fs::write(&inst, TRIANGLE).unwrap();
    let o = reconf(&["--cap", "5", "exact", "maxmin", "--instance", &inst]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_reconf"))
        .args(["exact", "maxmin", "--instance", &inst])
        .env("RECONF_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.csv");
    let b = path(dir.path(), "b.csv");
    for out in [&a, &b] {
        let o = reconf(&[
            "--seed",
            "7",
            "--out",
            out,
            "bench",
            "--corpus",
            "gnp:n=30,p=0.2,count=3;clique:n=8",
            "--seeds",
            "2",
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with(
        "generator,n,m,seed,algorithm,achieved,bound,optimum,within_bound,runtime_ms,error\n"
    ));
    assert_eq!(text.lines().count(), 1 + 8);
}

#[test]
fn empty_corpus_writes_header_only() {
    let o = reconf(&["bench", "--corpus", "", "--seeds", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn gen_is_seeded_and_canonical() {
    let run = |seed: &str| {
        stdout(&reconf(&[
            "--seed",
            seed,
            "gen",
            "planted-csp",
            "--n",
            "8",
            "--m",
            "12",
            "--q",
            "3",
        ]))
    };
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
    assert!(run("3").ends_with("}\n"));
}

#[test]
fn setcover_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "c.json");
    let cover = path(dir.path(), "sc.json");
    let seq = path(dir.path(), "cs.json");
    let o = reconf(&["--out", &inst, "gen", "cycle-coloring", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        reconf(&["--out", &cover, "reduce", "setcover", "--instance", &inst])
            .status
            .code(),
        Some(0)
    );
    let o = reconf(&["--out", &seq, "approx", "setcover", "--instance", &cover]);
    assert_eq!(o.status.code(), Some(0));
    let o = reconf(&[
        "verify",
        "cover-sequence",
        "--instance",
        &cover,
        "--sequence",
        &seq,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid=true"));
}

#[test]
fn minlabel_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "tri.json");
    let seq = path(dir.path(), "ml.json");
    fs::write(&inst, TRIANGLE).unwrap();
    let o = reconf(&["--out", &seq, "approx", "minlabel", "--instance", &inst]);
    assert_eq!(o.status.code(), Some(0));
    let o = reconf(&[
        "verify",
        "multi-sequence",
        "--instance",
        &inst,
        "--sequence",
        &seq,
    ]);
    assert!(stdout(&o).contains("satisfying=true"));
}

#[test]
fn balanced_seq_csv() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "star.json");
    reconf(&["--out", &g, "gen", "star", "--n", "9"]);
    let o = reconf(&["balanced-seq", "--instance", &g]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("step,removed,cut"));
    assert_eq!(csv.lines().last().unwrap().rsplit(',').next(), Some("0"));
}

#[test]
fn rih_round_trip_on_reconfigurable_source() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.json");
    let src_seq = path(dir.path(), "src_seq.json");
    let lifted = path(dir.path(), "lifted.json");
    fs::write(
        &src,
        r#"{"kind":"csp","arity":2,"variables":["x","y"],"alphabet":["0","1"],
            "constraints":[{"scope":["x","y"],"allowed":[["0","0"],["0","1"],["1","1"]]}],
            "endpoints":{"source":{"x":"0","y":"0"},"target":{"x":"1","y":"1"}}}"#,
    )
    .unwrap();
    fs::write(
        &src_seq,
        r#"{"kind":"sequence","variables":["x","y"],"steps":[["0","0"],["0","1"],["1","1"]]}"#,
    )
    .unwrap();
    let o = reconf(&[
        "--out",
        &lifted,
        "rih",
        "complete",
        "--instance",
        &src,
        "--sequence",
        &src_seq,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value=1/1"), "{}", stdout(&o));
    let decoded = path(dir.path(), "decoded.json");
    let o = reconf(&[
        "--out",
        &decoded,
        "rih",
        "decode",
        "--instance",
        &src,
        "--sequence",
        &lifted,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.contains("all_valid=true"), "{line}");
    assert!(line.contains("claims_hold=true"), "{line}");
    let o = reconf(&[
        "verify",
        "sequence",
        "--instance",
        &src,
        "--sequence",
        &decoded,
    ]);
    assert!(stdout(&o).contains("value=1/1"));
}
