use std::path::Path;

use serde_json::Value;

use segalkit::cli;

fn run(args: &[&str]) -> (i32, Value) {
    let argv = ["segalkit", "--json"].iter().chain(args).map(|s| s.to_string());
    let (code, _, out) = cli::run(argv);
    let v = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, v)
}

fn corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    dir
}

fn at(dir: &Path, rel: &str) -> String {
    dir.join(rel).display().to_string()
}

#[test]
fn build_writes_a_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let out = at(dir.path(), "d2.sset");
    let (code, report) = run(&["build", "simplex", "2", "-o", &out]);
    assert_eq!(code, 0);
    assert!(report["error"].is_null());
    let text = std::fs::read_to_string(&out).unwrap();
    let (_, x) = segalkit::simplicial::parse_sset(&text).unwrap();
    assert_eq!(x.counts(), vec![3, 3, 1]);
}

#[test]
fn verdicts_set_exit_codes() {
    let dir = corpus();
    let d = dir.path();
    assert_eq!(run(&["segal-check", &at(d, "nerve/nerve_I2.bss")]).0, 0);
    assert_eq!(run(&["segal-check", &at(d, "spine/G2.bss")]).0, 1);
    assert_eq!(run(&["complete-check", &at(d, "nerve/nerve_iso.bss")]).0, 1);
    assert_eq!(run(&["complete-check", &at(d, "nerve/nerve_I3.bss")]).0, 0);
    assert_eq!(run(&["we", &at(d, "simplicial/inc_V2_1.smap")]).0, 0);
    assert_eq!(run(&["we", &at(d, "simplicial/inc_dD2.smap")]).0, 1);
    assert_eq!(run(&["dk-segal", &at(d, "cat/categories.cat"), "iso_to_terminal"]).0, 0);
    assert_eq!(run(&["dk-segal", &at(d, "cat/categories.cat"), "discrete2_to_terminal"]).0, 1);
    assert_eq!(run(&["dk-sc", &at(d, "cat/scats.cat"), "U_horn"]).0, 0);
    assert_eq!(run(&["kan", &at(d, "simplicial/D2.sset")]).0, 1);
}

#[test]
fn homology_of_a_sphere() {
    let dir = corpus();
    let (code, r) = run(&["homology", &at(dir.path(), "simplicial/dD3.sset")]);
    assert_eq!(code, 0);
    let text = r["payload"].to_string();
    assert!(text.contains("\"rank\":1"), "{text}");
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = at(dir.path(), "bad.sset");
    std::fs::write(&bad, "sset x\nsimplex 1 a : b c\n").unwrap();
    let (code, r) = run(&["pi0", &bad]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "parse");
    assert!(r["error"]["file"].as_str().unwrap().ends_with("bad.sset"));

    let (code, _) = run(&["pi0", &at(dir.path(), "missing.sset")]);
    assert_eq!(code, 2);
    let (code, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, r) = run(&["--budget-simplices", "5", "build", "simplex", "3"]);
    assert_eq!(code, 2, "{r}");
}

#[test]
fn corpus_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (_, ra) = run(&["corpus", a.path().to_str().unwrap()]);
    let (_, rb) = run(&["corpus", b.path().to_str().unwrap()]);
    let digests = |r: &Value, root: &Path| -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = r["outputs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| {
                let p = o.as_str().unwrap();
                let text = std::fs::read_to_string(p).unwrap();
                (p.trim_start_matches(&root.display().to_string()).to_string(), text)
            })
            .collect();
        out.sort();
        out
    };
    let (da, db) = (digests(&ra, a.path()), digests(&rb, b.path()));
    assert!(!da.is_empty());
    assert_eq!(da, db);
}

#[test]
fn reports_are_deterministic() {
    let dir = corpus();
    let args = ["phi", &at(dir.path(), "cat/categories.cat"), "iso_to_terminal"];
    let argv = |a: &[&str]| ["segalkit"].iter().chain(a).map(|s| s.to_string()).collect::<Vec<_>>();
    let (_, first, _) = cli::run(argv(&args));
    let (_, second, _) = cli::run(argv(&args));
    assert_eq!(first.unwrap().deterministic_json(), second.unwrap().deterministic_json());
}

#[test]
fn generator_artifacts_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = at(dir.path(), "if11.bmap");
    assert_eq!(run(&["gen", "If", "1", "1", "-o", &out]).0, 0);
    assert!(dir.path().join("if11.src.bss").exists());
    let (code, r) = run(&["rlp", &out]);
    assert!(code == 0 || code == 1, "{r}");
    assert!(r["error"].is_null(), "{r}");
}
