use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use weyl_tori::e6::expectations;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e6tori"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn write_cartan(dir: &Path, name: &str, rows: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, rows).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classes_markdown_and_json() {
    let md = run(&["classes"]);
    assert_eq!(md.status.code(), Some(0));
    let text = String::from_utf8(md.stdout).unwrap();
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| Type"))
            .count(),
        25
    );

    let js = run(&["classes", "--format", "json"]);
    assert_eq!(js.status.code(), Some(0));
    let v = json(&js);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["classes"].as_array().unwrap().len(), 25);
    assert_eq!(v["report"]["group_order"], 51840);
}

#[test]
fn corrupted_expectations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut e = expectations();
    e.classes[3].centraliser_order = 217;
    let p = dir.path().join("bad.json");
    std::fs::write(&p, serde_json::to_string(&e).unwrap()).unwrap();
    let out = run(&["classes", "--expectations", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("row A2: centraliser order"));

    let mut e = expectations();
    e.classes[5].word = "s0 s1".into();
    std::fs::write(&p, serde_json::to_string(&e).unwrap()).unwrap();
    let out = run(&["classes", "--expectations", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A2xA1"));
}

#[test]
fn weight_side_fixed_sets() {
    let out = run(&["fixed-sets", "--side", "weight", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["report"]["fixed_sets"]["weight"].as_array().unwrap();
    let e6 = rows.iter().find(|r| r["label"] == "E6").unwrap();
    assert_eq!(e6["component_reps"].as_array().unwrap().len(), 3);
    assert_eq!(e6["torus_dim"], 0);
    let a23 = rows.iter().find(|r| r["label"] == "A2^3").unwrap();
    assert_eq!(a23["invariant_factors"], serde_json::json!([3, 3, 3]));
    assert_eq!(a23["orbit_count"], 4);
}

#[test]
fn ktheory_root_side_only() {
    let out = run(&["ktheory", "--side", "root", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "root,total,47,11"), "{text}");
}

#[test]
fn verify_all_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("group.json");
    let cache = cache.to_str().unwrap();
    let a = run(&[
        "verify-all",
        "--format",
        "json",
        "--cache",
        cache,
        "--sample",
        "200",
    ]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert!(String::from_utf8_lossy(&a.stderr).contains("cache written"));
    let b = run(&[
        "verify-all",
        "--format",
        "json",
        "--cache",
        cache,
        "--sample",
        "200",
        "--jobs",
        "2",
    ]);
    assert_eq!(b.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&b.stderr).contains("cache hit"));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 6);
}

#[test]
fn stale_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("group.json");
    std::fs::write(&cache, "{\"format\": 0}").unwrap();
    let out = run(&["power-map", "--cache", cache.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache written (malformed"));
}

#[test]
fn toy_systems() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_cartan(dir.path(), "a2.json", "[[2,-1],[-1,2]]");
    let a1a1 = write_cartan(dir.path(), "a1a1.json", "[[2,0],[0,2]]");
    for cartan in [&a2, &a1a1] {
        for cmd in ["classes", "fixed-sets", "duality", "sectors", "power-map"] {
            let out = run(&[cmd, "--cartan", cartan]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{cmd} {}",
                String::from_utf8_lossy(&out.stdout)
            );
        }
    }
    let out = run(&["ktheory", "--cartan", &a2, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let k = v["report"]["ktheory"].as_array().unwrap();
    assert_eq!(k[0]["k0"], 5);
    assert_eq!(k[0]["k1"], 1);
    assert_eq!(k[0]["k0"], k[1]["k0"]);
    assert_eq!(k[0]["k1"], k[1]["k1"]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["classes", "--sample", "0"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["classes", "--side", "left"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = write_cartan(dir.path(), "bad.json", "[[2,-2],[-2,2]]");
    assert_eq!(run(&["classes", "--cartan", &bad]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
