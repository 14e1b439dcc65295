use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use belyi_db::{read_jsonl, PassportRecord};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn belyi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belyi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn enumerate_summaries() {
    let o = belyi(&["enumerate", "--degree", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "d=4: 6,2 (total 8)\n");
    let o = belyi(&["enumerate", "--degree", "7", "--genus", "3"]);
    assert!(stdout(&o).ends_with("(total 3)\n"), "{}", stdout(&o));
    let o = belyi(&["enumerate", "--degree", "1"]);
    assert_eq!(stdout(&o), "d=1: 1 (total 1)\n");
    let o = belyi(&["enumerate", "--degree", "1..3"]);
    assert_eq!(stdout(&o), "d=1: 1 (total 1)\nd=2: 1 (total 1)\nd=3: 2,1 (total 3)\n");
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for (jobs, path) in [("1", &a), ("4", &b)] {
        let o = belyi(&["enumerate", "--degree", "6", "--pointed", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let recs: Vec<PassportRecord> = read_jsonl(&a).unwrap();
    assert_eq!(recs.len(), 74);
}

#[test]
fn usage_and_capacity_errors_exit_two() {
    assert_eq!(code(&belyi(&["enumerate", "--degree", "10"])), 2);
    assert_eq!(code(&belyi(&["enumerate"])), 2);
    assert_eq!(code(&belyi(&["enumerate", "--degree", "x"])), 2);
    assert_eq!(code(&belyi(&["enumerate", "--bogus"])), 2);
    assert_eq!(code(&belyi(&["stats", "/nonexistent/passports.jsonl"])), 2);
    assert_eq!(code(&belyi(&["enumerate", "--degree", "3", "--out", "/nonexistent/dir/x.jsonl"])), 2);
    assert_eq!(code(&belyi(&["enumerate", "--degree", "3", "--jobs", "0"])), 2);
}

#[test]
fn version_flag() {
    let o = belyi(&["--version"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("belyi "));
}

#[test]
fn group_file_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.jsonl");
    let o = belyi(&["enumerate", "--group-file", fixture("psl2_5_degree6.txt").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let recs: Vec<PassportRecord> = read_jsonl(&out).unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.group.order == 60 && r.degree == 6 && r.group.even));
    let o = belyi(&["enumerate", "--degree", "5", "--group-file", fixture("psl2_5_degree6.txt").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stats_from_records_and_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let recs = dir.path().join("p.jsonl");
    assert_eq!(code(&belyi(&["enumerate", "--degree", "1..5", "--out", recs.to_str().unwrap()])), 0);
    let orbits = fixture("orbits_d5.jsonl");
    let json = dir.path().join("stats.json");
    let o = belyi(&["stats", recs.to_str().unwrap(), "--orbits", orbits.to_str().unwrap(), "--out", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("d=5: 31/33 ~ 0.93939"), "{text}");
    assert!(text.contains("d=4: 1 ~ 1.00000"));
    assert!(text.contains("d=5: 12,6,2 (total 20)"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["beta"]["5"]["low"], "31/33");
    assert_eq!(v["max_sizes"]["5"], 3);
    assert_eq!(v["counts"]["5"]["2"], 2);
    // without orbit data β(5) is an interval
    let o = belyi(&["stats", "--degree", "1..5"]);
    assert!(stdout(&o).contains("d=5: [9/11, 1]"), "{}", stdout(&o));
}

#[test]
fn pointed_descent_lines() {
    let o = belyi(&["pointed", "--degree", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    // S5 has the largest id among degree-5 groups
    let line = text
        .lines()
        .filter(|l| l.contains("-g1-5^1-4^1.1^1-4^1.1^1 "))
        .next_back()
        .expect("degree-5 genus-1 passport");
    assert!(line.starts_with("5T5-"), "{line}");
    assert!(line.ends_with("size 1: descends: yes (s=0, e=5, a=1)"), "{line}");
}

#[test]
fn pointed_augments_input_records() {
    let dir = tempfile::tempdir().unwrap();
    let bare = dir.path().join("bare.jsonl");
    let full = dir.path().join("full.jsonl");
    let direct = dir.path().join("direct.jsonl");
    assert_eq!(code(&belyi(&["enumerate", "--degree", "6", "--out", bare.to_str().unwrap()])), 0);
    assert_eq!(code(&belyi(&["pointed", bare.to_str().unwrap(), "--out", full.to_str().unwrap()])), 0);
    assert_eq!(code(&belyi(&["enumerate", "--degree", "6", "--pointed", "--out", direct.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&direct).unwrap());

    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let out = dir.path().join("out.jsonl");
    let o = belyi(&["pointed", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn verify_fixtures() {
    for name in ["genus_two_map.json", "degree_five_map.json", "degree_eight_map.json"] {
        let o = belyi(&["verify", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("pass"));
    }
    let o = belyi(&["verify", fixture("degree_five_map_typo.json").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("over 0: found 1,1,1,1,1 expected 4,1 MISMATCH"), "{text}");
    assert!(text.trim_end().ends_with("fail"));
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = belyi(&["verify", fixture("genus_two_map.json").to_str().unwrap(), "--digits", "30", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["fibres"][2]["found"], serde_json::json!([3, 3]));
}

#[test]
fn series_tools() {
    let model = fixture("genus_two_model.json");
    let o = belyi(&["series", "laurent-tail", "--model", model.to_str().unwrap()]);
    assert_eq!(stdout(&o), "P0 = x^3 + 2*x\n");
    let o = belyi(&["series", "laurent-tail", "--model", model.to_str().unwrap(), "--j", "1"]);
    assert_eq!(stdout(&o), "P1 = x^4 + 2*x^2 + 1\n");
    let o = belyi(&["series", "rr-basis", "--model", model.to_str().unwrap(), "--pole-order", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("dimension 6\n"), "{}", stdout(&o));
}

#[test]
fn newton_refine_reconverges() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("solution.json");
    let problem = fixture("degree_five_newton.json");
    let o = belyi(&["series", "newton-refine", problem.to_str().unwrap(), "--tol", "1e-30", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let steps = v["iterations"].as_array().unwrap();
    assert!(!steps.is_empty() && steps.len() <= 12);
    assert!(steps.last().unwrap()["residual_log10"].as_f64().unwrap() < -30.0);
    assert_eq!(v["variables"][0], "u");
    assert!(v["values"][0][0].as_str().unwrap().starts_with("32"));
    // the target cannot exceed the working precision
    let o = belyi(&["series", "newton-refine", problem.to_str().unwrap(), "--digits", "20", "--tol", "1e-30"]);
    assert_eq!(code(&o), 2);
}
