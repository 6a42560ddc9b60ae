use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn psc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psc"))
        .args(args)
        .output()
        .expect("run psc")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let w11 = p(dir.path(), "w11.pg");
    assert_eq!(
        code(&psc(&["gen", "--family", "wegner", "--delta", "11", "-o", &w11])),
        0
    );
    assert!(fs::read_to_string(&w11).unwrap().starts_with("n 18\n"));
    let t = p(dir.path(), "t.pg");
    let o = psc(&[
        "--json", "gen", "--family", "stacked", "--n", "50", "--seed", "7", "-o", &t,
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["edges"], 144);
    let o = psc(&["gen", "--family", "wegner", "--delta", "8"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd delta"));
    assert_eq!(code(&psc(&["gen", "--family", "stacked"])), 2);
    assert_eq!(code(&psc(&["frobnicate"])), 2);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_psc"));
        c.args(["gen", "--family", "random", "--n", "30"]);
        match env {
            Some(s) => c.env("PSC_SEED", s),
            None => c.env_remove("PSC_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(None), run(None));
    assert_eq!(run(Some("5")), run(Some("5")));
    assert_ne!(run(Some("5")), run(Some("6")));
    let flag = stdout(&psc(&["gen", "--family", "random", "--n", "30", "--seed", "5"]));
    assert_eq!(flag, run(Some("5")));
}

#[test]
fn color_modes() {
    let dir = tempfile::tempdir().unwrap();
    let w11 = p(dir.path(), "w11.pg");
    psc(&["gen", "--family", "wegner", "--delta", "11", "-o", &w11]);
    let o = psc(&["--json", "color", &w11, "--mode", "exact"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi2"], 17);

    let t = p(dir.path(), "t.pg");
    psc(&["gen", "--family", "stacked", "--n", "50", "--seed", "7", "-o", &t]);
    for (mode, bound_of) in [("constructive", 2usize), ("greedy", 5), ("dsatur", 2)] {
        let o = psc(&["--json", "color", &t, "--mode", mode]);
        assert_eq!(code(&o), 0, "{mode}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let delta = v["max_degree"].as_u64().unwrap() as usize;
        let extra = if bound_of == 2 { 7 } else { 1 };
        assert!(v["palette"].as_u64().unwrap() as usize <= bound_of * delta + extra);
        assert_eq!(v["verified"], true);
    }
    let o = psc(&["color", &t, "--mode", "dsatur", "--budget", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn audit_examples() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = p(dir.path(), "k4.pg");
    fs::write(&k4, "n 4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n").unwrap();
    let o = psc(&["--json", "audit", &k4]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum_final"], "-12/1");
    assert_eq!(v["negative"].as_array().unwrap().len(), 4);
    assert!(v["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["kind"] == "Deg3SmallNbr"));

    let c4 = p(dir.path(), "c4.pg");
    psc(&["gen", "--family", "cycle", "--n", "4", "-o", &c4]);
    let o = psc(&["audit", &c4]);
    let text = stdout(&o);
    assert!(text.contains("sum=-12/1"));
    assert!(text.contains("negative f:0=-2/1") && text.contains("negative f:1=-2/1"));
}

#[test]
fn detect_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = p(dir.path(), "c4.pg");
    psc(&["gen", "--family", "cycle", "--n", "4", "-o", &c4]);
    let o = psc(&["--json", "detect", &c4, "--all"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let deg2 = v.as_array().unwrap().iter().filter(|w| w["kind"] == "Deg2").count();
    assert_eq!(deg2, 4);
    let t = p(dir.path(), "t.pg");
    psc(&["gen", "--family", "stacked", "--n", "300", "--seed", "3", "-o", &t]);
    let o = psc(&["--json", "detect", &t]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = p(dir.path(), "p3.pg");
    fs::write(&p3, "n 3\n0: 1\n1: 0 2\n2: 1\n").unwrap();
    let good = p(dir.path(), "good.json");
    fs::write(&good, r#"{"palette":3,"colors":{"0":1,"1":2,"2":3}}"#).unwrap();
    assert_eq!(code(&psc(&["verify", &p3, &good])), 0);
    let bad = p(dir.path(), "bad.json");
    fs::write(&bad, r#"{"palette":2,"colors":{"0":1,"1":2,"2":1}}"#).unwrap();
    let o = psc(&["verify", &p3, &bad]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("vertices 0 and 2"));
    let partial = p(dir.path(), "partial.json");
    fs::write(&partial, r#"{"palette":2,"colors":{"0":1,"1":2}}"#).unwrap();
    let o = psc(&["verify", &p3, &partial]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no color"));
    assert_eq!(code(&psc(&["verify", &p3, &p(dir.path(), "missing.json")])), 2);
}

#[test]
fn written_coloring_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = p(dir.path(), "g.pg");
    psc(&["gen", "--family", "random", "--n", "80", "--seed", "2", "-o", &g]);
    let c = p(dir.path(), "c.json");
    assert_eq!(code(&psc(&["color", &g, "--mode", "constructive", "-o", &c])), 0);
    assert_eq!(code(&psc(&["verify", &g, &c])), 0);
}

#[test]
fn disconnected_input_colored_per_component() {
    let dir = tempfile::tempdir().unwrap();
    let g = p(dir.path(), "two.pg");
    fs::write(&g, "n 5\n0: 1 2\n1: 2 0\n2: 0 1\n3: 4\n4: 3\n").unwrap();
    let c = p(dir.path(), "c.json");
    let o = psc(&["color", &g, "--mode", "constructive", "-o", &c]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&psc(&["verify", &g, &c])), 0);
    let o = psc(&["--json", "audit", &g]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn malformed_input_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = p(dir.path(), "bad.pg");
    fs::write(&g, "n 3\n0: 1\n1: 2\n2: 0\n").unwrap();
    assert_eq!(code(&psc(&["audit", &g])), 2);
    fs::write(&g, "hello\n").unwrap();
    assert_eq!(code(&psc(&["color", &g])), 2);
}

#[test]
fn corpus_and_bounds() {
    let o = psc(&[
        "--json", "corpus", "--count", "20", "--n", "10..60", "--delta", "9", "--seed", "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["status"] == "PASS"));
    let o = psc(&[
        "corpus",
        "--count",
        "10",
        "--n",
        "4..30",
        "--delta-max",
        "6",
        "--checks",
        "euler,constructive",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("PASS").count(), 2);
    let o = psc(&["--json", "bounds", "--delta", "9"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["proven_upper"], 25);
    assert_eq!(v[0]["wegner_lower"], 14);
}
