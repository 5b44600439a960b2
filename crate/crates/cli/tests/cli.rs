use std::fs;
use std::process::{Command, Output};

use omega3_core::report::Document;

fn omega3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega3"))
        .args(args)
        .env_remove("OMEGA3_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Document {
    Document::from_json(&String::from_utf8_lossy(&out.stdout)).expect("valid report")
}

#[test]
fn a2_special_values_json() {
    let out = omega3(&["special-values", "--type", "A2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc.algebra, "A2");
    assert_eq!(doc.command, "special-values");
    assert_eq!(doc.submodules.len(), 2);
    for m in &doc.submodules {
        assert_eq!(m.s0, "0");
        assert_eq!(m.solutions.len(), 1);
        assert_eq!(
            (m.solutions[0].s.as_str(), m.solutions[0].t.as_str()),
            ("0", "3/4")
        );
    }
    // The raw text is the documented schema.
    let raw: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(raw["submodules"][0]["solutions"][0]["t"], "3/4");
    assert_eq!(raw["submodules"][0]["status"], "Exists");
}

#[test]
fn d4_verify_passes_at_special_value() {
    let out = omega3(&["verify", "--type", "D4", "--s", "-1", "--t", "0"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = omega3(&[
        "verify", "--type", "D4", "--s", "-1", "--t", "1/2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let v = doc.verify.unwrap();
    assert_eq!(v.checks, 72);
    assert!(!v.failures.is_empty());
}

#[test]
fn nonexistence_commands() {
    for ty in ["A3", "D5"] {
        let out = omega3(&["nonexist", "--type", ty, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{ty}");
        assert!(json(&out)
            .submodules
            .iter()
            .all(|m| m.status.to_string() == "NotExists"));
    }
    let out = omega3(&["nonexist", "--type", "D4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn omega2_check_d4() {
    let out = omega3(&["omega2-check", "--type", "D4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let comps: Vec<_> = doc.omega2.iter().map(|o| o.component.clone()).collect();
    assert_eq!(comps, vec![vec![1], vec![3], vec![4]]);
    assert!(doc
        .omega2
        .iter()
        .all(|o| o.solutions == vec!["-1".to_string()]));
}

#[test]
fn usage_and_unsupported_exit_codes() {
    assert_eq!(omega3(&["verify", "--type", "D4"]).status.code(), Some(2));
    assert_eq!(
        omega3(&["verify", "--type", "D4", "--s", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        omega3(&["special-values", "--type", "A2", "--t", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(omega3(&["explode", "--type", "A2"]).status.code(), Some(2));
    assert_eq!(omega3(&["build", "--type", "B3"]).status.code(), Some(3));
    assert_eq!(omega3(&["selftest", "--type", "G2"]).status.code(), Some(3));
    assert_eq!(omega3(&["build", "--type", "A1"]).status.code(), Some(3));
    let err = omega3(&["build", "--type", "F4"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("unsupported"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "special-values",
        "--type",
        "D4",
        "--format",
        "json",
        "--full",
    ];
    let a = omega3(&args);
    let b = omega3(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(Document::from_json(&doc.to_json()).unwrap(), doc);
    let m = &doc.submodules[0];
    let audit = m.audit.as_ref().unwrap();
    assert_eq!(audit.s_candidates, vec!["-1".to_string()]);
    let red = m.reducibility.as_ref().unwrap();
    assert_eq!(
        (red.eigen_on_system.as_str(), red.eigen_on_vacuum.as_str()),
        ("-5", "-2")
    );
    assert!(red.reducible);
}

#[test]
fn selftest_a2_text() {
    let out = omega3(&["selftest", "--type", "A2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("jacobi"));
    assert!(text.contains("512 checks"));
    assert!(text.contains("seed 3  PASS"));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.ntab");
    let p = path.to_str().unwrap();
    let first = omega3(&["build", "--type", "D4", "--cache", p, "--format", "json"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(json(&first)
        .build
        .unwrap()
        .cache
        .unwrap()
        .starts_with("wrote"));
    let second = omega3(&[
        "verify", "--type", "D4", "--s", "-1", "--t", "0", "--cache", p,
    ]);
    assert_eq!(second.status.code(), Some(0));

    // Flip one sign: the file still parses but fails re-validation.
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.last_mut().unwrap();
    *last = match last.strip_suffix(" 1") {
        Some(head) => format!("{head} -1"),
        None => format!("{} 1", last.strip_suffix(" -1").unwrap()),
    };
    fs::write(&path, lines.join("\n")).unwrap();
    let bad = omega3(&["build", "--type", "D4", "--cache", p]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("corrupt"));

    fs::write(&path, "# junk\n1 2 x\n").unwrap();
    assert_eq!(
        omega3(&["build", "--type", "D4", "--cache", p])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_omega3"))
        .args(["build", "--type", "A3"])
        .env("OMEGA3_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("A3.ntab").exists());
}
