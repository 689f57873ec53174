use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn berrykit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berrykit"))
        .args(args)
        .env_remove("BERRYKIT_BUDGET")
        .env_remove("BERRYKIT_CAP")
        .env_remove("BERRYKIT_JSON")
        .env_remove("BERRYKIT_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    berrykit(args).status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = berrykit(args);
    serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)))
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["parse", "v0 = s 0"], 0),
        (&["parse", "v0 = "], 2),
        (&["eval", "(E v0)(v0 + v0 = s s 0)"], 0),
        (&["eval", "0 = s 0"], 0),
        (&["eval", "v0 = 0"], 2),
        (&["--budget", "2", "eval", "(E v0)(v0 = s s s s s 0)"], 3),
        (&["classify", "(E v1)(v1 = v0)"], 0),
        (&["gn", "decode", "7"], 2),
        (&["rel", "snt", "7"], 1),
        (&["bounds", "--phi-mock", "50:2"], 0),
        (&["bounds", "--phi-mock", "3:1"], 2),
        (&["bounds", "--phi-mock", "x"], 2),
        (&["berry", "--max-len", "99"], 2),
        (&["berry", "--max-len", "5"], 0),
        (&["prove-sigma", "~(0 = s 0)"], 0),
        (&["prove-sigma", "0 = s 0"], 1),
        (&["prove-sigma", "(A v0)(v0 = v0)"], 2),
        (&["--budget", "3", "prove-sigma", "(E v0)(v0 = s s s s s s 0)"], 3),
        (&["demo", "9"], 2),
        (&["demo"], 2),
        (&["--bogus"], 2),
        (&["nonsense"], 2),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "{args:?}");
    }
}

#[test]
fn proof_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["prove-sigma", "(E v0)(v0 + s 0 = s s 0)", "-o", p]), 0);
    assert_eq!(code(&["check-proof", p]), 0);
    assert_eq!(code(&["check-proof", p, "--goal", "(E v0)(v0 + s 0 = s s 0)"]), 0);
    assert_eq!(code(&["check-proof", p, "--goal", "0 = 0"]), 1);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let last = lines.pop().unwrap().replace("s s 0", "s s s 0");
    lines.push(&last);
    std::fs::write(&path, lines.join("\n")).unwrap();
    assert_eq!(code(&["check-proof", p]), 1);
    assert_eq!(code(&["check-proof", "/nonexistent/file"]), 2);
}

#[test]
fn json_outputs_are_versioned() {
    let b = json(&["--json", "berry", "--max-len", "6", "--budget", "32"]);
    assert_eq!(b["v"], 1);
    assert_eq!(b["n"], 3);
    assert_eq!(b["certificates"][2]["witness"], "s s 0 = v0");
    let c = json(&["--json", "bounds", "--phi-mock", "50:2"]);
    assert_eq!(c["v"], 1);
    assert_eq!(c["holds"], true);
    assert_eq!(c["constants"]["k2"], 3);
    let p = json(&["--json", "parse", "(A v1 < v0)(v1 <= v0)"]);
    assert_eq!(p["length"], 18);
    assert_eq!(p["class"], "delta0");
    let r = json(&["--json", "rel", "b", "0", "6"]);
    assert_eq!(r["holds"], true);
    assert_eq!(r["relation"], "b");
}

#[test]
fn godel_numbers_round_trip() {
    let enc = stdout(&berrykit(&["gn", "encode", "(A v1)(v1 <= v0)"]));
    let dec = stdout(&berrykit(&["gn", "decode", enc.trim()]));
    assert_eq!(dec.trim(), "( A v1 ) ( v1 <= v0 )");
    let hex = stdout(&berrykit(&["gn", "encode", "0 = 0", "--hex"]));
    assert!(hex.starts_with("0x"));
    let back = stdout(&berrykit(&["gn", "decode", hex.trim(), "--hex"]));
    assert_eq!(back.trim(), "0 = 0");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_berrykit"))
        .args(["parse", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"s 0 + 0").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("s 0 + 0"));
}

#[test]
fn config_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("berrykit.toml");
    std::fs::write(&cfg, "budget = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let slow = ["eval", "(E v0)(v0 = s s s s s 0)"];
    assert_eq!(code(&[&["--config", c], &slow[..]].concat()), 3);
    assert_eq!(code(&[&["--config", c, "--budget", "10"], &slow[..]].concat()), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_berrykit")).args(slow).env("BERRYKIT_BUDGET", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(code(&[&["--config", c], &slow[..]].concat()), 2);
}

#[test]
fn seeded_sampling_is_reproducible() {
    let a = stdout(&berrykit(&["--seed", "11", "sample", "--count", "5"]));
    let b = stdout(&berrykit(&["--seed", "11", "sample", "--count", "5"]));
    let c = stdout(&berrykit(&["--seed", "12", "sample", "--count", "5"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    for line in a.lines() {
        assert_eq!(code(&["parse", line]), 0, "{line}");
    }
}

#[test]
fn demo_replay() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["2", "5"] {
        let path = dir.path().join(format!("d{id}.json"));
        let p = path.to_str().unwrap();
        assert_eq!(code(&["demo", id, "-o", p]), 0);
        assert_eq!(code(&["demo", "--replay", p]), 0);
        let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        report["claims"][0]["evidence"][0]["n"] = Value::from(7);
        std::fs::write(&path, report.to_string()).unwrap();
        assert_eq!(code(&["demo", "--replay", p]), 1);
    }
}

#[test]
fn boolos_template() {
    let t = stdout(&berrykit(&["boolos", "--phi-mock", "50:2"]));
    assert!(t.contains("#n"));
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.txt");
    std::fs::write(&phi, "v0 = v1").unwrap();
    let f = phi.to_str().unwrap();
    let s = stdout(&berrykit(&["boolos", "--phi-file", f, "--n", "1"]));
    assert!(!s.contains("v0") && !s.contains("v1"));
    assert!(s.contains("( A v2 )"));
    assert_eq!(code(&["bounds", "--phi-file", f]), 0);
}
