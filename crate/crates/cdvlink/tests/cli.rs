//! Command-line behaviour: report determinism, exit codes, provenance, and
//! batch mode.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cdvlink"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn classify_text_output() {
    let (stdout, _, code) = run(&["classify", "x^2+y^2-z^2-t^2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("family: cA1"));
    assert!(stdout.contains("case 6"));
}

#[test]
fn json_reports_are_byte_identical() {
    let (a, _, _) = run(&["link", "x^2+y^2+z^2-t^2", "--json"]);
    let (b, _, _) = run(&["link", "x^2+y^2+z^2-t^2", "--json"]);
    assert_eq!(a, b, "identical input and options must give identical JSON");
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["link"]["status"], "exact");
}

#[test]
fn exact_links_carry_provenance() {
    let (stdout, _, code) = run(&["link", "x^2+y^3+z^5+t^5", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["classification"]["family"], "cE8");
    let prov = v["link"]["provenance"].as_str().unwrap();
    assert!(!prov.is_empty());
}

#[test]
fn exit_code_not_cdv() {
    let (_, _, code) = run(&["classify", "y^3+z^3+t^3"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_code_not_terminal_quotient() {
    let (_, _, code) = run(&["link", "x^2+y^2+z^4+t^6 quotient: 1/5(1,1,1,0)"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_code_partial() {
    // cE7 always reduces to a report rather than an exact link.
    let (stdout, _, code) = run(&["link", "x^2+y^3+y*z^3+z^5*t", "--json"]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["link"]["status"], "partial");
    assert!(v["link"]["reduction"]["cone"].as_str().is_some());
}

#[test]
fn exit_code_inconclusive() {
    let (_, _, code) = run(&["classify", "x^2+y^2"]);
    assert_eq!(code, 3);
}

#[test]
fn exit_code_parse_error() {
    let (_, _, code) = run(&["classify", "x^2+w^3"]);
    assert_eq!(code, 4);
}

#[test]
fn quotient_flag_equivalent_to_clause() {
    let (a, _, _) = run(&[
        "link",
        "x^2+y^2+z^4+t^6 quotient: 1/2(1,1,1,0)",
        "--json",
    ]);
    let (b, _, _) = run(&[
        "link",
        "x^2+y^2+z^4+t^6",
        "--quotient",
        "1/2(1,1,1,0)",
        "--json",
    ]);
    let va: serde_json::Value = serde_json::from_str(&a).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(va["quotient"], vb["quotient"]);
    assert_eq!(va["link"], vb["link"]);
}

#[test]
fn companion_subcommand() {
    let (stdout, _, code) = run(&[
        "companion",
        "x^2+y^2+z^2+t^3 quotient: 1/2(1,1,1,0)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-z^2-y^2-x^2+t^3");
}

#[test]
fn batch_mode_keeps_order() {
    let dir = std::env::temp_dir().join("cdvlink-batch-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("inputs.txt");
    std::fs::write(
        &file,
        "x^2+y^2+z^2-t^2\n# a comment\nx^2+y^3+z^4+t^4\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&["link", "--batch", file.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().filter(|l| !l.is_empty()).collect();
    assert_eq!(lines.len(), 2);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(first["classification"]["family"], "cA1");
    assert_eq!(second["classification"]["family"], "cE6");
}

#[test]
fn verify_attaches_oracle() {
    let (stdout, _, code) = run(&[
        "verify",
        "x^2+y^2+z^2-t^2",
        "--resolution",
        "24",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["oracle"]["components"], 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn mesh_export_writes_off() {
    let dir = std::env::temp_dir().join("cdvlink-mesh-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("link.off");
    let (_, _, code) = run(&[
        "verify",
        "x^2+y^2+z^2-t^2",
        "--resolution",
        "16",
        "--mesh-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let data = std::fs::read_to_string(&path).unwrap();
    assert!(data.starts_with("OFF\n"));
    let counts: Vec<usize> = data
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect();
    assert!(counts[0] > 0 && counts[1] > 0);
}
