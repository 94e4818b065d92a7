//! End-to-end tests of the binary: file formats, exit codes and JSON
//! output on the bundled corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus_path(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn bei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn report_json_has_the_documented_numbers() {
    let out = bei(&["report", &corpus_path("diamond.graph"), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bar"], 5);
    assert_eq!(v["ara_exact"], 4);
    assert_eq!(v["ht"], 3);
    assert_eq!(v["family"], "has_triangle");
}

#[test]
fn text_and_json_reports_agree() {
    let json_out = bei(&["report", &corpus_path("house.graph"), "--json"]);
    let text_out = bei(&["report", &corpus_path("house.graph")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let text = stdout(&text_out);
    assert!(text.contains(&format!("arithmetical rank = {} (exact)", v["ara_exact"])));
    assert!(text.contains(&format!("bar = ara_c = graded rank = {}", v["bar"])));
}

#[test]
fn certify_then_verify_round_trips() {
    let out = bei(&["certify", &corpus_path("paw.graph"), "--family", "auto"]);
    assert!(out.status.success());
    let cert_text = stdout(&out);
    assert!(cert_text.contains("size: 3"));
    let dir = std::env::temp_dir().join("bei-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert_file = dir.join("paw.cert");
    std::fs::write(&cert_file, &cert_text).unwrap();
    let out = bei(&[
        "verify",
        &corpus_path("paw.graph"),
        cert_file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("verified"));
}

#[test]
fn verify_rejects_with_exit_two_and_names_the_step() {
    let out = bei(&[
        "verify",
        &corpus_path("diamond.graph"),
        &corpus_path("diamond-missing.cert"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("spanning check failed"));

    let out = bei(&[
        "verify",
        &corpus_path("diamond.graph"),
        &corpus_path("diamond-paired.cert"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn house_certificate_verifies() {
    let out = bei(&[
        "verify",
        &corpus_path("house.graph"),
        &corpus_path("house.cert"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn sum_pairs_certify() {
    // generators of the diamond in edge order: (1,2) (1,3) (1,4) (2,3) (3,4)
    let out = bei(&[
        "certify",
        &corpus_path("diamond.graph"),
        "--sum-pairs",
        "3,4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("size: 4"), "{text}");
    assert!(text.contains("x1*x8 + x2*x7 - x3*x6 - x4*x5"), "{text}");
}

#[test]
fn groebner_and_membership_commands() {
    let dir = std::env::temp_dir().join("bei-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let ideal_file = dir.join("triangle.ideal");
    std::fs::write(
        &ideal_file,
        "vars 6\nx1*x5 - x2*x4\nx1*x6 - x3*x4\nx2*x6 - x3*x5\n",
    )
    .unwrap();
    let out = bei(&["gb", ideal_file.to_str().unwrap()]);
    assert!(out.status.success());
    let basis_lines = stdout(&out)
        .lines()
        .filter(|l| l.starts_with('x') || l.starts_with('-'))
        .count();
    assert_eq!(basis_lines, 3);

    let out = bei(&["member", "x1*x5 - x2*x4", ideal_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("member: true"));

    let out = bei(&["member", "x1", ideal_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // prime-field mode takes the same path
    let out = bei(&[
        "member",
        "x1*x5 - x2*x4",
        ideal_file.to_str().unwrap(),
        "--field",
        "32003",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn matching_command_reads_complex_files() {
    let dir = std::env::temp_dir().join("bei-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let complex_file = dir.join("two-segments.complex");
    std::fs::write(
        &complex_file,
        "vertices 4\n{1,6}\n{2,5}\n{2,7}\n{3,6}\nfaces\n1 2\n3 4\n",
    )
    .unwrap();
    let out = bei(&["matching", complex_file.to_str().unwrap(), "--q", "0,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("delta = 2"));
}

#[test]
fn chain_output_parses_back() {
    let out = bei(&["chain", "--k", "2", "--r", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("7 8\n"));
}

#[test]
fn corpus_summary_counts() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"]
        .iter()
        .collect();
    let out = bei(&["corpus", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 error(s)"), "{text}");
    assert!(text.contains("diamond.graph"));
    // every bundled graph yields an exact rank except the shared-bridge variant
    assert!(text.contains("1 open"), "{text}");
}

#[test]
fn corpus_reports_per_file_errors_and_continues() {
    let dir = std::env::temp_dir().join("bei-cli-corpus-err");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("good.graph"), "2 1\n1 2\n").unwrap();
    std::fs::write(dir.join("bad.graph"), "3 1\n1 1\n").unwrap();
    let out = bei(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("good.graph"));
    assert!(text.contains("1 error(s)"), "{text}");

    let empty = std::env::temp_dir().join("bei-cli-corpus-empty");
    let _ = std::fs::remove_dir_all(&empty);
    std::fs::create_dir_all(&empty).unwrap();
    let out = bei(&["corpus", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = std::env::temp_dir().join("bei-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("loop.graph");
    std::fs::write(&bad, "3 1\n1 1\n").unwrap();
    let out = bei(&["report", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn resource_cap_env_overrides_error_cleanly() {
    let dir = std::env::temp_dir().join("bei-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let ideal_file = dir.join("cap.ideal");
    std::fs::write(&ideal_file, "vars 3\nx1^2*x2 - x3\nx1*x3 - x2^2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(["gb", ideal_file.to_str().unwrap()])
        .env("BEI_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("max_degree"), "{err}");
}
