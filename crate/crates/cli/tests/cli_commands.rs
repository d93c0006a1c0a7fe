//! End-to-end command tests against the golden corpus: the exit-code
//! contract, byte-determinism of reports, round trips, and the normalization
//! warning.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn qlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlag"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn path_arg(p: &PathBuf) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_passing_documents_exit_zero() {
    for name in [
        "string-so3.json",
        "strict-so3.json",
        "strict-so3-quasiq.json",
        "so3-core0.json",
        "sl2-bialgebra.json",
        "ruth-omega.json",
        "xmod-so3.json",
        "quasiq-tuple.json",
        "gauge-morphism.json",
        "identity-morphism.json",
        "identity-homotopy.json",
    ] {
        let out = qlag(&["verify", &path_arg(&golden(name))]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["verdict"], "pass", "{name}");
    }
}

#[test]
fn verify_failing_documents_exit_one_with_witnesses() {
    for name in ["failing-jacobi.json", "broken-quasiq.json", "broken-bialgebra.json"] {
        let out = qlag(&["verify", &path_arg(&golden(name))]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["verdict"], "fail", "{name}");
        let some_witness = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["witness_total"].as_u64().unwrap() > 0);
        assert!(some_witness, "{name} lacks witnesses");
    }
}

#[test]
fn failing_jacobi_witness_is_the_predicted_tuple() {
    let out = qlag(&["verify", &path_arg(&golden("failing-jacobi.json"))]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let l2 = checks.iter().find(|c| c["id"] == "l2").unwrap();
    assert_eq!(l2["witnesses"][0]["site"], serde_json::json!([0, 1, 2]));
    assert_eq!(l2["witnesses"][0]["value"], "(0,0,-1)");
}

#[test]
fn unknown_kind_and_missing_file_exit_two() {
    let out = qlag(&["verify", &path_arg(&golden("unknown-kind.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown document kind"));
    let out = qlag(&["verify", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for name in ["string-so3.json", "broken-quasiq.json", "sl2-bialgebra.json"] {
        let a = qlag(&["verify", &path_arg(&golden(name))]);
        let b = qlag(&["verify", &path_arg(&golden(name))]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
    let a = qlag(&["random", "--kind", "l2", "--dims", "3,2", "--seed", "7"]);
    let b = qlag(&["random", "--kind", "l2", "--dims", "3,2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let c = qlag(&["random", "--kind", "l2", "--dims", "3,2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn roundtrip_and_dualize_pass_on_valid_input() {
    let out = qlag(&["roundtrip", &path_arg(&golden("string-so3.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identical"], true);

    let out = qlag(&["dualize", &path_arg(&golden("strict-so3-quasiq.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = qlag(&["dualize", &path_arg(&golden("broken-quasiq.json"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gauge_emits_verified_structure() {
    let out = qlag(&[
        "gauge",
        "--b",
        &path_arg(&golden("gauge-b.json")),
        &path_arg(&golden("strict-so3-quasiq.json")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // the emitted document is itself a valid quasiq document
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gauged.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out2 = qlag(&["verify", path.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn mc_command_matches_verify_verdicts() {
    let out = qlag(&["mc", "--dgla", "groupoid", "--in", &path_arg(&golden("strict-so3-quasiq.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = qlag(&["mc", "--dgla", "groupoid", "--in", &path_arg(&golden("broken-quasiq.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let out = qlag(&["mc", "--dgla", "bigbracket", "--in", &path_arg(&golden("sl2-bialgebra.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let out = qlag(&["mc", "--dgla", "mvf", "--in", &path_arg(&golden("quasiq-tuple.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn classify_names_the_table_rows() {
    let out = qlag(&["classify", &path_arg(&golden("sl2-bialgebra.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "Lie bialgebra");
    // the strict structure has K = 0, so the tuple mask is {Q} alone
    let out = qlag(&["classify", &path_arg(&golden("quasiq-tuple.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "strict L2-algebra");
}

#[test]
fn extend_builds_the_three_form_extension() {
    let out = qlag(&[
        "extend",
        "--h",
        &path_arg(&golden("h-zero.json")),
        "--xi",
        &path_arg(&golden("xi-det.json")),
        &path_arg(&golden("so3-core0.json")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extended.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out2 = qlag(&["verify", path.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn compose_identity_round_trips() {
    let out = qlag(&[
        "compose",
        &path_arg(&golden("gauge-morphism.json")),
        &path_arg(&golden("identity-morphism.json")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn normalization_warning_is_reported() {
    let out = qlag(&["verify", &path_arg(&golden("needs-normalizing.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized `2/4` to `1/2`"));
}

#[test]
fn suite_runs_and_passes() {
    let out = qlag(&["suite", "--seeds", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn documents_round_trip_bit_exactly() {
    for name in ["string-so3.json", "strict-so3-quasiq.json", "sl2-bialgebra.json"] {
        let bytes = std::fs::read(golden(name)).unwrap();
        let doc = qlag_cli::wire::Document::parse(&bytes).unwrap();
        assert_eq!(doc.to_bytes(), bytes, "{name}");
    }
}
