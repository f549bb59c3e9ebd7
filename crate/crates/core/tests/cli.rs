use std::path::PathBuf;
use std::process::{Command, Output};

use manin_denef::campaign::{read_certificates, Status};

fn mdcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdcheck")).args(args).output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mdcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_writes_certificates_and_reports() {
    let out = tmp("curve.json");
    let o = mdcheck(&["verify", "--suite", "curve,series", "--max-n", "3", "--trunc", "16", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let certs = read_certificates(&out).unwrap();
    assert!(!certs.is_empty() && certs.iter().all(|c| c.status == Status::Pass));
    assert!(stdout(&o).starts_with("lemma"));
    let r = mdcheck(&["report", "--in", out.to_str().unwrap()]);
    assert!(r.status.success());
    assert_eq!(stdout(&r), stdout(&o));
}

#[test]
fn exit_status_follows_failures() {
    let o = mdcheck(&["verify", "--suite", "curve", "--max-n", "3", "--tamper"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failing checks:"));
    let out = tmp("empty.json");
    let o = mdcheck(&["verify", "--suite", "", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(read_certificates(&out).unwrap().is_empty());
}

#[test]
fn configuration_errors() {
    for args in [&["verify", "--max-n", "0"][..], &["verify", "--trunc", "4"], &["verify", "--suite", "nope"], &["report", "--in", "/nonexistent/x.json"]] {
        let o = mdcheck(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = mdcheck(&["verify", "--suite", "encoder", "--max-n", "13"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn compute_xn() {
    let o = mdcheck(&["compute", "xn", "--n", "2"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "x_2 = (1/4*z^4 - 1/2*z^2 + 1/4)/(z^3 + z^2*δ + z)");
    let o = mdcheck(&["compute", "xn", "--n", "-2", "--tilde", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], -2);
    assert_eq!(v["x"], "(1/4*z^2 + 1/2*z + 1/4)/(z)");
}

#[test]
fn encode_matches_the_golden_files() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for d in ["meromorphic", "analytic", "entire-cm"] {
        let out = tmp(&format!("pyth.{d}.json"));
        let input = golden.join("pythagoras.dio");
        let o = mdcheck(&["encode", "--input", input.to_str().unwrap(), "--dialect", d, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(golden.join(format!("pythagoras.{d}.json"))).unwrap());
    }
    let bad = tmp("bad.dio");
    std::fs::write(&bad, "x^2 = = 1\n").unwrap();
    let o = mdcheck(&["encode", "--input", bad.to_str().unwrap(), "--dialect", "analytic"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mdcheck(&["encode", "--input", bad.to_str().unwrap(), "--dialect", "holomorphic"]);
    assert!(!o.status.success());
}
