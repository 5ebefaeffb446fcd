use std::path::PathBuf;
use std::process::Command;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn dpc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dpc")).args(args).output().expect("runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn has(out: &str, line: &str) -> bool {
    out.lines().any(|l| l == line)
}

#[test]
fn check_poisson_passes_on_kt() {
    let (code, out) = dpc(&["check-poisson", spec("kt.dpc").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(has(&out, "check.double_poisson=pass"));
    assert!(has(&out, "status=pass"));
}

#[test]
fn check_poisson_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt010.dpc");
    let text = std::fs::read_to_string(spec("kt.dpc")).unwrap().replace("L = 1; M = 0", "L = 0; M = 1");
    std::fs::write(&path, text).unwrap();
    let (code, out) = dpc(&["check-poisson", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("witness.residual=")));
}

#[test]
fn cohomology_of_der_vanishes() {
    let (code, out) = dpc(&["cohomology", spec("der_x.dpc").to_str().unwrap(), "--degree", "1", "--weight", "2"]);
    assert_eq!(code, 0);
    assert!(has(&out, "cohomology=0"));
}

#[test]
fn rep_checks_on_symplectic_pair() {
    let (code, out) = dpc(&["rep", spec("symplectic.dpc").to_str().unwrap(), "--N", "2", "--check", "jacobi,trace"]);
    assert_eq!(code, 0);
    assert!(has(&out, "check.jacobi=pass"));
    assert!(has(&out, "check.trace=pass"));
    assert!(has(&out, "bracket[x_12,y_21]=1"));
}

#[test]
fn json_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let (code, _) = dpc(&["d", spec("kt_cotangent.dpc").to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["command"], "d");
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dpc(&["frobnicate", spec("kt.dpc").to_str().unwrap()]).0, 2);
    assert_eq!(dpc(&["check-poisson", "/nonexistent.dpc"]).0, 2);
    assert_eq!(dpc(&["d", spec("kt.dpc").to_str().unwrap()]).0, 2);
    assert_eq!(dpc(&[]).0, 2);
}

#[test]
fn every_shipped_spec_parses() {
    for e in std::fs::read_dir(spec("")).unwrap() {
        let p = e.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let f = dpc_core::cli::parse_spec(&text).unwrap();
        assert_eq!(dpc_core::cli::parse_spec(&f.to_string()).unwrap(), f, "{}", p.display());
        dpc_core::cli::resolve(&f).unwrap();
    }
}
