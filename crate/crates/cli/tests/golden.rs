use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_qinv");
const DIR: &str = env!("CARGO_MANIFEST_DIR");

fn qinv(args: &[&str]) -> (String, i32) {
    let out = Command::new(BIN).current_dir(DIR).args(args).output().expect("run qinv");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(DIR).join("tests/golden").join(name)).unwrap()
}

#[track_caller]
fn check(args: &[&str], file: &str, code: i32) {
    let (out, status) = qinv(args);
    assert_eq!(out, golden(file), "{args:?}");
    assert_eq!(status, code, "{args:?}");
}

#[test]
fn invariant_s3() {
    // q^-1 = zeta^2 = -1 - zeta in the reduced basis of Q(zeta_3)
    check(&["invariant", "s3", "uq:3"], "invariant_s3_uq3.txt", 0);
}

#[test]
fn invariant_l21_via_heisenberg() {
    check(&["invariant", "data/l21.og", "uq:3", "--via", "heisenberg"], "invariant_l21_uq3_heisenberg.txt", 0);
}

#[test]
fn check_group_table() {
    check(&["check", "group:data/z2.tbl"], "check_z2.txt", 0);
}

#[test]
fn integrals() {
    check(&["integrals", "uq:3"], "integrals_uq3.txt", 0);
}

#[test]
fn pentagon() {
    check(&["pentagon", "group:data/z2.tbl"], "pentagon_z2.txt", 0);
}

#[test]
fn fuzz() {
    check(&["fuzz", "l21", "uq:3", "--steps", "200", "--seed", "7"], "fuzz_l21_uq3.txt", 0);
    let (out, _) = qinv(&["fuzz", "l21", "uq:3", "--steps", "200", "--seed", "7"]);
    let zs: Vec<&str> = out.lines().filter(|l| l.starts_with("  step")).map(|l| l.rsplit("Z = ").next().unwrap()).collect();
    assert_eq!(zs.len(), 200);
    assert!(zs.iter().all(|z| *z == "(-2) @ zeta(3)"));
}

#[test]
fn errors_exit_nonzero() {
    check(&["invariant", "s3", "nope:3"], "error_spec.txt", 2);
    assert_eq!(qinv(&["invariant", "missing.og", "uq:3"]).1, 2);
    assert_eq!(qinv(&["invariant", "s3", "uq:3", "--via", "abacus"]).1, 2);
    assert_eq!(qinv(&["check", "group:data/missing.tbl"]).1, 2);
    // the odd cointegral of Lambda(1) breaks mu_L(e_R) = q
    let (out, code) = qinv(&["integrals", "ext:1"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fail  "));
}

#[test]
fn algebra_file_and_table_agree() {
    let (a, _) = qinv(&["invariant", "l21", "file:data/z2.hopf"]);
    let (b, _) = qinv(&["invariant", "l21", "group:data/z2.tbl"]);
    assert_eq!(a, b);
}

#[test]
fn deterministic_and_mode_independent() {
    let args = ["fuzz", "lens(3)", "group:data/s3.tbl", "--steps", "20", "--seed", "3"];
    let (a, _) = qinv(&args);
    let (b, _) = qinv(&args);
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    let (c, _) = qinv(&seq);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn output_grammar() {
    for f in std::fs::read_dir(Path::new(DIR).join("tests/golden")).unwrap() {
        let text = std::fs::read_to_string(f.unwrap().path()).unwrap();
        let mut lines = text.lines();
        let head = lines.next().unwrap();
        let (status, rest) = head.split_once("  ").unwrap();
        assert!(["ok", "fail", "error"].contains(&status));
        assert!(!rest.is_empty());
        assert!(lines.all(|l| l.starts_with("  ")));
    }
}
