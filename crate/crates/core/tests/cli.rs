use std::process::Command;

fn lrsched(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lrsched")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn counterexample_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cx4.json");
    let path = file.to_str().unwrap();
    assert_eq!(lrsched(&["gen", "counterexample", "--p", "4", "-o", path]).0, 0);

    let (code, out, _) = lrsched(&["solve", "--algo", "pd", "-i", path]);
    assert_eq!(code, 0);
    assert!(out.contains("primal=16 dual=6 gap=8/3 (2.666667)"), "{}", out);

    let (code, out, _) = lrsched(&["solve", "--algo", "lr", "-i", path, "--check-bounds"]);
    assert_eq!(code, 0);
    assert!(out.contains("primal=16 lower_bound=6"));
    assert!(out.contains("level_bound: pass"));

    let (code, out, _) = lrsched(&["solve", "--algo", "oracle", "-i", path]);
    assert_eq!(code, 0);
    assert!(out.starts_with("opt=16"));
}

#[test]
fn trace_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    let path = file.to_str().unwrap();
    let gen = ["gen", "random", "--seed", "7", "--n", "5", "--pmax", "4", "--kappa", "2", "--cost", "step", "-o", path];
    assert_eq!(lrsched(&gen).0, 0);
    let a = lrsched(&["solve", "--algo", "lr-rd", "-i", path, "--trace", "--check-bounds"]);
    let b = lrsched(&["solve", "--algo", "lr-rd", "-i", path, "--trace", "--check-bounds"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a.1, b.1);
    assert!(a.1.starts_with("# k t* r* A-size D alpha j s undo\n"));
}

#[test]
fn usage_and_input_errors() {
    let (code, _, err) = lrsched(&["gen", "counterexample", "--p", "3"]);
    assert_ne!(code, 0);
    assert!(err.contains("p must be ≥ 4"));
    assert_eq!(lrsched(&["gap", "--family", "counterexample"]).0, 2);
    assert_eq!(lrsched(&["solve", "--algo", "bogus", "-i", "x"]).0, 2);
}

#[test]
fn plain_solvers_reject_release_dates() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    let path = file.to_str().unwrap();
    let gen = ["gen", "random", "--seed", "3", "--n", "4", "--pmax", "3", "--kappa", "2", "-o", path];
    assert_eq!(lrsched(&gen).0, 0);
    let (code, _, err) = lrsched(&["solve", "--algo", "pd", "-i", path]);
    assert_eq!(code, 1);
    assert!(err.contains("release dates"), "{}", err);
}
