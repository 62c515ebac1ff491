use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mfx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfx")).args(args).output().expect("run mfx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn exported() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = mfx(&["catalog", "export", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    dir
}

#[test]
fn verify_catalog_file_passes() {
    let dir = exported();
    let file = dir.path().join("cone-4x4-l1.mfx");
    let o = mfx(&["verify", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("CHECK verify PASS"));
}

#[test]
fn broken_factorization_exits_one() {
    let dir = exported();
    let file = dir.path().join("bgs-ii.mfx");
    let text = fs::read_to_string(&file).unwrap();
    // phi: x  ->  phi: t
    let (head, tail) = text.split_once("phi:\n").unwrap();
    let tail = tail.replacen('x', "t", 1);
    fs::write(&file, format!("{head}phi:\n{tail}")).unwrap();
    let o = mfx(&["verify", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("CHECK verify FAIL"));
}

#[test]
fn missing_file_and_bad_verb_exit_two() {
    assert_eq!(mfx(&["verify", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(mfx(&["frobnicate"]).status.code(), Some(2));
    let garbage = tempfile::NamedTempFile::new().unwrap();
    fs::write(garbage.path(), "not a factorization\n").unwrap();
    assert_eq!(mfx(&["verify", garbage.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn minv_point() {
    let o = mfx(&["minv", "--pattern", "point"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "m = 2"));
    let o = mfx(&["minv", "--pattern", "determinantal(4)"]);
    assert!(stdout(&o).lines().any(|l| l == "m = -4"));
    assert_eq!(mfx(&["minv", "--pattern", "determinantal(3)"]).status.code(), Some(2));
}

#[test]
fn machine_format_is_check_lines_only() {
    let o = mfx(&["--machine", "exact", "scroll-2", "--cutoff", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.is_empty());
    for l in out.lines() {
        assert!(l.starts_with("CHECK ") && (l.contains(" PASS") || l.contains(" FAIL")), "{l}");
    }
}

#[test]
fn gprime_condition_c() {
    let o = mfx(&["gprime", "quadric-surface", "--check", "I_L + I_M"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mfx(&["gprime", "veronese", "--check", "2*I_C"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("warning: veronese: no certified sequences"));
}

#[test]
fn transform_knoerrer_of_bgs_iii_is_the_cone_display() {
    let dir = exported();
    let out = dir.path().join("k.mfx");
    let src = dir.path().join("bgs-iii-l1.mfx");
    let o = mfx(&["transform", src.to_str().unwrap(), "--op", "knoerrer", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mfx(&["verify", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn selftest_is_deterministic() {
    let a = mfx(&["selftest", "--seed", "7", "--criterion", "2"]);
    let b = mfx(&["selftest", "--seed", "7", "--criterion", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_names_a_tampered_file() {
    let dir = exported();
    let d = dir.path().to_str().unwrap();
    let ok = mfx(&["selftest", "--criterion", "10", "--data", d]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let victim: PathBuf = dir.path().join("r1-d-l2.mfx");
    let text = fs::read_to_string(&victim).unwrap();
    fs::write(&victim, text.replacen("t^2", "t^3", 1)).unwrap();
    let bad = mfx(&["selftest", "--criterion", "10", "--data", d]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("CHECK c10.data-dir FAIL r1-d-l2.mfx"), "{}", stdout(&bad));
}

#[test]
fn malformed_degrees_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let twisted = dir.path().join("twisted.mfx");
    fs::write(&twisted, "mf\nvars: x,y\ndegs: 1,1\nmod:\nf: x^2+y^2\nrows: 0\ncols: 1\nphi:\n3*x*y\npsi:\n1\n")
        .unwrap();
    let o = mfx(&["verify", twisted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("CHECK periodic FAIL"));

    let mixed = dir.path().join("mixed.mfx");
    fs::write(&mixed, "mf\nvars: x,y\ndegs: 1,2\nmod:\nf: x^2+y\nrows: 0\ncols: 1\nphi:\nx+y\npsi:\nx\n").unwrap();
    let o = mfx(&["hilbert", mixed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not homogeneous"));
}
