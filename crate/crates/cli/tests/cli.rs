use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn superw(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_superw"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("SUPERW_CACHE", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("spawn superw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let out = superw(None, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = stdout(&out);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &got).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "golden {name} differs");
}

#[test]
fn golden_algebra() {
    golden("algebra_w3.txt", &["algebra", "--n", "3", "--roots"]);
    golden("algebra_w2.json", &["--json", "algebra", "--n", "2"]);
}

#[test]
fn golden_decompose() {
    golden(
        "decompose_degree1_n4.txt",
        &["decompose", "--n", "4", "--degree", "1"],
    );
    golden(
        "decompose_tensor.json",
        &["--json", "decompose", "--lambda", "1,0,0", "--mu", "1,1,0"],
    );
}

#[test]
fn golden_kac() {
    golden(
        "kac_half.txt",
        &["kac", "--lambda", "1/2,1/2,1/2", "--irreducible", "--basis"],
    );
}

#[test]
fn golden_ext() {
    golden(
        "ext_oracle.json",
        &[
            "ext",
            "--lambda",
            "1/2,1/2,1/2",
            "--alpha",
            "1,1,-1",
            "--oracle",
        ],
    );
    golden(
        "ext_fragment.dot",
        &["ext", "--lambda", "21/2,11/2,1/2", "--fragment", "--dot"],
    );
}

#[test]
fn golden_cohomology() {
    golden(
        "cohomology_trivial_w3.json",
        &["cohomology", "--trivial", "--n", "3", "--check-d2"],
    );
}

#[test]
fn golden_block() {
    golden("block_id.json", &["block", "--lambda", "5/2,3/2,1/2"]);
    golden(
        "block_path.json",
        &["block", "--lambda", "5/2,3/2,1/2", "--mu", "7/2,5/2,1/2"],
    );
}

#[test]
fn golden_quiver() {
    golden("quiver_star4.txt", &["quiver", "--star", "4"]);
    golden("quiver_star5.json", &["--json", "quiver", "--star", "5"]);
}

#[test]
fn check_passes_with_zero_exit() {
    let out = superw(None, &["algebra", "--n", "3", "--check", "jacobi"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OK: 0 violations\n");
}

#[test]
fn exit_codes() {
    // mathematical precondition
    let out = superw(None, &["kac", "--lambda", "0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dominant"));
    // α outside the complement
    let out = superw(
        None,
        &["ext", "--lambda", "1/2,1/2,1/2", "--alpha", "1,0,-1"],
    );
    assert_eq!(out.status.code(), Some(1));
    // malformed input and inconsistent arguments
    for args in [
        &["kac", "--lambda", "1,x"][..],
        &["kac", "--lambda", "1,0", "--n", "3"],
        &["ext", "--lambda", "1/2,1/2,1/2"],
        &["block", "--lambda", "1,0", "--parity-base", "2"],
        &["verify", "--only", "11"],
        &["frobnicate"],
    ] {
        let out = superw(None, args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "ext",
        "--lambda",
        "5/2,3/2,1/2",
        "--alpha",
        "0,0,1",
        "--oracle",
    ];
    let plain = stdout(&superw(None, &args));
    let first = stdout(&superw(Some(dir.path()), &args));
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let second = stdout(&superw(Some(dir.path()), &args));
    assert_eq!(plain, first);
    assert_eq!(first, second);
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "cohomology",
        "--lambda",
        "1/2,1/2,1/2",
        "--mu",
        "3/2,3/2,-1/2",
    ];
    let good = stdout(&superw(Some(dir.path()), &args));
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let text = fs::read_to_string(&entry).unwrap();
    let tampered = text.replacen("\"h1\":1", "\"h1\":7", 1);
    assert_ne!(text, tampered, "entry layout changed");
    fs::write(&entry, tampered).unwrap();
    let out = superw(Some(dir.path()), &args);
    assert!(out.status.success());
    assert_eq!(stdout(&out), good);
    // unreadable garbage is also discarded
    fs::write(&entry, "{not json").unwrap();
    assert_eq!(stdout(&superw(Some(dir.path()), &args)), good);
}

#[test]
fn dot_round_trip_with_awkward_labels() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"vertices":["a \"quoted\" one","b\\c","(1/2,-1)"],
        "arrows":[{"source":"a \"quoted\" one","target":"b\\c","mult":2},
                  {"source":"(1/2,-1)","target":"b\\c","mult":1}]}"#;
    let jpath = dir.path().join("q.json");
    fs::write(&jpath, json).unwrap();
    let dot = stdout(&superw(
        None,
        &["quiver", "--file", jpath.to_str().unwrap(), "--dot"],
    ));
    assert!(dot.contains(r#""a \"quoted\" one""#), "{dot}");
    assert!(dot.contains(r#""b\\c""#), "{dot}");
    let dpath = dir.path().join("q.dot");
    fs::write(&dpath, &dot).unwrap();
    let again = stdout(&superw(
        None,
        &["quiver", "--file", dpath.to_str().unwrap(), "--dot"],
    ));
    assert_eq!(dot, again);
    let verdict = stdout(&superw(
        None,
        &["quiver", "--file", dpath.to_str().unwrap()],
    ));
    assert!(verdict.starts_with("Wild"), "{verdict}");
}

#[test]
fn verify_reports_one_line_per_criterion() {
    let out = superw(None, &["verify", "--only", "1,10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("PASS")));
}
