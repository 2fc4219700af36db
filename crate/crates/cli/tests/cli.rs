use std::process::{Command, Output};

fn minfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minfam")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn qprofile_table_for_twisted_cubic_family() {
    let o = minfam(&["qprofile", "--fixture", "3.2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("   2 |     4 |    4 |   3 |   3"), "{text}");
    assert!(text.contains("b0 = 0"));
    assert!(text.contains("r = 4"));
}

#[test]
fn qprofile_json_agrees_with_table() {
    let o = minfam(&["qprofile", "--fixture", "3.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["q"], serde_json::json!({"2": 2, "3": 3}));
    assert_eq!(v["b0"], serde_json::json!({"exact": 1}));
    let table = stdout(&minfam(&["qprofile", "--fixture", "3.3"]));
    assert!(table.contains("q = {2: 2, 3: 3}"));
}

#[test]
fn empty_matrix_gives_empty_profile() {
    let dir = std::env::temp_dir().join(format!("minfam-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.json");
    std::fs::write(&path, r#"{"row_degrees": [0, 1], "col_degrees": [], "entries": [[], []]}"#).unwrap();
    let o = minfam(&["qprofile", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("r = 0"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("minfam-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"row_degrees": [0], "col_degrees": [1], "entries": [["X^2"]]}"#).unwrap();
    assert_eq!(minfam(&["qprofile", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(minfam(&["qprofile", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(minfam(&["qprofile", "--fixture", "9.9"]).status.code(), Some(2));
}

#[test]
fn exported_fixture_round_trips() {
    let o = minfam(&["export", "--fixture", "3.2"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("minfam-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let a = minfam(&["qprofile", "--input", path.to_str().unwrap()]);
    let b = minfam(&["qprofile", "--fixture", "3.2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn non_locally_free_input_exits_3_unless_trusted() {
    let dir = std::env::temp_dir().join(format!("minfam-lf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    // sigma1 = (X, Y), sigma2 its syzygy
    std::fs::write(
        &path,
        r#"{"row_degrees": [0, 1, 1], "col_degrees": [1, 1, 2],
            "entries": [["X", "Y", "0"], ["a", "0", "Y"], ["0", "a", "-X"]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(minfam(&["qprofile", "--input", p]).status.code(), Some(3));
    let o = minfam(&["qprofile", "--input", p, "--assume-locally-free"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn minimal_family_values_and_determinism() {
    let a = minfam(&["minimal-family", "--fixture", "3.2", "--seed", "7"]);
    let b = minfam(&["minimal-family", "--fixture", "3.2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("h0    = 2"), "{text}");
    assert!(text.contains("d0    = 6"));
    assert!(text.contains("g0    = 3"));
    let o = minfam(&["minimal-family", "--fixture", "3.4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d0"], 120);
    assert_eq!(v["g0"], "1001");
}

#[test]
fn dissociated_sheaf_exits_5() {
    let dir = std::env::temp_dir().join(format!("minfam-dis-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    // a free sheaf: every column is a minimal generator of a free module
    std::fs::write(&path, r#"{"row_degrees": [0, 0], "col_degrees": [0, 0], "entries": [["1", "0"], ["0", "1"]]}"#)
        .unwrap();
    assert_eq!(minfam(&["minimal-family", "--input", path.to_str().unwrap()]).status.code(), Some(5));
}

#[test]
fn check_p_verdicts() {
    let ok = minfam(&["check-p", "--fixture", "3.2", "--p", r#"{"2": 3}"#]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("shift h = 2"));
    let bad = minfam(&["check-p", "--fixture", "3.2", "--p", r#"{"1": 1, "2": 2}"#]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("p#(1) = 1 > q#(1) = 0"));
    assert_eq!(minfam(&["check-p", "--fixture", "3.2", "--p", r#"{"2": 2}"#]).status.code(), Some(2));
    assert_eq!(minfam(&["check-p", "--fixture", "3.2", "--p", "{2: 3"]).status.code(), Some(2));
}

#[test]
fn window_too_small_exits_4_on_check() {
    let o = minfam(&["check-p", "--fixture", "3.3", "--window", "1:2", "--p", r#"{"2": 2, "3": 3}"#]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn examples_pass_and_perturbation_fails() {
    let o = minfam(&["examples"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 26 checks pass"));
    let o = minfam(&["examples", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("3.4 sigma2 generators: expected 34"));
    let o = minfam(&["examples", "--export", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["pass"] == true));
}
