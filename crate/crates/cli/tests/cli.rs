use std::path::PathBuf;
use std::process::{Command, Output};

fn stci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn ex1_lists_generators_and_system() {
    let o = stci(&["example", "ex1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("X3*X5 - X4^2, X5*X7 - X6^2"));
    assert!(out.contains("overall: true"));
}

#[test]
fn ex4prime_json_bundle() {
    let o = stci(&["example", "ex4prime", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "true");
    let checks: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(checks, ["validate", "generators", "certificates", "radical-equal", "points"]);
    assert_eq!(v["reports"][0]["report"]["schema"], "stci.verification-report/1");
}

#[test]
fn scroll_and_selected_checks() {
    let o = stci(&["example", "scroll-c", "--c", "3", "--check", "radical-equal", "--field", "gf:101"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("GF(101)"));
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&stci(&["example", "ex9"])), 3);
    assert_eq!(code(&stci(&["example", "ex1", "--check", "nope"])), 3);
    assert_eq!(code(&stci(&["example", "ex5", "--check", "toric"])), 3);
    assert_eq!(code(&stci(&["example", "ex1", "--field", "gf:4"])), 3);
    assert_eq!(code(&stci(&["example", "ex1", "--cap-power", "0"])), 3);
    assert_eq!(code(&stci(&["verify", "/nonexistent.json"])), 3);
    assert_eq!(code(&stci(&["bogus"])), 3);
    assert_eq!(code(&stci(&["--help"])), 0);
}

#[test]
fn caps_exit_2() {
    let o = stci(&["example", "ex3", "--check", "radical-equal", "--cap-spairs", "1"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "i.txt", "X1*X2\n# vars: X1 X2 X3 X4 X5 X6 X7 X8 X9 X10 X11\n");
    assert_eq!(code(&stci(&["points", &f, "-p", "5"])), 2);
}

#[test]
fn verify_matrix_files() {
    let o = stci(&["verify", &fixture("ex1_matrix.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let single = write(&dir, "one.json", r#"{"variables": ["a", "b"], "big_blocks": [[[0, 1]]]}"#);
    let o = stci(&["verify", &single]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("J has 0 generators"));
    let bad = write(
        &dir,
        "bad.json",
        r#"{"variables": ["a", "b", "c"], "big_blocks": [[[0, 1]], [[0, 2]]]}"#,
    );
    let o = stci(&["verify", &bad]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let general = stci(&["verify", &fixture("ex5_matrix.json")]);
    assert_eq!(code(&general), 0);
    assert!(stdout(&general).contains("generalized matrix"));
}

#[test]
fn layered_systems() {
    assert_eq!(code(&stci(&["sv", &fixture("ex3_layers.json")])), 0);
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "s.json", r#"{"layers": [["X1"], ["X2", "X3"]]}"#);
    let o = stci(&["sv", &f]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(X2)*(X3)"));
}

#[test]
fn point_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.txt", "# product\nX1*X2\n");
    let b = write(&dir, "b.txt", "X1^2*X2\n");
    let dump = dir.path().join("pts.txt");
    let o = stci(&["points", &a, "-p", "2", "--against", &b, "--dump", dump.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(std::fs::read_to_string(&dump).unwrap(), "0,0\n0,1\n1,0\n");
    let c = write(&dir, "c.txt", "X1\n# vars: X1, X2\n");
    let o = stci(&["points", &a, "-p", "2", "--against", &c]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: (1,0) violates X1"));
}

#[test]
fn toric_fixture() {
    let o = stci(&["toric", &fixture("ex4_curve.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
