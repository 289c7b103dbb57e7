use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_excess-kit"));
    cmd.env_remove("EXCESS_KIT_CATALOG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const ONE_KLEIN_E8: &str = r#"
ambient = "s4"

[[member]]
genus = 2
euler_number = 8
class = ""
"#;

const TWO_PLANES: &str = r#"
ambient = "s4"

[[member]]
genus = 1
euler_number = 2
class = ""

[[member]]
genus = 1
euler_number = -2
class = ""
"#;

#[test]
fn massey_text_and_json() {
    let o = run(&["massey", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-4 0 4\n");
    let o = run(&["massey", "--genus", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["admissible"], serde_json::json!([-2, 2]));
}

#[test]
fn bound_for_catalog_and_file_profiles() {
    let o = run(&["bound", "--manifold", "s4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["d_of_m"].as_u64(), v["b_of_m"].as_u64()), (Some(0), Some(0)));

    let dir = TempDir::new().unwrap();
    let cp2 = write(&dir, "cp2.toml", "name = \"cp2\"\nsignature = 1\neuler_characteristic = 3\nb1_f2 = 0\n");
    let o = run(&["bound", "--manifold", &cp2, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["d_of_m"].as_u64(), v["b_of_m"].as_u64()), (Some(8), Some(18)));
}

#[test]
fn check_exit_codes_follow_verdict() {
    let dir = TempDir::new().unwrap();
    let klein = write(&dir, "klein.toml", ONE_KLEIN_E8);
    let o = run(&["check", "--manifold", "s4", "--family", &klein]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verdict: Obstructed\n"));
    let bare = dir.path().join("klein");
    let o = run(&["check", "--manifold", "s4", "--family", bare.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));

    let planes = write(&dir, "planes.toml", TWO_PLANES);
    let o = run(&["check", "--manifold", "s4", "--family", &planes]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("same_sign"));

    let ok = write(&dir, "ok.toml", &ONE_KLEIN_E8.replace("euler_number = 8", "euler_number = 4"));
    let o = run(&["check", "--manifold", "s4", "--family", &ok]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn text_and_json_agree_and_json_is_canonical() {
    let dir = TempDir::new().unwrap();
    let klein = write(&dir, "klein.toml", ONE_KLEIN_E8);
    let text = run(&["check", "--manifold", "s4", "--family", &klein]);
    let json = run(&["check", "--manifold", "s4", "--family", &klein, "--format", "json"]);
    assert_eq!(text.status.code(), json.status.code());
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["verdict"], "Obstructed");
    assert_eq!((v["lhs"].as_i64(), v["rhs"].as_i64()), (Some(4), Some(0)));
    let again = format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
    assert_eq!(again, stdout(&json));
    let steps: Vec<excess_kit::engine::ProofStep> = serde_json::from_value(v["trace"].clone()).unwrap();
    assert!(steps.iter().all(|s| s.holds()));
}

#[test]
fn zerosum_reports_certificate_first() {
    let dir = TempDir::new().unwrap();
    let vecs = write(&dir, "v.txt", "# three vectors\n10\n01\n\n11\n");
    let o = run(&["zerosum", "--vectors", &vecs]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("{1,2,3}"));
    let o = run(&["zerosum", "--vectors", &vecs, "--exact", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["indices"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["method"], "exact");
}

#[test]
fn zerosum_effort_exhaustion_is_an_error() {
    let dir = TempDir::new().unwrap();
    let vecs = write(&dir, "v.txt", "100\n010\n001\n110\n011\n101\n");
    let o = run(&["zerosum", "--vectors", &vecs, "--exact", "--effort", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--effort"));
}

#[test]
fn malformed_family_names_line_and_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.toml", &ONE_KLEIN_E8.replace("genus = 2", "genus = 0"));
    let o = run(&["check", "--manifold", "s4", "--family", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 5") && err.contains("`genus`"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let wrong_dim = write(&dir, "dim.toml", &ONE_KLEIN_E8.replace("class = \"\"", "class = \"1\""));
    let err = stderr(&run(&["check", "--manifold", "s4", "--family", &wrong_dim]));
    assert!(err.contains("line 7") && err.contains("`class`"), "{err}");

    let unknown = write(&dir, "unknown.toml", &format!("{ONE_KLEIN_E8}colour = \"red\"\n"));
    let o = run(&["check", "--manifold", "s4", "--family", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn ambient_must_match_manifold() {
    let dir = TempDir::new().unwrap();
    write(&dir, "cp2.toml", "name = \"cp2\"\nsignature = 1\neuler_characteristic = 3\nb1_f2 = 0\n");
    let fam = write(
        &dir,
        "fam.toml",
        "ambient = \"cp2.toml\"\n[[member]]\ngenus = 1\neuler_number = 2\nclass = \"0\"\n",
    );
    let o = run(&["check", "--manifold", "s4", "--family", &fam]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ambient"));
    let cp2 = dir.path().join("cp2.toml");
    let o = run(&["check", "--manifold", cp2.to_str().unwrap(), "--family", &fam]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn audit_single_plane_on_s4() {
    let dir = TempDir::new().unwrap();
    let plane = write(&dir, "p.toml", "ambient = \"s4\"\n[[member]]\ngenus = 1\neuler_number = -6\nclass = \"\"\n");
    let o = run(&["audit", "--manifold", "s4", "--planes", &plane, "--exact", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "Obstructed");
    assert_eq!(v["b_of_m"], 0);
}

#[test]
fn cover_rejects_odd_euler_number() {
    let o = run(&["cover", "--manifold", "s4", "--genus", "1", "--euler", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sigma_n: 1\n"));
    let o = run(&["cover", "--manifold", "s4", "--genus", "1", "--euler", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).to_lowercase().contains("odd"));
}

#[test]
fn tube_adds_invariants() {
    let dir = TempDir::new().unwrap();
    let fam = write(&dir, "f.toml", &TWO_PLANES.replace("-2", "6"));
    let o = run(&["tube", "--family", &fam, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["genus"].as_u64(), v["euler_number"].as_i64()), (Some(2), Some(8)));
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn sweep_is_thread_independent() {
    let a = run(&["sweep", "--manifold", "s4", "--max-genus", "8", "--max-euler", "30", "--threads", "1", "--format", "json"]);
    let b = run(&["sweep", "--manifold", "s4", "--max-genus", "8", "--max-euler", "30", "--threads", "7", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&run(&["sweep", "--manifold", "s4", "--max-genus", "3", "--max-euler", "10"]));
    assert!(text.starts_with("g=1: bound satisfied for |e| <= 2\n"));
}

#[test]
fn catalog_env_adds_profiles() {
    let dir = TempDir::new().unwrap();
    let cat = write(
        &dir,
        "cat.toml",
        "[[profile]]\nname = \"cp2\"\nsignature = 1\neuler_characteristic = 3\nb1_f2 = 0\n",
    );
    let o = bin()
        .args(["catalog", "show", "cp2", "--format", "json"])
        .env("EXCESS_KIT_CATALOG", &cat)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d_of_m"], 8);
    let o = run(&["catalog", "show", "cp2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    let o = run(&["check", "--manifold", "s4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
    let o = run(&["bound", "--manifold", "nowhere"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(Path::new(env!("CARGO_BIN_EXE_excess-kit")).exists());
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
