use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn acms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acms")).args(args).env_remove("ACMS_TOLERANCE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = acms(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("acms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path
}

fn canonical_structure_json(n: usize) -> Value {
    let dim = 2 * n + 1;
    let mut phi = vec![vec![0.0; dim]; dim];
    for i in 0..n {
        phi[n + i][i] = 1.0;
        phi[i][n + i] = -1.0;
    }
    let g: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| f64::from(i == j)).collect()).collect();
    let xi: Vec<f64> = (0..dim).map(|i| f64::from(i == dim - 1)).collect();
    serde_json::json!({ "n": n, "g": g, "phi": phi, "xi": xi })
}

#[test]
fn heisenberg_is_c6() {
    let v = json(&["classify", "--example", "heisenberg", "--n", "1", "--lambda", "1"]);
    let r = &v["results"][0];
    assert_eq!(r["report"]["hparallel_label"], "C6");
    assert_eq!(r["report"]["agreement"], true);
    let s = &r["intrinsic"]["S"];
    assert_eq!(s[0][0], 1.0);
    assert_eq!(s[1][1], 1.0);
    assert_eq!(s[2][2], 0.0);
}

#[test]
fn zero_input_is_cokahler() {
    let dim = 5;
    let point = serde_json::json!({
        "structure": canonical_structure_json(2),
        "tensor": { "entries": vec![vec![vec![0.0; dim]; dim]; dim] },
    });
    let path = temp_file("zero.json", &point.to_string());
    let o = acms(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C0 (cokähler)"), "{}", stdout(&o));
}

#[test]
fn three_alpha_delta_structures_are_c6() {
    let v = json(&["classify", "--example", "three-alpha-delta", "--alpha", "1", "--delta", "1"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    for r in results {
        assert_eq!(r["report"]["hparallel_label"], "C6");
    }
}

#[test]
fn dims_rows() {
    let two = stdout(&acms(&["dims", "--n", "2"]));
    assert!(two.lines().any(|l| l == "C9 | 6 | 6 | ok"), "{two}");
    let one = stdout(&acms(&["dims", "--n", "1"]));
    assert!(one.lines().any(|l| l == "C10 | 0 | 0 | ok"), "{one}");
    let three = stdout(&acms(&["dims", "--n", "3"]));
    assert!(three.lines().any(|l| l == "C12 | 6 | 6 | ok"), "{three}");
    assert!(!three.contains("MISMATCH"));
}

#[test]
fn connection_reports() {
    let zero = stdout(&acms(&["connection", "--example", "zero"]));
    assert!(zero.contains("minimal = Levi-Civita, T=0"), "{zero}");
    let c9 = stdout(&acms(&["connection", "--example", "c9"]));
    assert!(c9.contains("characteristic connection: does not exist (class C9)"), "{c9}");
    let v = json(&["connection", "--example", "heisenberg", "--n", "2", "--lambda", "1,1"]);
    let c = &v["results"][0]["connection"];
    assert_eq!(c["characteristic"]["exists"], true);
    assert_eq!(c["characteristic"]["eta_wedge_d_eta"]["holds"], true);
    for k in ["i", "ii", "iii"] {
        assert_eq!(c["parallel_torsion"][k]["holds"], true, "condition {k}");
    }
}

#[test]
fn project_onto_a_class() {
    let v = json(&["project", "--example", "heisenberg", "--n", "2", "--lambda", "1,2", "--class", "C7"]);
    let r = &v["results"][0];
    assert_eq!(r["class"], "C7");
    let p = r["projected_norm"].as_f64().unwrap();
    assert!(p > 0.1 && p < r["norm"].as_f64().unwrap());
    let bad = acms(&["project", "--example", "zero", "--class", "C13"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn examples_are_listed() {
    let v = json(&["examples"]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for expected in ["heisenberg", "three-alpha-delta", "c9", "cmin", "perturbed-heisenberg"] {
        assert!(names.contains(&expected), "{expected}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["classify", "--example", "random-lie", "--n", "2", "--seed", "4", "--format", "json"];
    let a = acms(&args);
    let b = acms(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn malformed_json_exits_1_with_position() {
    let path = temp_file("broken.json", "{\n  \"structure\": {\"n\": 1,\n");
    let o = acms(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn validation_failures_exit_2() {
    let mut st = canonical_structure_json(1);
    st["phi"][0][0] = serde_json::json!(0.5);
    let point = serde_json::json!({ "structure": st, "tensor": { "entries": vec![vec![vec![0.0; 3]; 3]; 3] } });
    let path = temp_file("bad-structure.json", &point.to_string());
    assert_eq!(acms(&["classify", "--input", path.to_str().unwrap()]).status.code(), Some(2));

    let mut entries = vec![vec![vec![0.0; 3]; 3]; 3];
    entries[0][0][0] = 1.0;
    let point = serde_json::json!({ "structure": canonical_structure_json(1), "tensor": { "entries": entries } });
    let path = temp_file("not-cv.json", &point.to_string());
    assert_eq!(acms(&["classify", "--input", path.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(acms(&["dims", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(acms(&["classify"]).status.code(), Some(1));
    assert_eq!(acms(&["classify", "--example", "no-such-thing"]).status.code(), Some(1));
    assert_eq!(acms(&["dims", "--tolerance", "-1"]).status.code(), Some(1));
    assert_eq!(acms(&["classify", "--input", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_acms"))
        .args(["dims", "--n", "1"])
        .env("ACMS_TOLERANCE", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_detects_faults() {
    let ok = acms(&["selftest", "--n", "1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("0 failed"));
    let fault = acms(&["selftest", "--n", "1", "--inject-fault"]);
    assert_ne!(fault.status.code(), Some(0));
}
