use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use niep_core::dft::{skew_eigenvalues, FirstRow};
use niep_core::Complex64;
use serde_json::{json, Value};
use tempfile::TempDir;

fn niep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_niep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, doc.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn matrix(v: &Value) -> Vec<Vec<f64>> {
    serde_json::from_value(v.clone()).unwrap()
}

fn pairs(list: &[Complex64]) -> Value {
    list.iter().map(|z| json!([z.re, z.im])).collect()
}

fn skew_spectrum(c: &[f64]) -> Value {
    pairs(&skew_eigenvalues(&FirstRow::new(c.to_vec()).unwrap()))
}

fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| {
            assert_eq!(x.len(), y.len());
            x.iter().zip(y).map(|(p, q)| (p - q).abs())
        })
        .fold(0.0, f64::max)
}

fn seven() -> Vec<Vec<f64>> {
    vec![
        vec![4.5, 0.5, 2.0, 4.0, 2.0, 1.0, 1.0],
        vec![0.5, 4.5, 4.0, 2.0, 1.0, 2.0, 1.0],
        vec![0.0, 1.0, 4.5, 0.5, 2.0, 4.0, 3.0],
        vec![1.0, 0.0, 0.5, 4.5, 4.0, 2.0, 3.0],
        vec![2.5, 0.5, 0.0, 1.0, 4.5, 0.5, 6.0],
        vec![0.5, 2.5, 1.0, 0.0, 0.5, 4.5, 6.0],
        vec![3.0, 3.0, 3.0, 0.0, 1.0, 0.0, 5.0],
    ]
}

fn eight() -> Vec<Vec<f64>> {
    vec![
        vec![0.5, 1.5, 2.5, 1.5, 0.0, 0.0, 1.5, 0.5],
        vec![1.5, 0.5, 1.5, 2.5, 0.0, 0.0, 0.5, 1.5],
        vec![0.5, 1.5, 0.5, 1.5, 2.5, 1.5, 0.0, 0.0],
        vec![1.5, 0.5, 1.5, 0.5, 1.5, 2.5, 0.0, 0.0],
        vec![0.0, 0.0, 0.5, 1.5, 0.5, 1.5, 2.5, 1.5],
        vec![0.0, 0.0, 1.5, 0.5, 1.5, 0.5, 1.5, 2.5],
        vec![1.5, 2.5, 0.0, 0.0, 0.5, 1.5, 0.5, 1.5],
        vec![2.5, 1.5, 0.0, 0.0, 1.5, 0.5, 1.5, 0.5],
    ]
}

fn circ(row: &[f64]) -> Vec<Vec<f64>> {
    let n = row.len();
    (0..n)
        .map(|i| (0..n).map(|j| row[(j + n - i) % n]).collect())
        .collect()
}

#[test]
fn realize4_integer_fixture() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &json!([[8, 0], [-6, 0], [-1, 5], [-1, -5]]));
    let out = niep(&["realize4", s(&p)]);
    assert_eq!(code(&out), 0);
    let rep = stdout_json(&out);
    assert_eq!(
        matrix(&rep["matrix"]),
        vec![
            vec![0.0, 1.0, 6.0, 1.0],
            vec![1.0, 0.0, 1.0, 6.0],
            vec![1.0, 6.0, 0.0, 1.0],
            vec![6.0, 1.0, 1.0, 0.0],
        ]
    );
    assert!(rep["verification"]["max_pair_distance"].as_f64().unwrap() < 1e-10);
}

#[test]
fn realize4_half_integer_fixture_as_csv() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &json!([8, 2, [3, 2], [3, -2]]));
    let csv_path = dir.path().join("m.csv");
    let out = niep(&["realize4", s(&p), "--format", "csv", "--out", s(&csv_path)]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text, "4,1,2.5,0.5\n1,4,0.5,2.5\n0.5,2.5,4,1\n2.5,0.5,1,4\n");
}

#[test]
fn realize4_unrealizable_exits_2_with_named_condition() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &json!([1, 2, [0, 1], [0, -1]]));
    let out = niep(&["realize4", s(&p)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("condition not met"), "{err}");
    assert!(err.contains("Im λ3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn realize4_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_niep"))
        .args(["realize4", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"[[8,0],[-6,0],[-1,5],[-1,-5]]")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(matrix(&stdout_json(&out)["matrix"])[0], vec![0.0, 1.0, 6.0, 1.0]);
}

#[test]
fn realize_region_point_and_outside() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", &json!({"r": 0.0, "a": 0.0, "b": 0.0}));
    let out = niep(&["realize-region", s(&p)]);
    assert_eq!(code(&out), 0);
    let m = matrix(&stdout_json(&out)["matrix"]);
    for row in &m {
        let mut sorted = row.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(sorted, vec![0.25; 4]);
    }
    let p = write(&dir, "q.json", &json!({"r": 0.0, "a": 0.9, "b": 0.0}));
    assert_eq!(code(&niep(&["realize-region", s(&p)])), 2);
    let p = write(&dir, "bad.json", &json!({"r": 2.0, "a": 0.0, "b": 0.0}));
    assert_eq!(code(&niep(&["realize-region", s(&p)])), 3);
}

#[test]
fn build_circ_skew_eight_fixture() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "b.json",
        &json!({"kind": "circ-skew", "s": [2, 4, 0, 2], "c": [-1, 1, 0, 1]}),
    );
    let out = niep(&["build", s(&p), "--gamma", "1", "--sign", "plus"]);
    assert_eq!(code(&out), 0);
    let rep = stdout_json(&out);
    assert!(max_diff(&matrix(&rep["matrix"]), &eight()) <= 1e-12);
}

#[test]
fn build_odd_seven_fixture_with_split() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "b.json",
        &json!({"kind": "odd", "s": circ(&[5.0, 6.0, 3.0, 1.0]), "c": [4, -2, 1]}),
    );
    let out = niep(&["build", s(&p), "--split", "[[3,3],[3,0],[1,0]]"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(max_diff(&matrix(&stdout_json(&out)["matrix"]), &seven()) <= 1e-12);

    // Default split still verifies.
    let out = niep(&["build", s(&p)]);
    assert_eq!(code(&out), 0);
    let m = matrix(&stdout_json(&out)["matrix"]);
    assert_eq!(m[6], vec![3.0, 3.0, 1.5, 1.5, 0.5, 0.5, 5.0]);
}

#[test]
fn build_even_and_abscirc_minus_sign() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "even.json",
        &json!({"kind": "even", "s": [[2, 1], [0, 3]], "c": [[1, -1], [0, 2]]}),
    );
    let out = niep(&["build", s(&p), "--gamma", "0.5", "--sign", "minus"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(matrix(&stdout_json(&out)["matrix"]).len(), 4);

    let p = write(
        &dir,
        "abs.json",
        &json!({
            "kind": "abscirc",
            "s": [3, 2, 3],
            "magnitude": [1, 2, 3],
            "signs": [[1, -1, 1], [1, 1, 1], [-1, -1, 1]]
        }),
    );
    let out = niep(&["build", s(&p), "--sign", "minus"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(matrix(&stdout_json(&out)["matrix"]).len(), 6);
}

#[test]
fn build_majorization_failure_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "b.json",
        &json!({"kind": "circ-skew", "s": [1, 1], "c": [2, 0]}),
    );
    let out = niep(&["build", s(&p)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("majorization"));
}

#[test]
fn check_seven_pair_reports_witness_rows() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "circ_part": [15, [2, 5], 1, [2, -5]],
        "skew_part": skew_spectrum(&[4.0, -2.0, 1.0]),
    });
    let p = write(&dir, "pair.json", &doc);
    let out = niep(&["check", s(&p), "--gamma", "1", "--mode", "constructive"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = stdout_json(&out);
    assert_eq!(rep["satisfied"], json!(true));
    let s_row: Vec<f64> = serde_json::from_value(rep["witness"]["s_row"].clone()).unwrap();
    let c_row: Vec<f64> = serde_json::from_value(rep["witness"]["c_row"].clone()).unwrap();
    for (got, want) in s_row.iter().zip([5.0, 6.0, 3.0, 1.0]) {
        assert!((got - want).abs() < 1e-9, "{s_row:?}");
    }
    for (got, want) in c_row.iter().zip([4.0, -2.0, 1.0]) {
        assert!((got - want).abs() < 1e-9, "{c_row:?}");
    }
    assert_eq!(matrix(&rep["matrix"]).len(), 7);
}

#[test]
fn check_eight_pair_and_formula_mode() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "circ_part": [8, [2, 2], -4, [2, -2]],
        "skew_part": skew_spectrum(&[-1.0, 1.0, 0.0, 1.0]),
    });
    let p = write(&dir, "pair.json", &doc);
    let out = niep(&["check", s(&p)]);
    assert_eq!(code(&out), 0);
    assert!(max_diff(&matrix(&stdout_json(&out)["matrix"]), &eight()) <= 1e-9);

    let out = niep(&["check", s(&p), "--mode", "formula"]);
    assert_eq!(code(&out), 0);
    let rep = stdout_json(&out);
    assert_eq!(rep["mode"], json!("formula"));
    assert_eq!(rep["witness"], Value::Null);
}

#[test]
fn check_unsatisfied_exits_2_with_report() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "circ_part": [1, [0, 5], [0, -5]],
        "skew_part": [[0, 5], [0, -5]],
    });
    let p = write(&dir, "pair.json", &doc);
    let out = niep(&["check", s(&p)]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["satisfied"], json!(false));
}

#[test]
fn augment_tail_zero() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "skew_part": skew_spectrum(&[4.0, -2.0, 1.0]),
        "tail": [0, 0, 0],
        "rho": 16,
    });
    let p = write(&dir, "aug.json", &doc);
    let out = niep(&["augment", s(&p)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = stdout_json(&out);
    assert!((rep["chi"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    for row in matrix(&rep["r"]) {
        for x in row {
            assert!((x - 4.0).abs() < 1e-12);
        }
    }
    assert_eq!(matrix(&rep["matrix"]).len(), 7);

    let doc = json!({
        "skew_part": skew_spectrum(&[4.0, -2.0, 1.0]),
        "tail": [0, 0, 0],
        "rho": 15,
    });
    let p = write(&dir, "aug15.json", &doc);
    assert_eq!(code(&niep(&["augment", s(&p)])), 2);
}

#[test]
fn verify_match_and_mismatch() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "v.json",
        &json!({"matrix": [[0, 1], [1, 0]], "spectrum": [1, -1]}),
    );
    let out = niep(&["verify", s(&p)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["matched"], json!(true));

    let p = write(
        &dir,
        "w.json",
        &json!({"matrix": [[0, 1], [1, 0]], "spectrum": [1, -0.9]}),
    );
    let out = niep(&["verify", s(&p)]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["matched"], json!(false));
    assert_eq!(code(&niep(&["verify", s(&p), "--tol", "0.2"])), 0);
}

fn sweep_csv(grid: &str) -> (i32, String) {
    let out = niep(&["region-sweep", "--grid", grid]);
    (code(&out), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn sweep_small_grid_all_in_region() {
    let (c, text) = sweep_csv("r=0:1:2,a=0:0:2,b=0:0:2");
    assert_eq!(c, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,a,b,in_region,verified");
    assert_eq!(lines.len(), 9);
    for line in &lines[1..] {
        assert!(line.ends_with(",1,1"), "{line}");
    }
}

#[test]
fn sweep_outside_region() {
    let (c, text) = sweep_csv("r=0:0:1,a=0.9:0.9:1,b=-1:1:5");
    assert_eq!(c, 0);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    for line in rows {
        assert!(line.ends_with(",0,0"), "{line}");
    }
}

#[test]
fn sweep_is_byte_stable_and_writes_file() {
    let grid = "r=0:1:5,a=-1:1:7,b=-1:1:7";
    let (c1, a) = sweep_csv(grid);
    let (c2, b) = sweep_csv(grid);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = niep(&["region-sweep", "--grid", grid, "--out", s(&path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
}

#[test]
fn default_sweep_verifies_every_in_region_point() {
    let (c, text) = sweep_csv("");
    assert_eq!(c, 0);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 21 * 21 * 21);
    assert!(rows.iter().all(|r| r[3] == r[4]));
    assert!(rows.iter().any(|r| r[3] == "1"));
}

#[test]
fn input_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[1, 2,").unwrap();
    let missing = dir.path().join("missing.json");
    let three = write(&dir, "three.json", &json!([1, 2, 3]));
    let pair = write(&dir, "pair.json", &json!({"circ_part": [1], "skew_part": [1]}));
    let build = write(&dir, "b.json", &json!({"kind": "circ-skew", "s": [1, 1], "c": [0, 0]}));
    let cases: Vec<Vec<&str>> = vec![
        vec!["realize4", s(&bad)],
        vec!["realize4", s(&missing)],
        vec!["realize4", s(&three)],
        vec!["check", s(&pair), "--gamma", "1.5"],
        vec!["build", s(&build), "--split", "[[1,0]]"],
        vec!["build", s(&build), "--split", "nope"],
        vec!["build", s(&build), "--sign", "sideways"],
        vec!["region-sweep", "--grid", "r=0:1:0"],
        vec!["region-sweep", "--grid", "q=0:1:2"],
        vec!["verify", s(&three)],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        let out = niep(&args);
        assert_eq!(code(&out), 3, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&niep(&["--help"])), 0);
    assert_eq!(code(&niep(&["--version"])), 0);
    assert_eq!(code(&niep(&["build", "--help"])), 0);
}
