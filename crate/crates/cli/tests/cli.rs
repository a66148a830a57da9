use std::path::Path;
use std::process::{Command, Output};

fn hlspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        hlspec(&["simplex", "--weights", "1,2,2,3"]).status.code(),
        Some(0)
    );
    assert_eq!(
        hlspec(&["simplex", "--weights", "2,2,6"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hlspec(&["simplex", "--weights", "1,a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hlspec(&["payne", "--s", "1", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(hlspec(&["enumerate", "--dim", "9"]).status.code(), Some(2));
    assert_eq!(hlspec(&["enumerate"]).status.code(), Some(2));

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "vertices": [[1, 0], [0"#,
    );
    assert_eq!(hlspec(&["analyze", "--input", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        hlspec(&["analyze", "--input", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let off_center = write(
        dir.path(),
        "off.json",
        r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [1, 1]]}"#,
    );
    let out = hlspec(&["analyze", "--input", &off_center]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("origin"));
}

#[test]
fn square_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "square.json",
        r#"{"vertices": [[1, 1], [1, -1], [-1, -1], [-1, 1]], "dim": 2}"#,
    );
    let out_path = dir.path().join("report.json");
    let out = hlspec(&[
        "analyze",
        "--input",
        &input,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("delta: (1,6,1)"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["reflexive"], true);
    assert_eq!(report["delta_vector"], serde_json::json!(["1", "6", "1"]));
    assert_eq!(report["hl_verdicts"][0]["method"], "box-criterion");
    assert_eq!(report["hl"], true);
    assert_eq!(report["kkp"], "n/a");
    assert_eq!(report["weights"], serde_json::Value::Null);
    assert_eq!(
        report["spectrum"],
        serde_json::json!([["0", "1", 1], ["1", "1", 6], ["2", "1", 1]])
    );
}

#[test]
fn classification_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("dim3.csv");
    let out = hlspec(&[
        "enumerate",
        "--dim",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(
        lines[0],
        "weights;mu;reflexive;hl;kkp;unimodal;eq5;necessary_condition"
    );
    assert_eq!(lines.len(), 15);
    assert!(table.ends_with('\n'));
    let hl: Vec<&str> = lines[1..]
        .iter()
        .filter(|l| l.split(';').nth(3) == Some("true"))
        .map(|l| l.split(';').next().unwrap())
        .collect();
    assert_eq!(hl, ["(1,1,1,1)", "(1,1,2,2)"]);
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let serial = hlspec(&["enumerate", "--dim", "4", "--out", a.to_str().unwrap()]);
    let parallel = hlspec(&[
        "enumerate",
        "--dim",
        "4",
        "--parallel",
        "true",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    for r in [&r1, &r2] {
        assert!(hlspec(&[
            "payne",
            "--s",
            "2",
            "--k",
            "3",
            "--out",
            r.to_str().unwrap()
        ])
        .status
        .success());
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
}

#[test]
fn simplex_witness_and_sectors() {
    let out = hlspec(&["simplex", "--weights", "1,1,3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("hl: false"));
    assert!(text.contains("fails at i=2 f=1/3 d=1 age=4/3 required=1/2"));
    assert!(text.contains("sectors:"));
}
