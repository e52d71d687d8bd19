use std::fs;
use std::process::{Command, Output};

fn morphic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morphic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn generate_presets() {
    let out = morphic(&["generate", "--preset", "tml", "--length", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "01121220");
    assert_eq!(
        stdout(&morphic(&["generate", "--preset", "tml", "--length", "1"])).trim(),
        "0"
    );
    assert_eq!(
        stdout(&morphic(&[
            "generate", "--preset", "sigma3", "--length", "3"
        ]))
        .trim(),
        "abc"
    );
}

#[test]
fn generate_from_file_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.txt");
    fs::write(&path, "# Fibonacci\n0 -> 01\n1 -> 0\n").unwrap();
    let out = morphic(&[
        "generate",
        "--morphism",
        path.to_str().unwrap(),
        "--length",
        "8",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "01001010");

    let out = morphic(&[
        "generate", "--preset", "tml", "--seed", "1", "--length", "4",
    ]);
    assert_eq!(stdout(&out).trim(), "1220");

    let out = morphic(&[
        "generate",
        "--morphism",
        path.to_str().unwrap(),
        "--seed",
        "1",
        "--length",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not prolongable"), "{}", stderr(&out));
}

#[test]
fn bad_morphism_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "0 -> 01\n\n1 -> 13\n").unwrap();
    let out = morphic(&[
        "generate",
        "--morphism",
        path.to_str().unwrap(),
        "--length",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn complexity_tml_table() {
    let out = morphic(&[
        "complexity",
        "--preset",
        "tml",
        "--n-from",
        "1",
        "--n-to",
        "4",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(column(&csv, "rho_plus"), ["3", "5", "5", "7"]);
    assert_eq!(column(&csv, "rho")[1], "9");
    assert!(csv.contains("1,3,3,3,0,2,1"));
}

#[test]
fn complexity_sigma3_abelian() {
    let out = morphic(&[
        "complexity",
        "--preset",
        "sigma3",
        "--n-from",
        "3",
        "--n-to",
        "8",
    ]);
    assert_eq!(
        column(&stdout(&out), "rho_ab"),
        ["7", "6", "6", "7", "6", "6"]
    );
}

#[test]
fn complexity_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "--jobs".to_string(),
            "2".into(),
            "complexity".into(),
            "--preset".into(),
            "sigma3".into(),
            "--coding".into(),
            "a=0,b=1,c=3".into(),
            "--n-to".into(),
            "40".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    for p in [&a, &b] {
        let args = args(p);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert!(morphic(&refs).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn complexity_json_and_coding_file() {
    let dir = tempfile::tempdir().unwrap();
    let coding = dir.path().join("coding.txt");
    fs::write(&coding, "a = 0\nb = 1\nc = 3\n").unwrap();
    let out = morphic(&[
        "complexity",
        "--preset",
        "sigma3",
        "--coding",
        coding.to_str().unwrap(),
        "--n-from",
        "4",
        "--n-to",
        "4",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // m = 1: {2, 4, 5, 6, 7, 8} under (0,1,3).
    assert_eq!(v["rows"][0]["rho_plus"], 6);
    assert_eq!(v["rows"][0]["ds_min"], 2);
    assert_eq!(v["rows"][0]["ds_max"], 8);
}

#[test]
fn verify_passes_with_zero_exit() {
    let out = morphic(&["verify", "dc-counts", "--l-max", "24"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["check"], "dc-counts");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["tuples_checked"], 50);

    let out = morphic(&["verify", "theorem1", "--n-max", "256"]);
    assert!(out.status.success());
}

#[test]
fn verify_shift_procedures_reports_tuple_count() {
    let out = morphic(&["verify", "tech-lemma"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tuples_checked"], 102400);
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let out = morphic(&["verify", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"));
}

#[test]
fn window_cap_is_a_resource_error() {
    let out = morphic(&["--window-cap", "1000", "verify", "theorem1", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("resource limit"), "{}", stderr(&out));
}

#[test]
fn ivp_gaps_for_skewed_coding() {
    let out = morphic(&["ivp", "--coding", "0,1,3", "--n-from", "3", "--n-to", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gaps"]["4"], serde_json::json!([3]));
    assert_eq!(v["gaps"]["10"], serde_json::json!([11]));
    let out = morphic(&["ivp", "--coding", "0,1,2", "--n-to", "60"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["gaps"].as_object().unwrap().is_empty());
}

#[test]
fn witness_command() {
    let out = morphic(&["witness", "--n", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["whole"], "2122");
    assert_eq!(v["left"], "2");
    assert_eq!(v["right"], "122");
    assert_eq!(v["digit_sum"], 7);
    assert_eq!(v["mirror_digit_sum"], 1);
}

#[test]
fn kernel_command_closed_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kernel.json");
    let out = morphic(&[
        "kernel",
        "--e-max",
        "3",
        "--len",
        "32",
        "--source",
        "closed",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["distinct"].as_array().unwrap().len(), 4);
    assert_eq!(v["report"]["failures"].as_array().unwrap().len(), 0);
}
