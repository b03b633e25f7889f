use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_satake-w0"));
    c.env_remove("SATAKE_W0_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_sign_and_dimensions() {
    let o = run(&["classify", "--form", "G", "--weight", "1,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim_V"], "7");
    assert_eq!(v["dim_VL"], 1);
    assert!(v["sign"] == 1 || v["sign"] == -1);
    assert_eq!(v["table_member"], true);

    let o = run(&["classify", "--form", "so(2,7)", "--weight", "1,0,0,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().contains("VacuousZero"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--form", "so(7,2)", "--weight", "1,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--form", "G", "--weight", "1"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--form", "G"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--form", "nope"]).status.code(), Some(2));

    let o = run(&["classify", "--form", "EVIII", "--weight", "0,0,0,0,0,0,0,2"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("27000"), "{err}");

    // listed in the table, yet the lift is not ±Id on a 3-dimensional V^L
    let o = run(&["verify", "--form", "so(2,5)", "--caps", "1,0,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"], serde_json::json!([[1, 0, 2]]));
    assert!(String::from_utf8(o.stderr).unwrap().contains("INCONSISTENT"));
}

#[test]
fn verify_is_deterministic_across_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let base = ["verify", "--form", "so(3,4)", "--max-coeff", "2", "--dim-cap", "5000", "--format", "json"];
    let a = run(&[&base[..], &["--jobs", "1", "--no-cache"]].concat());
    let b = run(&[&base[..], &["--jobs", "3", "--cache-dir", d]].concat());
    let c = bin().args(base).args(["--jobs", "2"]).env("SATAKE_W0_CACHE", d).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["records"].as_array().unwrap().len(), 27);

    let listed = run(&["cache", "list", "--cache-dir", d]);
    assert!(stdout(&listed).contains("B3/"));
    let out = bin().args(["cache", "clear"]).env("SATAKE_W0_CACHE", d).output().unwrap();
    assert!(stdout(&out).starts_with("removed "));
    assert!(stdout(&run(&["cache", "list", "--cache-dir", d])).contains("0 files"));
}

#[test]
fn alias_has_the_same_verdict_multiset() {
    let count = |form: &str| {
        let o = run(&["verify", "--form", form, "--max-coeff", "1", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["summary"]["verdicts"].clone()
    };
    assert_eq!(count("so*(8)"), count("so(2,6)"));
}

#[test]
fn forms_listing() {
    let o = run(&["forms", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let g = v.iter().find(|f| f["name"] == "G").unwrap();
    assert_eq!(g["restricted_type"], "G2");
    assert_eq!(g["real_rank"], 2);
    let f2 = v.iter().find(|f| f["name"] == "FII").unwrap();
    assert_eq!(f2["non_reduced"], true);
    assert_eq!(o.stdout, run(&["forms", "--format", "json"]).stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let o = run(&["verify", "--form", "G", "--max-coeff", "1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("schema_version,form,lambda"));
    assert_eq!(text.lines().count(), 5);
}
