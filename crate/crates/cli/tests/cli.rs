use std::path::Path;
use std::process::{Command, Output};

fn modkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modkit")).args(args).output().expect("modkit binary runs")
}

fn modkit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modkit")).args(args).env(key, value).output().expect("modkit binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn generate(spec: &str, dir: &Path) -> String {
    let path = dir.join(format!("{}.json", spec.replace([':', ',', '='], "_")));
    let path = path.to_str().unwrap().to_string();
    let o = modkit(&["generate", spec, &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["taft:d=2", "taft:d=3", "pointed:n=9,a=2,k0=1"] {
        let path = generate(spec, dir.path());
        let o = modkit(&["verify", &path]);
        assert_eq!(o.status.code(), Some(0), "{spec}: {}", stderr(&o));
        let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(report.as_array().unwrap().iter().all(|c| c["status"] != "fail"), "{spec}");
        assert!(stderr(&o).contains("classification:"), "{spec}");
    }
}

#[test]
fn bold_counterexample_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate("counterexample:sl2q16,part=bold", dir.path());
    let o = modkit(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}

#[test]
fn full_counterexample_stops_at_the_symmetric_center() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate("counterexample:sl2q16,part=full", dir.path());
    let o = modkit(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report[0]["check"], "symmetric_center");
    assert_eq!(report[0]["status"], "fail");
}

#[test]
fn generate_to_stdout_and_emit_z_modular() {
    let o = modkit(&["generate", "taft:d=4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "raw-full");
    assert_eq!(v["labels"].as_array().unwrap().len(), 12);

    let dir = tempfile::tempdir().unwrap();
    let path = generate("taft:d=4", dir.path());
    let z = dir.path().join("z.json");
    let o = modkit(&["verify", &path, "--emit-zmodular", z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = modkit(&["verify", z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&z).unwrap()).unwrap();
    assert_eq!(v["kind"], "normalized");
    assert_eq!(v["labels"].as_array().unwrap().len(), 6);
}

#[test]
fn fusion_queries() {
    let o = modkit(&["fusion", "pointed:n=5", "d2", "d4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "{d1}");

    let o = modkit(&["fusion", "taft:d=3", "(1,0)", "(2,0)", "--compare"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("agree"));

    let o = modkit(&["fusion", "taft:d=3", "(9,9)", "(1,0)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate("taft:d=3", dir.path());
    let o = modkit(&["reduce", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let rep = dir.path().join("report.json");
    let o = modkit(&["verify", &path, "--out", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = modkit(&["report", rep.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let a: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(a, b);
    let o = modkit(&["report", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["generate", "taft:d=0"][..],
        &["generate", "pointed:n=4"],
        &["verify", "x.json", "--bogus"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(modkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unreadable_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(modkit(&["verify", missing.to_str().unwrap()]).status.code(), Some(2));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(modkit(&["verify", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(modkit(&["report", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn precision_variable_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate("pointed:n=3", dir.path());
    let o = modkit_env(&["verify", &path], "MODKIT_PRECISION_BITS", "4");
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("MODKIT_PRECISION_BITS"), "{}", stderr(&o));
    let o = modkit_env(&["verify", &path], "MODKIT_PRECISION_BITS", "512");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
