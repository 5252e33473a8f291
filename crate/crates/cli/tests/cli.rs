use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_g2cb"))
}

fn write_curve(dir: &Path, name: &str, field: &str, f: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let coeffs: Vec<String> = f.iter().map(|c| format!("\"{c}\"")).collect();
    std::fs::write(&path, format!("{{\"field\": {field}, \"f\": [{}]}}", coeffs.join(", "))).unwrap();
    path
}

fn acceptance_curve(dir: &Path) -> PathBuf {
    write_curve(dir, "x6m1.json", r#"{"prime": "10009"}"#, &["-1", "0", "0", "0", "0", "0", "1"])
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_passes_and_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let c = curve.to_str().unwrap();
    let a = run(&["verify", "--curve", c, "--seed", "42", "--workers", "1"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["verify", "--curve", c, "--seed", "42", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let report = json_of(&a);
    assert_eq!(report["overall"], "pass");
    assert!(report.get("runtime").is_none());
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let out = dir.path().join("report.json");
    let o = run(&["verify", "--curve", curve.to_str().unwrap(), "--checks", "cone,steiner", "--out", out.to_str().unwrap(), "--timings"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"cone_fiber") && names.contains(&"normal_bundle"));
    assert!(!names.contains(&"kummer_quartic"));
    assert!(report["runtime"]["timings_ms"].is_object());
}

#[test]
fn singular_curve_is_an_input_error_without_report() {
    let dir = tempfile::tempdir().unwrap();
    // (x^3 - 1)^2 is not squarefree
    let curve = write_curve(dir.path(), "bad.json", r#"{"prime": "10009"}"#, &["1", "0", "0", "-2", "0", "0", "1"]);
    let out = dir.path().join("report.json");
    let o = run(&["verify", "--curve", curve.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_and_bad_field_are_input_errors() {
    assert_eq!(run(&["verify", "--curve", "/nonexistent/curve.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let o = run(&["verify", "--curve", curve.to_str().unwrap(), "--field", "10000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--curve", curve.to_str().unwrap(), "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_hit_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let cache = dir.path().join("cache");
    let args = ["verify", "--curve", curve.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap(), "--checks", "kummer"];
    let first = json_of(&run(&args));
    assert_eq!(first["runtime"]["cache"]["cached"], false);
    let second = json_of(&run(&args));
    assert_eq!(second["runtime"]["cache"]["cached"], true);
    assert_eq!(first["checks"], second["checks"]);

    let entry = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&entry).unwrap().replacen("\"1\"", "\"2\"", 1);
    std::fs::write(&entry, text).unwrap();
    let third = json_of(&run(&args));
    assert_eq!(third["runtime"]["cache"]["cached"], false);
    assert_eq!(third["overall"], "pass");
    assert_eq!(json_of(&run(&args))["runtime"]["cache"]["cached"], true);
}

#[test]
fn quadrics_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let o = run(&["quadrics", "--curve", curve.to_str().unwrap(), "--field", "rationals"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().take(4).collect();
    assert_eq!(lines, ["z0*z2 - z1^2", "z0*z3 - z1*z2", "z1*z3 - z2^2", "z0^2 - z3^2 + z4^2"]);
    let json: Value = serde_json::from_str(&text.lines().skip(4).collect::<Vec<_>>().join("\n")).unwrap();
    assert_eq!(json["dim"], 4);
}

#[test]
fn fiber_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let c = curve.to_str().unwrap();
    let o = run(&["fiber", "--curve", c, "--point", "1,3,2,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["class"], "stable");
    assert_eq!(v["gram"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["fiber", "--curve", c, "--point", "0,0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["fiber", "--curve", c, "--point", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn kummer_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let curve = acceptance_curve(dir.path());
    let v = json_of(&run(&["kummer", "--curve", curve.to_str().unwrap()]));
    assert_eq!(v["quartic"].as_array().unwrap().len(), 35);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 16);
    assert_ne!(v["tangent_cone_alpha"], "0");
}

#[test]
fn steiner_subcommands() {
    let v = json_of(&run(&["cohomology", "--min", "-2", "--max", "1"]));
    let rows: Vec<[u64; 3]> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| [r["h0"].as_u64().unwrap(), r["h1"].as_u64().unwrap(), r["h2"].as_u64().unwrap()])
        .collect();
    assert_eq!(rows, [[0, 2, 0], [0, 0, 0], [4, 0, 0], [10, 0, 0]]);
    assert_eq!(run(&["cohomology", "--min", "3", "--max", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--min", "-50", "--max", "1"]).status.code(), Some(2));

    let b = json_of(&run(&["bundle-report"]));
    assert_eq!(b["chern"], "1 + 2H + 3H^2");
    assert_eq!(b["slope"], "1");
    assert_eq!(b["stable"], true);
    assert_eq!((b["hom"].as_u64(), b["ext1"].as_u64(), b["dimB"].as_u64()), (Some(1), Some(5), Some(16)));
    assert_eq!(b["normal_splitting"], serde_json::json!([5, 5]));
}
