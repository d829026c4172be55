use std::fs;
use std::path::Path;

use hallq::io::{run_command, JobConfig};

fn golden_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/export_a1")
}

#[test]
fn re_export_matches_golden_files() {
    let mut cfg = JobConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs/a1_export.toml")).unwrap();
    let out = tempfile::tempdir().unwrap();
    cfg.args.out = Some(out.path().to_str().unwrap().to_string());
    let report = run_command("export-tables", &cfg).unwrap();
    let files: Vec<String> = serde_json::from_value(report.result["files"].clone()).unwrap();
    assert_eq!(files, ["manifest.json", "a_table.json", "a_table.csv"]);
    for f in &files {
        let got = fs::read(out.path().join(f)).unwrap();
        let want = fs::read(golden_dir().join(f)).unwrap();
        assert!(got == want, "{f} differs from the golden copy");
    }
}

#[test]
fn golden_a1_table_holds_gaussian_binomials() {
    let csv = fs::read_to_string(golden_dir().join("a_table.csv")).unwrap();
    // g^{S^3}_{S,S^2} = q^2 + q + 1
    assert!(csv.lines().any(|l| l == "a,3*(1),(1),2*(1),1 1 1,7,13,31,57"));
}

#[test]
fn empty_window_writes_only_the_manifest() {
    let out = tempfile::tempdir().unwrap();
    let cfg = JobConfig {
        quiver: "A2".into(),
        args: hallq::io::CommandArgs { out: Some(out.path().to_str().unwrap().into()), ..Default::default() },
        ..Default::default()
    };
    run_command("export-tables", &cfg).unwrap();
    let names: Vec<_> = fs::read_dir(out.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names, ["manifest.json"]);
    let m: serde_json::Value = serde_json::from_slice(&fs::read(out.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["files"], serde_json::json!([]));
    assert_eq!(m["primes"], serde_json::json!([2, 3, 5, 7, 11]));
}
