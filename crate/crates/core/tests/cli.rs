use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn hallq(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hallq")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn roots_of_a1() {
    let (code, out) = hallq(&["roots", "--quiver", "A1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"]["count"], 1);
}

#[test]
fn verify_qg_on_a2_passes() {
    let q = core_dir().join("quivers/a2.toml");
    let (code, out) = hallq(&["verify-qg", "--quiver", q.to_str().unwrap(), "--q", "3"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert!(r["result"]["quantum_group"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn hallnum_c2_with_oracle_from_job_file() {
    let job = core_dir().join("jobs/a2_hallnum_c2.toml");
    let (code, out) = hallq(&["hallnum", "--config", job.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["result"]["value"], "6");
    assert_eq!(r["result"]["oracle"], "6");
    assert_eq!(r["q"], 5);
}

#[test]
fn output_is_deterministic() {
    let args = ["interpolate", "--quiver", "A2", "--side", "c2", "--ue1", "1,0", "--ue0", "1,1", "--format", "csv"];
    let (c1, a) = hallq(&args);
    let (c2, b) = hallq(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.starts_with("side,l,m,n,poly_coeffs,counts"));
}

#[test]
fn exit_codes() {
    let (code, out) = hallq(&["roots", "--quiver", "X7"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "config");

    let (code, _) = hallq(&["roots", "--quiver", "A2", "--primes", "2,4"]);
    assert_eq!(code, 2);

    let (code, out) = hallq(&[
        "hallnum", "--quiver", "A2", "--l", "2*(1,0)+2*(0,1)", "--m", "(1,0)+(0,1)", "--n", "(1,0)+(0,1)", "--oracle", "--cap", "4",
    ]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["kind"], "cap_exceeded");

    // q + 1 cannot be fitted by a constant at q = 2 and survive q = 3
    let (code, out) = hallq(&[
        "interpolate", "--quiver", "A2", "--side", "c2", "--l", "C[2*(0,1)]", "--m", "C[(0,1)]", "--n", "C[(0,1)]", "--primes", "2,3",
    ]);
    assert_eq!(code, 4);
    let e = json(&out);
    assert_eq!(e["error"]["kind"], "holdout_mismatch");
    assert_eq!(e["error"]["context"]["prime"], 3);
}

#[test]
fn dhproduct_of_k_and_its_inverse_is_the_unit() {
    let (code, out) = hallq(&["dhproduct", "--quiver", "A2", "--q", "3", "--factor", "K1", "--factor", "K1^-1"]);
    assert_eq!(code, 0);
    let terms = json(&out)["result"]["product"]["terms"].as_array().unwrap().clone();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["radical_class"], "0");
    assert_eq!(terms[0]["alpha"], serde_json::json!([0, 0]));
}

#[test]
fn decompose_from_job_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.toml");
    std::fs::write(&job, "quiver = \"A2\"\nq = 2\n[args.rep]\ndims = [2, 1]\nmaps = [[[1, 0]]]\n").unwrap();
    let (code, out) = hallq(&["decompose", "--config", job.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"]["class"], "(1,0)+(1,1)");
}
