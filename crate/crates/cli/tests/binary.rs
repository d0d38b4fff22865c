use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn vdistill() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vdistill"));
    c.env_remove("VDISTILL_OUT_DIR");
    c
}

fn write_config(dir: &Path, value: serde_json::Value) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

#[test]
fn flags_override_the_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        serde_json::json!({"experiment": "depol-sweep", "fixture": fixture("h2_2q_2.json"), "seed": 1, "output": "from_file.csv"}),
    );
    let out = tmp.path().join("flagged.csv");
    let status = vdistill()
        .args([
            "run",
            cfg.to_str().unwrap(),
            "--seed",
            "9",
            "--shots",
            "500",
            "--lambda-grid",
            "0.01,0.03",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(!tmp.path().join("from_file.csv").exists());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(
        text.contains("# seed: 9\n")
            && text.contains("# shots: 500\n")
            && text.contains("# lambda: 0.01 0.03\n")
    );
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 3);
    assert!(body[1].starts_with("0.01,") && body[2].starts_with("0.03,"));
}

#[test]
fn output_directory_comes_from_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        serde_json::json!({"experiment": "vqe", "fixture": fixture("h2_2q_2.json")}),
    );
    let out_dir = tmp.path().join("results");
    let output = vdistill()
        .env("VDISTILL_OUT_DIR", &out_dir)
        .arg("run")
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(output.status.success());
    let written = out_dir.join("vqe.csv");
    assert!(written.exists());
    assert_eq!(
        String::from_utf8(output.stdout).unwrap().trim(),
        written.display().to_string()
    );
}

#[test]
fn exit_codes_separate_config_and_estimation_failures() {
    let tmp = tempfile::tempdir().unwrap();
    let code = |value: serde_json::Value, extra: &[&str]| {
        let cfg = write_config(tmp.path(), value);
        vdistill()
            .arg("run")
            .arg(&cfg)
            .args(extra)
            .current_dir(tmp.path())
            .output()
            .unwrap()
            .status
            .code()
    };
    let sweep = serde_json::json!({"experiment": "depol-sweep", "fixture": fixture("h2_2q_2.json"), "output": "s.csv"});
    assert_eq!(code(sweep.clone(), &[]), Some(0));
    assert_eq!(code(sweep.clone(), &["--shots", "1"]), Some(3));
    assert_eq!(code(sweep, &["--shots", "0"]), Some(2));
    assert_eq!(
        code(
            serde_json::json!({"experiment": "depol-sweep", "fixture": "nope.json"}),
            &[]
        ),
        Some(2)
    );
    assert_eq!(
        code(
            serde_json::json!({"experiment": "vqe", "fixture": fixture("h2_2q_2.json"), "lamda": 0.1}),
            &[]
        ),
        Some(2)
    );
    let missing = vdistill()
        .args(["run", "/nonexistent/config.json"])
        .output()
        .unwrap()
        .status
        .code();
    assert_eq!(missing, Some(2));
}

#[test]
fn check_fixture_reports_ground_energies() {
    let output = vdistill()
        .arg("check-fixture")
        .arg(fixture("h3_3q_1.json"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(
        text.starts_with("h3_3q_1.json: 3 qubits, ground energy -1.568"),
        "{text}"
    );
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{}").unwrap();
    assert_eq!(
        vdistill()
            .arg("check-fixture")
            .arg(&bad)
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
}
