//! End-to-end checks of the binary: exit codes, report artifacts, and
//! byte-level determinism under a fixed seed.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-disperse"))
}

fn workspace_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap()
}

#[test]
fn constants_subcommand_prints_known_values() {
    let out = bin().args(["constants", "gamma_big", "2", "3", "0"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
    let out = bin().args(["constants", "c_d_gamma", "3", "0"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "16");
    let out = bin().args(["constants", "small_coupling_threshold", "1", "3"]).output().unwrap();
    let v: f64 = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    assert!((v - 1.0 / 17.0).abs() < 1e-15);
    // Inadmissible parameters surface as errors with a nonzero exit code.
    let out = bin().args(["constants", "c_d_gamma", "3", "0.5"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn bs_scan_demo_detects_one_bound_state() {
    let tmp = tempdir("bs-scan");
    let config = workspace_root().join("demo/rank_one_d3.json");
    let out = bin()
        .args(["bs-scan", "--config", config.to_str().unwrap(), "--out", tmp.to_str().unwrap()])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("1 detection(s)"), "{stdout}");
    assert!(stdout.contains("lambda = -5.309703"), "{stdout}");
    let report = fs::read_to_string(tmp.join("report.json")).unwrap();
    assert!(report.contains("cli.bs-detection"));
}

#[test]
fn quick_suite_reports_are_byte_identical() {
    let run = |dir: &Path| {
        let out = bin()
            .args(["suite", "--quick", "--seed", "7", "--jobs", "2", "--out", dir.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        fs::read(dir.join("report.json")).unwrap()
    };
    let a_dir = tempdir("suite-a");
    let b_dir = tempdir("suite-b");
    let a = run(&a_dir);
    let b = run(&b_dir);
    assert_eq!(a, b, "suite reports differ between runs");
    assert!(fs::metadata(a_dir.join("summary.csv")).unwrap().len() > 0);
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("lattice-disperse-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}
