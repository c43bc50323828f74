use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use koenigs::quantize::enumerate_spectrum;
use koenigs::Spectrum;
use koenigs_cli::RunConfig;

const FLAT_KI: &str = r#"space = "K_I"
[metric]
alpha = 0.0
beta = 0.0
gamma = 0.0
delta = 1.0
[potential]
omega = 1.0
kx = 0.5
ky = 0.5
"#;

const CURVED_KI: &str = r#"space = "K_I"
[metric]
alpha = 0.1
beta = 0.02
gamma = 0.03
delta = 1.0
[potential]
omega = 1.0
kx = 0.5
ky = 0.7
"#;

const DARBOUX_I: &str = r#"space = "K_II"
[metric]
alpha = 0.0
beta = 0.0
gamma = 1.0
delta = 0.0
[potential]
omega = 1.0
kx = 0.5
ky_lin = 0.0
"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn koenigs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koenigs")).args(args).output().unwrap()
}

#[test]
fn flat_spectrum_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "flat.toml", FLAT_KI);
    let out = koenigs(&["spectrum", "--config", cfg.to_str().unwrap(), "--qn-bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "space,n1,n2,N,E,residual,bracket_lo,bracket_hi,method");
    let energies: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert_eq!(energies, vec![3.0, 5.0, 5.0, 7.0]);
    assert!(!text.contains('\r'));
}

#[test]
fn verify_reports_darboux_i() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "d1.toml", DARBOUX_I);
    let out = koenigs(&["verify", "--config", cfg.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("classification D_I"), "{text}");
    // δ = 0 is still a validation failure
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_flags_flat_prose() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "flat.toml", FLAT_KI);
    let out = koenigs(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("WARNING K_I flat prose") && text.contains("relabeling"));
    assert!(text.ends_with("RESULT PASS\n"));
}

#[test]
fn missing_field_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", &FLAT_KI.replace("delta = 1.0\n", ""));
    let out = koenigs(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("delta"));
    let out = koenigs(&["spectrum", "--config", "/nonexistent/x.toml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = koenigs(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = write(dir.path(), "curved.toml", CURVED_KI);
    let json = dir.path().join("s.json");
    let out = koenigs(&[
        "spectrum",
        "--config",
        cfg_path.to_str().unwrap(),
        "--qn-bound",
        "3",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: Spectrum = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let cfg = RunConfig::from_toml(CURVED_KI).unwrap();
    let direct = enumerate_spectrum(&cfg.spec, 3, &cfg.solver).unwrap();
    assert!(!direct.levels.is_empty());
    assert_eq!(parsed, direct);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "curved.toml", CURVED_KI);
    let c = cfg.to_str().unwrap();
    let runs: Vec<Vec<Vec<u8>>> = (0..3)
        .map(|_| {
            vec![
                koenigs(&["spectrum", "--config", c, "--qn-bound", "3"]).stdout,
                koenigs(&["verify", "--config", c]).stdout,
                koenigs(&["wavefunction", "--config", c, "--level", "1", "--grid", "16x8"]).stdout,
                koenigs(&["green-scan", "--config", c, "--emin", "1.0", "--emax", "6.0", "--points", "41"]).stdout,
            ]
        })
        .collect();
    assert!(runs.iter().all(|r| r == &runs[0]));
    assert!(runs[0].iter().all(|o| !o.is_empty()));
}

#[test]
fn wavefunction_and_green_scan_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "flat.toml", FLAT_KI);
    let c = cfg.to_str().unwrap();
    let wf = dir.path().join("wf.csv");
    let out =
        koenigs(&["wavefunction", "--config", c, "--level", "0", "--grid", "32x16", "--out", wf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&wf).unwrap();
    assert_eq!(text.lines().count(), 1 + 32 * 16);
    assert!(text.starts_with("coord1,coord2,psi,f_weight\n"));

    let gs = dir.path().join("g.csv");
    let out = koenigs(&[
        "green-scan",
        "--config",
        c,
        "--emin",
        "2.5",
        "--emax",
        "3.5",
        "--points",
        "11",
        "--out",
        gs.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("poles: 1 found, 0 unmatched, 0 levels missed"), "{summary}");
    let text = std::fs::read_to_string(&gs).unwrap();
    let poles: Vec<&str> = text.lines().skip(1).filter(|l| l.ends_with(",1")).collect();
    assert_eq!(poles.len(), 1);
    assert!(poles[0].starts_with("3.0000000000000000e0,"));

    let out = koenigs(&["wavefunction", "--config", c, "--level", "999"]);
    assert_eq!(out.status.code(), Some(2));
}
