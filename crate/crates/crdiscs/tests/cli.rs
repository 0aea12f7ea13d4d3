//! Black-box tests of the `crdiscs` binary: output schemas, error paths and
//! exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_crdiscs")
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(bin())
        .args([
            cmd,
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .args(extra)
        .output()
        .unwrap()
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_shipped_config() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run("classify", &configs().join("classify.toml"), tmp.path(), &["--svg"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("classify.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta_lo,theta_hi,label"));
    let rays: Vec<&str> = csv.lines().filter(|l| l.ends_with(",ray")).collect();
    assert_eq!(rays.len(), 4);
    let sector_labels: Vec<&str> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.ends_with(",ray"))
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(
        sector_labels,
        vec!["pseudoconvex", "pseudoconcave", "pseudoconvex", "pseudoconcave"]
    );
    assert!(tmp.path().join("classify.svg").exists());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("result: pass"));
    // wall-clock only on stderr, keeping stdout deterministic
    assert!(!stdout.contains("wall-clock"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall-clock"));
}

#[test]
fn classify_empty_polynomial() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "empty.toml", "[polynomial]\ndegree = 4\nterms = []\n");
    let out = run("classify", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty polynomial"));
}

#[test]
fn unknown_config_key_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "unknown.toml",
        "[polynomial]\ndegree = 2\nterms = [[1, 1, 1.0, 0.0]]\nbogus = 3\n",
    );
    let out = run("classify", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn attach_shipped_config() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run("attach", &configs().join("attach.toml"), tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("attach.csv")).unwrap();
    assert!(csv.starts_with("theta,re_z,im_z,u,v\n"));
    assert_eq!(csv.lines().count(), 1025); // header + one row per sample
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("residual:"));
    assert!(stdout.contains("du_dtheta:"));
}

#[test]
fn attach_trivial_generator() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "trivial.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[attach]\nz_coeffs = [[0.0, 0.0]]\nc = 2.0\n",
    );
    let out = run("attach", &cfg, tmp.path(), &["--grid", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(tmp.path().join("attach.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let u: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert_eq!(u, 2.0);
    }
}

#[test]
fn attach_noncontraction_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "blowup.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[attach]\nz_coeffs = [[0.5, 0.0]]\nu_coupling = 1000.0\n",
    );
    let out = run("attach", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonContraction"));
}

#[test]
fn attach_bishop_method_on_rigid_surface() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "bishop.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[attach]\nz_coeffs = [[0.1, 0.0]]\nmethod = \"bishop\"\n",
    );
    let out = run("attach", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("iterations: 2"));
}

#[test]
fn family_shipped_config() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run("family", &configs().join("family.toml"), tmp.path(), &["--svg"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("family.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,abs_c_n,slope_n,bound,diff_n,pass"));
    assert_eq!(csv.lines().count(), 9);
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",true"), "row not passing: {line}");
    }
    assert!(tmp.path().join("family.svg").exists());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("selected n0: 5"));
}

#[test]
fn family_sector_overflow_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    // beta * pi exceeds the sector width
    let cfg = write_cfg(
        tmp.path(),
        "overflow.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[family]\ntheta_lo = 0.7853981633974483\ntheta_hi = 2.356194490192345\nbeta = 0.6\n",
    );
    let out = run("family", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SectorOverflow"));
}

#[test]
fn family_degenerate_perturbation() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "degenerate.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[family]\ntheta_lo = 0.7853981633974483\ntheta_hi = 2.356194490192345\neps = 0.0\nn_max = 4\n",
    );
    let out = run("family", &cfg, tmp.path(), &["--grid", "1024"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("degenerate perturbation"));
    let csv = std::fs::read_to_string(tmp.path().join("family.csv")).unwrap();
    // slope 0, bound and pass columns empty
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2], "0");
        assert_eq!(fields[3], "");
        assert_eq!(fields[5], "");
    }
}

#[test]
fn family_wrong_sector_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    // the sector around theta = 0 is pseudoconcave for this surface
    let cfg = write_cfg(
        tmp.path(),
        "concave.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n\n[family]\ntheta_lo = -0.5\ntheta_hi = 0.5\n",
    );
    let out = run("family", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_grid_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(
        "classify",
        &configs().join("classify.toml"),
        tmp.path(),
        &["--grid", "1000"],
    );
    // classify ignores the grid, but attach validates it
    let out2 = run(
        "attach",
        &configs().join("attach.toml"),
        tmp.path(),
        &["--grid", "1000"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out2.status.code(), Some(2));
}

#[test]
fn missing_command_block() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "noblock.toml",
        "[polynomial]\ndegree = 4\nterms = [[3, 1, 0.5, 0.0]]\n",
    );
    let out = run("attach", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing [attach] block"));
    let out = run("family", &cfg, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
}
