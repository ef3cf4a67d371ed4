use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qchan(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qchan"));
    cmd.args(args).env_remove("QCHAN_SEED").env_remove("QCHAN_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const QUTRIT: &str = r#"{
    "kind": "capacity_verify",
    "seed": 11,
    "starts": 12,
    "specs": [{"family": "qutrit", "theta": 0.0, "weights": [0.45, 0.1, 0.1, 0.05]}],
    "output": "rows.csv",
    "certificates": "certs.json"
}"#;

#[test]
fn run_writes_rows_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", QUTRIT);
    let out = qchan(&["run", &cfg], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "family");
    assert!(header.contains(&"c_star_bits") && header.contains(&"verified"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "qutrit");
    let verified = header.iter().position(|h| *h == "verified").unwrap();
    assert_eq!(row[verified], "true");

    let certs: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("certs.json")).unwrap()).unwrap();
    assert_eq!(certs.as_array().unwrap().len(), 1);

    // verify accepts both the sidecar and the config that names it.
    for target in [dir.path().join("certs.json").to_str().unwrap(), cfg.as_str()] {
        let v = qchan(&["verify", target], &[]);
        assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
        assert!(String::from_utf8_lossy(&v.stdout).starts_with("OK"));
    }
}

#[test]
fn forged_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", QUTRIT);
    assert!(qchan(&["run", &cfg], &[]).status.success());
    let path = dir.path().join("certs.json");
    let mut certs: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let c = &mut certs[0]["candidate_capacity"];
    *c = Value::from(c.as_f64().unwrap() + 0.01);
    fs::write(&path, certs.to_string()).unwrap();
    let v = qchan(&["verify", path.to_str().unwrap()], &[]);
    assert_eq!(v.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&v.stdout).starts_with("FAIL"));
}

#[test]
fn seed_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"kind": "minent", "seed": 1, "starts": 4,
            "specs": [{"family": "depolarizing", "d": 3, "a": 0.5}]}"#,
    );
    let out = qchan(&["run", &cfg, "--out", "-"], &[("QCHAN_SEED", "99")]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let header: Vec<&str> = stdout.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split(',').collect();
    let seed = header.iter().position(|h| *h == "seed").unwrap();
    assert_eq!(row[seed], "99");
    // The flag beats the environment.
    let out = qchan(&["run", &cfg, "--out", "-", "--seed", "7"], &[("QCHAN_SEED", "99")]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().nth(1).unwrap().split(',').nth(seed), Some("7"));
}

#[test]
fn empty_grid_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"kind": "capacity_verify", "seed": 3}"#);
    let out = qchan(&["run", &cfg], &[]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn unconverged_rows_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"kind": "minent", "seed": 5, "starts": 3, "tolerances": {"max_iter": 0},
            "specs": [{"family": "qutrit", "weights": [0.4, 0.2, 0.1, 0.05]}]}"#,
    );
    let out = qchan(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL qutrit"));
}

#[test]
fn invalid_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"kind": "minent", "seed": 5, "specs": [{"family": "depolarizing", "d": 3, "a": 1.5}]}"#,
    );
    let out = qchan(&["run", &cfg], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(qchan(&["run", "/nonexistent/cfg.json"], &[]).status.code(), Some(2));
}

#[test]
fn presets_are_listed_and_printable() {
    let out = qchan(&["list-presets"], &[]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    for name in ["qutrit-6.2.1", "dd4-6.2.1", "dd4-additivity", "ppt-boundary"] {
        assert!(stdout.contains(name), "{name}");
    }
    let out = qchan(&["preset", "dd4-additivity", "--print-config", "--seed", "17"], &[]);
    let cfg: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cfg["seed"], 17);
    assert_eq!(cfg["kind"], "additivity");
    assert_eq!(qchan(&["preset", "no-such-preset"], &[]).status.code(), Some(2));
}

#[test]
fn ppt_preset_runs() {
    let out = qchan(&["preset", "ppt-boundary"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 64);
}
