//! Command-line interface behavior: deterministic reports, exit codes and
//! the documented file formats.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bcsgl"))
}

#[test]
fn tc_subcommand_solves_round_trip() {
    // lambda_0(T = 0.1, mu = 2, R = 1) from the 30-digit reference; the
    // solved temperature must come back as 0.1
    let out = bin()
        .args(["tc", "--mu", "2", "--lambda", "0.6811228870374097", "--radius", "1", "--l", "0"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    let tc = v["results"]["t_c"].as_f64().unwrap();
    assert!((tc - 0.1).abs() < 1e-9, "t_c = {tc}");
    assert_eq!(v["command"], "tc");
    assert!(v["version"].is_string());
    assert!(v["config"]["mu"].as_f64().unwrap() == 2.0);
}

#[test]
fn unknown_flag_exits_2() {
    let out = bin().args(["tc", "--frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--frobnicate") || err.to_lowercase().contains("usage"), "{err}");
}

#[test]
fn missing_required_flag_exits_2() {
    let out = bin().args(["tc", "--mu", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let run = || {
        bin()
            .args([
                "minimize", "--mu", "2", "--temp", "0.1", "--radius", "1", "--seed", "42",
                "--restarts", "12",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports differ between identical runs");
}

#[test]
fn sectors_and_sd_csv() {
    let dir = std::env::temp_dir().join("bcsgl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("sd.csv");
    let out = bin()
        .args([
            "sd-degeneracy",
            "--temps",
            "0.1,0.05",
            "--format",
            "csv",
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "temperature,mu_t,lambda,sqrt_mu_minus_z");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 4);
    assert!(!text.contains(';'), "CSV must use '.' decimal and ',' separators");
    let mu_t: f64 = first[1].parse().unwrap();
    assert!(mu_t > 1.0 && mu_t < 14.0);
}

#[test]
fn config_file_overrides_flags() {
    let dir = std::env::temp_dir().join("bcsgl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"lambda": 0.6811228870374097}"#).unwrap();
    let out = bin()
        .args([
            "tc", "--mu", "2", "--lambda", "0.2", "--radius", "1", "--l", "0", "--config",
            cfg.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let tc = v["results"]["t_c"].as_f64().unwrap();
    assert!((tc - 0.1).abs() < 1e-9, "config override ignored: t_c = {tc}");
}
