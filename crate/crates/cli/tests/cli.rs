use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn raman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raman")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const FIGURE_ONE: &str = "I_L = 10\nI_S = 9\nI_V = 0.01\nI_A = 1\ndw1 = 2\ndw2 = 10\ngt = 0.1\n";

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

fn witness_value(csv: &str, name: &str) -> String {
    csv.lines().find(|l| l.starts_with(&format!("{name},"))).unwrap().split(',').nth(1).unwrap().to_string()
}

#[test]
fn witness_and_one_point_scan_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p.txt", FIGURE_ONE);
    let w = raman(&["witness", "--config", &cfg]);
    assert_eq!(w.status.code(), Some(0));
    let w = stdout(&w);
    assert!(w.starts_with("witness,value,nonclassical\n"));

    let s = raman(&["scan", "--config", &cfg, "--sweep", "dw1=2:3:2", "--quantity", "lambda_V,K_plus_SV,C_shot_LA"]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
    let s = stdout(&s);
    for q in ["lambda_V", "K_plus_SV", "C_shot_LA"] {
        assert_eq!(column(&s, q)[0], witness_value(&w, q), "{q}");
    }
}

#[test]
fn zero_time_has_no_correlations() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p.txt", &FIGURE_ONE.replace("gt = 0.1", "gt = 0"));
    let out = stdout(&raman(&["witness", "--config", &cfg]));
    for line in out.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let v: f64 = f[1].parse().unwrap();
        if f[0].starts_with("K_") || f[0].starts_with("C_shot") {
            assert_eq!(v, 0.0, "{line}");
        } else if f[0].starts_with("lambda") {
            assert_eq!(v, 1.0, "{line}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p.txt", FIGURE_ONE);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = raman(&[
            "scan",
            "--config",
            &cfg,
            "--sweep",
            "dw1=-50:50:41,gt=0.001:0.1:7",
            "--quantity",
            "lambda_V,lambda_SA,sth_SV",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let (fa, fb) = (dir.path().join("fa"), dir.path().join("fb"));
    for out in [&fa, &fb] {
        assert_eq!(raman(&["figure", "--preset", "3d", "--out", out.to_str().unwrap()]).status.code(), Some(0));
    }
    for name in ["fig3d_plus.csv", "fig3d_minus.csv"] {
        assert_eq!(fs::read(fa.join(name)).unwrap(), fs::read(fb.join(name)).unwrap());
    }
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write_config(dir.path(), "bad.txt", "gt = 0.1\nfrobnicate = 3\n");
    let o = raman(&["witness", "--config", &bad_key]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let no_coupling = write_config(dir.path(), "g0.txt", "g = 0\nchi = 0\n");
    assert_eq!(raman(&["witness", "--config", &no_coupling]).status.code(), Some(2));

    let cfg = write_config(dir.path(), "p.txt", FIGURE_ONE);
    assert_eq!(raman(&["scan", "--config", &cfg, "--sweep", "dw1=1:0:3", "--quantity", "lambda_V"]).status.code(), Some(2));
    assert_eq!(raman(&["scan", "--config", &cfg, "--sweep", "dw1=0:1:3", "--quantity", "nope"]).status.code(), Some(2));
    assert_eq!(raman(&["dist", "--config", &cfg, "--quantity", "nope"]).status.code(), Some(2));
    assert_eq!(raman(&["figure", "--preset", "42"]).status.code(), Some(2));
    assert_eq!(raman(&["witness", "--config", "/nonexistent/params.txt"]).status.code(), Some(2));
    // a command-line syntax error
    assert_eq!(raman(&["scan", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn oversized_basis_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "big.txt", "I_L = 0.1\ncutoff_L = 40\ncutoff_S = 40\ncutoff_V = 40\ncutoff_A = 40\n");
    let o = raman(&["oracle-check", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).to_lowercase().contains("dimension"));
}

#[test]
fn truncation_leakage_is_a_contract_violation() {
    let dir = tempfile::tempdir().unwrap();
    // strong pump in a two-photon basis
    let cfg = write_config(
        dir.path(),
        "leaky.txt",
        "I_L = 4\nI_A = 1\ndw1 = 3\ndw2 = 5\ncutoff_L = 2\ncutoff_S = 2\ncutoff_V = 2\ncutoff_A = 2\n",
    );
    let o = raman(&["oracle-check", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn oracle_preset_report() {
    let o = raman(&["oracle-check", "--preset", "coherent"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["regime"], "coherent");
    assert_eq!(v["quantities"].as_array().unwrap().len(), 24);
}

#[test]
fn s_flag_overrides_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = "I_L = 10\nI_A = 1\nn_mean = 0\ns = 0.2\nw_points = 3\n";
    let cfg = write_config(dir.path(), "p.txt", text);
    let base = stdout(&raman(&["dist", "--config", &cfg, "--quantity", "quasi_SV"]));
    let with_flag = stdout(&raman(&["dist", "--config", &cfg, "--quantity", "quasi_SV", "--s", "0.8"]));
    let edited = write_config(dir.path(), "q.txt", &text.replace("s = 0.2", "s = 0.8"));
    let from_file = stdout(&raman(&["dist", "--config", &edited, "--quantity", "quasi_SV"]));
    assert_eq!(with_flag, from_file);
    assert_ne!(with_flag, base);
}
