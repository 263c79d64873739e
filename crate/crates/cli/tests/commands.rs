use std::process::Command;

use cli::dump::{ifunc, SeriesDump, Side};
use cli::{Config, Format};

fn lgcy(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lgcy")).args(args).env_remove(cli::CONFIG_ENV).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn lg_sector_listing() {
    let (code, out, _) = lgcy(&["sectors", "--side", "lg", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 204);
    let mu: std::collections::BTreeSet<&str> = records.iter().filter_map(|r| r["mu_inverse"].as_str()).collect();
    assert_eq!(mu.len(), 204);
}

#[test]
fn cy_sector_listing() {
    let (code, out, _) = lgcy(&["sectors", "--side", "cy"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["sectors"], 161);
    assert_eq!(v["records"].as_array().unwrap().len(), 204);
    let (_, csv, _) = lgcy(&["sectors", "--side", "cy", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 205);
    assert!(csv.starts_with("sector,dimension,age,h_power,cr_degree,mu"));
}

#[test]
fn fjrw_dump_contains_known_term() {
    let (code, out, _) = lgcy(&["ifunc", "--side", "fjrw", "--label", "J", "--order", "10"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let hit = v["records"].as_array().unwrap().iter().any(|r| r["t_exp"] == 5 && r["z_exp"] == 1 && r["basis"] == "J" && r["value"] == "1/375000");
    assert!(hit);
}

#[test]
fn gw_dump_contains_known_term() {
    let (code, out, _) = lgcy(&["ifunc", "--side", "gw", "--label", "e", "--order", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let hit = v["records"].as_array().unwrap().iter().any(|r| r["q_exp"] == "1" && r["h_power"] == 0 && r["value"] == "120");
    assert!(hit);
}

#[test]
fn continued_dump_has_class_metadata() {
    let d = ifunc(Side::Continued, "e", 10, 40).unwrap();
    let classes: Vec<u8> = d.metadata.classes.iter().map(|c| c.residue_class).collect();
    assert_eq!(classes, vec![1, 2, 3, 4]);
    assert!(d.metadata.classes.iter().all(|c| c.constant.len() == 4));
    assert_eq!(d.records.iter().filter(|r| r.residue_class == Some(1)).count(), 2);
    let c = d.metadata.classes[0].constant[0].parse().unwrap();
    assert!(c.log10_abs() > -5.0);
}

#[test]
fn json_dump_round_trips() {
    for (side, label) in [(Side::Fjrw, "1,1,1,3,4"), (Side::Gw, "0,0,1,1,3"), (Side::Continued, "0,0,0,2,3")] {
        let fresh = ifunc(side, label, 12, 50).unwrap();
        let text = serde_json::to_string(&fresh).unwrap();
        let back: SeriesDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fresh);
        for c in back.metadata.classes.iter().flat_map(|c| &c.constant) {
            let v = c.parse().unwrap();
            assert_eq!(cli::dump::ComplexValue::new(&v), *c);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let a = lgcy(&["ifunc", "--side", "continued", "--label", "0,0,2,2,1", "--precision", "40"]).1;
    let b = lgcy(&["ifunc", "--side", "continued", "--label", "0,0,2,2,1", "--precision", "40", "--threads", "1"]).1;
    assert_eq!(a, b);
}

#[test]
fn output_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ij.csv");
    let (code, out, _) = lgcy(&["ifunc", "--side", "fjrw", "--label", "J", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("t_exp,q_exp,z_exp,h_power,basis,residue_class,value"));
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_ne!(lgcy(&["ifunc", "--side", "fjrw", "--label", "0,0,0,0,0"]).0, 0);
    assert_ne!(lgcy(&["ifunc", "--side", "gw", "--label", "1,1,1,1,1"]).0, 0);
    assert_ne!(lgcy(&["verify", "no-such-check"]).0, 0);
    assert_ne!(lgcy(&["verify", "j-shape", "--precision", "10"]).0, 0);
    assert_ne!(lgcy(&["frobnicate"]).0, 0);
}

#[test]
fn verify_single_checks() {
    let (code, out, _) = lgcy(&["verify", "state-spaces", "small-slice-rank", "--order", "10", "--format", "text"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("criterion  1 state-spaces       PASS"));
    assert!(out.contains("criterion 10 small-slice-rank   PASS"));
    let (code, out, _) = lgcy(&["verify", "main-identity", "--h", "J", "--order", "10"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "pass");
    assert!(v["checks"][0]["details"][1].as_str().unwrap().starts_with("J: c_h = t/5"));
    assert!(!v["checks"][0]["provenance"].as_str().unwrap().is_empty());
    let (code, out, _) = lgcy(&["verify", "symplectic", "--format", "csv"]);
    assert_eq!(code, 1);
    assert!(out.lines().nth(1).unwrap().starts_with("8,symplectic,FAIL"));
}

#[test]
fn config_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lgcy.toml");
    std::fs::write(&path, "truncation_order = 12\nprecision_digits = 40\noutput_format = \"text\"\n").unwrap();
    let c = Config::from_file(&path).unwrap();
    assert_eq!((c.truncation_order, c.precision_digits, c.output_format), (12, 40, Format::Text));
    assert_eq!(c.branch, Config::default().branch);
    assert!(Config::from_toml("truncation_order = 3").is_err());
    assert!(Config::from_toml("precision_digits = 20").is_err());
    let out = Command::new(env!("CARGO_BIN_EXE_lgcy"))
        .args(["sectors", "--side", "lg"])
        .env(cli::CONFIG_ENV, &path)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 204);
    assert!(text.starts_with("J "));
}

#[test]
fn defaults() {
    let c = Config::default();
    assert_eq!((c.truncation_order, c.precision_digits), (30, 80));
    assert!(c.branch.t.contains("q^(-1/5)"));
}
