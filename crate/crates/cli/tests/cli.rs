use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vosa(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vosa"));
    c.args(args).env_remove("VOSA_CACHE_DIR");
    if let Some(d) = cache {
        c.env("VOSA_CACHE_DIR", d);
    }
    c.output().expect("run vosa")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = vosa(args, None);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

#[test]
fn zhu_sigma_l2_is_certified() {
    let (v, code) = json(&["zhu", "--l", "2", "--twist", "sigma", "--max-weight", "5/2", "--certify"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "vosa-zhu/1");
    assert_eq!(v["dim"], 4);
    assert_eq!(v["certified"], true);
    assert_eq!(v["blocks"], serde_json::json!([2]));
    assert_eq!(v["center_dim"], 1);
    assert_eq!(v["basis_labels"].as_array().unwrap().len(), 4);
    assert!(!v["structure_constants"].as_array().unwrap().is_empty());
}

#[test]
fn zhu_untwisted_and_sigma_l1() {
    let (v, code) = json(&["zhu", "--l", "1", "--twist", "id", "--max-weight", "3"]);
    assert_eq!((v["dim"].as_u64(), code), (Some(1), 0));
    let (v, _) = json(&["zhu", "--l", "1", "--twist", "sigma"]);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["blocks"], serde_json::json!([1, 1]));
}

#[test]
fn uncertified_exit_code() {
    let (v, code) = json(&["zhu", "--l", "2", "--twist", "sigma", "--max-weight", "0", "--certify"]);
    assert_eq!(code, 2);
    assert_eq!(v["certified"], false);
    assert_eq!(v["closed"], false);
}

#[test]
fn invalid_input_exit_code() {
    let out = vosa(&["zhu", "--max-weight", "1/3"], None);
    assert_eq!(out.status.code(), Some(1));
    let out = vosa(&["zhu", "--twist", "tau", "--tau-table", "self:1/3"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_suites() {
    let (v, code) = json(&["verify", "--suite", "virasoro", "--l", "3"]);
    assert_eq!((v["passed"].as_bool(), code), (Some(true), 0));
    assert!(v["details"].as_array().unwrap().iter().any(|d| d[0] == "central_charge" && d[1] == "3/2"));
    for suite in ["jacobi", "omega", "zhu-axioms", "lie"] {
        let (v, code) = json(&["verify", "--suite", suite, "--l", "2", "--twist", "sigma"]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["passed"], true);
    }
    let (v, _) = json(&["verify", "--suite", "omega", "--l", "2", "--twist", "sigma"]);
    assert!(v["details"].as_array().unwrap().iter().any(|d| d[1] == "2"));
}

#[test]
fn basis_omega_induce() {
    let (v, _) = json(&["basis", "--l", "2", "--max-weight", "2"]);
    let dims: Vec<u64> =
        v["modules"][0]["graded_dims"].as_array().unwrap().iter().map(|d| d[1].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 1, 2, 4]);

    let (v, _) = json(&["omega", "--l", "3", "--twist", "sigma"]);
    let ms = v["modules"].as_array().unwrap();
    assert_eq!(ms.len(), 2);
    assert!(ms.iter().all(|m| m["dim"] == 2));

    let (v, code) = json(&["induce", "--l", "2", "--twist", "sigma", "--max-weight", "3/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["seeds"][0]["matches_module"], true);
    assert_eq!(v["seeds"][0]["omega_is_seed"], true);
}

#[test]
fn output_is_deterministic_and_cache_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["zhu", "--l", "3", "--twist", "sigma", "--certify"];
    let plain = vosa(&args, None).stdout;
    let miss = vosa(&args, Some(&cache)).stdout;
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let hit = vosa(&args, Some(&cache)).stdout;
    assert_eq!(plain, miss);
    assert_eq!(miss, hit);
    let entry: Value = serde_json::from_slice(&std::fs::read(entries[0].as_ref().unwrap().path()).unwrap()).unwrap();
    assert_eq!(entry["schema"], "vosa-basis/1");
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "l = 4\ntwist = \"sigma\"\nformat = \"table\"\n").unwrap();
    let out = dir.path().join("out.json");
    let o = vosa(
        &["zhu", "--config", cfg.to_str().unwrap(), "--l", "1", "--format", "json", "--output", out.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["l"], 1);
    assert_eq!(v["config"]["twist"], "sigma");
    assert_eq!(v["dim"], 2);
}

#[test]
fn tau_swap_pair() {
    let (v, code) = json(&["zhu", "--twist", "tau", "--certify"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["blocks"], serde_json::json!([1, 1]));
    let (v, _) = json(&["omega", "--twist", "tau", "--tau-table", "self:1/2,self:0"]);
    assert_eq!(v["modules"].as_array().unwrap().len(), 2);
}
