use std::fs;

use qocinfo::harness::{run_experiment, write_outputs, ExperimentConfig, CSV_HEADER};

const CONFIG: &str = r#"{
    "system": {"preset": "single_qubit"},
    "object_kind": "pure",
    "sweep_variable": "n_modes",
    "sweep_values": [0, 1, 2],
    "fixed": {"T": 3.0, "epsilon": 1e-4, "restarts": 2},
    "seeds": [11, 12, 13],
    "budget": 300,
    "output_path": "runs/knee.csv"
}"#;

fn run_into(dir: &std::path::Path, workers: usize) -> (Vec<u8>, Vec<u8>) {
    let cfg = ExperimentConfig::from_json(CONFIG).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
    let out = pool.install(|| run_experiment(&cfg)).unwrap();
    let art = write_outputs(&cfg, &out, dir).unwrap();
    assert_eq!(art.csv, dir.join("runs/knee.csv"));
    assert_eq!(art.manifest, dir.join("runs/knee.manifest.json"));
    (fs::read(art.csv).unwrap(), fs::read(art.manifest).unwrap())
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = run_into(a.path(), 1);
    let second = run_into(b.path(), 4);
    assert_eq!(first.0, second.0);
    assert_eq!(first.1, second.1);
}

#[test]
fn artifacts_carry_bounds_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, manifest) = run_into(dir.path(), 2);
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 1 + 3 * 3);

    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    for row in rdr.records() {
        let row = row.unwrap();
        let objective: f64 = row[2].parse().unwrap();
        let eps_info: f64 = row[6].parse().unwrap();
        assert!(objective >= eps_info - 1e-12);
    }

    let m: serde_json::Value = serde_json::from_slice(&manifest).unwrap();
    let cfg = ExperimentConfig::from_json(CONFIG).unwrap();
    assert_eq!(m["config_sha256"], cfg.hash());
    assert_eq!(m["seeds"], serde_json::json!([11, 12, 13]));
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    assert!(m["violations"].as_array().unwrap().is_empty());
}
