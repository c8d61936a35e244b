use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::sweeps::{SweepOutput, SweepSummary, ViolationRecord};
use crate::error::Result;

pub const CSV_HEADER: [&str; 10] = [
    "sweep_value",
    "seed",
    "best_objective",
    "n_s",
    "kappa_s",
    "d_w",
    "eps_info",
    "t_min",
    "t_qsl",
    "evaluations",
];

/// One CSV row per `(sweep value, seed)` with the bound columns.
pub fn write_csv<W: Write>(out: &SweepOutput, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in out.runs() {
        w.write_record([
            r.sweep_value.to_string(),
            r.seed.to_string(),
            r.best_objective.to_string(),
            r.n_s.to_string(),
            r.kappa_s.to_string(),
            r.d_w.to_string(),
            r.eps_info.to_string(),
            opt(r.t_min),
            opt(r.t_qsl),
            r.evaluations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub config_sha256: String,
    pub version: &'static str,
    pub system: &'a str,
    pub seeds: &'a [u64],
    pub csv: String,
    pub d_w_source: super::system::DimensionSource,
    pub summary: &'a SweepSummary,
    pub violations: &'a [ViolationRecord],
    pub advisories: &'a [ViolationRecord],
}

pub fn manifest<'a>(cfg: &'a ExperimentConfig, out: &'a SweepOutput, csv_name: String) -> Manifest<'a> {
    Manifest {
        config_sha256: cfg.hash(),
        version: env!("CARGO_PKG_VERSION"),
        system: &out.system,
        seeds: &cfg.seeds,
        csv: csv_name,
        d_w_source: out.d_w_source,
        summary: &out.summary,
        violations: &out.violations,
        advisories: &out.advisories,
    }
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

/// Writes the sweep CSV at the configured output path (resolved against
/// `dir` when relative) and a `<stem>.manifest.json` beside it.
pub fn write_outputs(cfg: &ExperimentConfig, out: &SweepOutput, dir: &Path) -> Result<Artifacts> {
    let csv_path = if cfg.output_path.is_absolute() {
        cfg.output_path.clone()
    } else {
        dir.join(&cfg.output_path)
    };
    if let Some(parent) = csv_path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut buf = Vec::new();
    write_csv(out, &mut buf)?;
    fs::write(&csv_path, buf)?;

    let stem = csv_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".into());
    let name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let manifest_path = csv_path.with_file_name(format!("{stem}.manifest.json"));
    let mut json = serde_json::to_vec_pretty(&manifest(cfg, out, name))?;
    json.push(b'\n');
    fs::write(&manifest_path, json)?;
    Ok(Artifacts {
        csv: csv_path,
        manifest: manifest_path,
    })
}
