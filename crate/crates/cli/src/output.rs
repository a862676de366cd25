//! Byte-stable data files and the run manifest that indexes them.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use lgi_core::explorer::{negative_regions, ScanResult};

/// Fixed numeric format: 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn grid_csv(res: &ScanResult) -> String {
    let mut s = format!("{},beta,q_pp,q_pm,q_mp,q_mm\n", res.spec.system.x_name());
    for iy in 0..res.ny() {
        for ix in 0..res.nx() {
            let q = res.q[res.index(ix, iy)];
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                num(res.spec.x.value(ix)),
                num(res.spec.beta.value(iy)),
                num(q[0]),
                num(q[1]),
                num(q[2]),
                num(q[3])
            );
        }
    }
    s
}

/// What a `region_id` in contours.csv refers to.
#[derive(Debug, Serialize)]
pub struct ContourEntry {
    pub region_id: usize,
    pub outcome: String,
    /// Index of the connected negative region for this outcome.
    pub region: usize,
    pub closed: bool,
    pub sample_count: usize,
    pub min_q: f64,
    pub min_at: [f64; 2],
}

/// One `region_id` per polyline, numbered across all requested outcomes.
pub fn contours_csv(res: &ScanResult) -> (String, Vec<ContourEntry>) {
    let mut s = String::from("region_id,vertex_index,x,y\n");
    let mut index = Vec::new();
    for &pair in &res.spec.outcomes {
        for (ri, region) in negative_regions(res, pair).iter().enumerate() {
            for line in &region.polylines {
                let id = index.len();
                for (vi, p) in line.points.iter().enumerate() {
                    let _ = writeln!(s, "{id},{vi},{},{}", num(p[0]), num(p[1]));
                }
                index.push(ContourEntry {
                    region_id: id,
                    outcome: pair.to_string(),
                    region: ri,
                    closed: line.closed,
                    sample_count: region.sample_count,
                    min_q: region.min_q,
                    min_at: region.min_at,
                });
            }
        }
    }
    (s, index)
}

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub argv: Vec<String>,
    pub version: &'static str,
    pub execution: lgi_core::Execution,
    pub seed: Option<u64>,
    pub parameters: Value,
    pub started_at: String,
    pub finished_at: String,
    pub files: Vec<FileDigest>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub extra: Value,
}

/// Collects data files for one run and writes them plus `manifest.json`.
pub struct Run {
    dir: PathBuf,
    files: Vec<FileDigest>,
}

impl Run {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Run {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.files.push(FileDigest {
            name: name.to_string(),
            bytes: contents.len(),
            sha256: hex::encode(Sha256::digest(contents.as_bytes())),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(name, &s)
    }

    pub fn finish(self, mut manifest: Manifest) -> Result<()> {
        manifest.files = self.files;
        manifest.finished_at = now();
        let mut s = serde_json::to_string_pretty(&manifest)?;
        s.push('\n');
        let path = self.dir.join("manifest.json");
        fs::write(&path, s).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-0.0886621), "-8.8662099999999994e-2");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        let v = 1.0 / 3.0;
        assert_eq!(num(v).parse::<f64>().unwrap(), v);
    }
}
