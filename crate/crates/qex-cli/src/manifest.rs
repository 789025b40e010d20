use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::failure::Failure;

/// Every run writes exactly one of these next to its outputs. The manifest
/// carries no timestamps, so a rerun over identical inputs is byte-identical
/// and verifiable by digest comparison.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    /// The fully resolved parameter set, defaults included.
    pub parameters: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

fn digest_file(path: &Path) -> Result<InputDigest, Failure> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(hasher.finalize()),
    })
}

/// Builds and writes `<out_dir>/manifest.json`; returns its path.
pub fn write_manifest(
    out_dir: &Path,
    subcommand: &str,
    parameters: serde_json::Value,
    input_paths: &[PathBuf],
    output_paths: &[PathBuf],
) -> Result<PathBuf, Failure> {
    let manifest = RunManifest {
        tool: "qex",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: subcommand.to_string(),
        parameters,
        inputs: input_paths
            .iter()
            .map(|p| digest_file(p))
            .collect::<Result<_, _>>()?,
        outputs: output_paths
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
    };
    let path = out_dir.join("manifest.json");
    let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    body.push('\n');
    std::fs::write(&path, body)?;
    Ok(path)
}
