use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::Context;
use kts_core::FieldDescriptor;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Provenance record stored next to every result written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub tool_version: String,
    pub field: FieldDescriptor,
    pub elapsed_ms: u64,
    /// SHA-256 of the compact JSON of the result.
    pub digest: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config: serde_json::Value,
        field: FieldDescriptor,
        elapsed: Duration,
        result: &serde_json::Value,
    ) -> Self {
        RunManifest {
            command: command.into(),
            config,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            field,
            elapsed_ms: elapsed.as_millis() as u64,
            digest: digest(result),
        }
    }
}

pub fn digest(result: &serde_json::Value) -> String {
    hex::encode(Sha256::digest(result.to_string().as_bytes()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub manifest: RunManifest,
    pub result: serde_json::Value,
}

fn ensure_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

pub fn write_json(
    path: &Path,
    manifest: &RunManifest,
    result: &serde_json::Value,
) -> anyhow::Result<()> {
    let envelope = Envelope {
        manifest: manifest.clone(),
        result: result.clone(),
    };
    let text = ensure_newline(serde_json::to_string_pretty(&envelope)?);
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// CSV with the manifest as a leading `#` comment line.
pub fn write_csv<T: Serialize>(
    path: &Path,
    manifest: &RunManifest,
    rows: &[T],
) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let body = String::from_utf8(w.into_inner()?)?;
    let text = format!("# {}\n{}", serde_json::to_string(manifest)?, body);
    fs::write(path, ensure_newline(text))
        .with_context(|| format!("cannot write {}", path.display()))
}
