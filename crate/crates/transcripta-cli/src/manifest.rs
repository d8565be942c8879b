//! Run manifests: a JSON sidecar written next to every output file so runs
//! can be audited and reproduced.

use crate::{output, Failure};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Serialize)]
pub struct RunManifest {
    command: String,
    params: BTreeMap<String, String>,
    input_hashes: BTreeMap<String, String>,
    tool_version: String,
    timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            params: BTreeMap::new(),
            input_hashes: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Records the SHA-256 digest of an input file.
    pub fn input(&mut self, path: &Path) -> Result<&mut Self, Failure> {
        let digest = Sha256::digest(output::read_bytes(path)?);
        self.input_hashes
            .insert(path.display().to_string(), format!("sha256:{digest:x}"));
        Ok(self)
    }

    /// Writes `<data_path>.manifest.json` beside the data file.
    pub fn write_beside(&self, data_path: &Path) -> Result<(), Failure> {
        let mut sidecar = data_path.as_os_str().to_owned();
        sidecar.push(".manifest.json");
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Failure::internal(format!("manifest serialization: {e}")))?;
        output::write_file(Path::new(&sidecar), &(json + "\n"))
    }
}
