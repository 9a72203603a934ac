//! Run reports: one self-contained JSON document per command invocation.
//!
//! Re-running the same command on the same input yields a byte-identical
//! report except for the `timing_ms` field, which callers strip when
//! comparing.

use ckp_core::{Certificate, CyclicValidation, FixedPointReport, ValidationReport};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What `validate` found: the metric report plus, when the sections are
/// present, the map/partition check.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationPayload {
    pub metric: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<CyclicValidation>,
    pub valid: bool,
}

/// Manifest entry for one generated instance file.
#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub seed: u64,
    pub file: String,
    pub n_points: usize,
    pub m_sets: usize,
}

/// Summary of one separating instance found by the search.
#[derive(Debug, Clone, Serialize)]
pub struct SeparatingEntry {
    pub seed: u64,
    pub file: String,
    pub lambda_min: f64,
    pub lipschitz: f64,
}

/// Classification counts and the separating instances written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct SearchManifest {
    pub budget: usize,
    pub counts: ckp_core::gen::ClassCounts,
    pub kannan_not_banach: Vec<SeparatingEntry>,
    pub banach_not_kannan: Vec<SeparatingEntry>,
}

/// What `generate` wrote: config echo, instance files, optional search
/// results.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub config: ckp_core::GenConfig,
    pub count: usize,
    pub instances: Vec<ManifestEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchManifest>,
}

/// The result section of a run report.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportPayload {
    Validation(ValidationPayload),
    Certificate(Certificate),
    Solve(FixedPointReport),
    Generate(Manifest),
}

/// One command invocation: tool version, command, content hash of the
/// input, the effective configuration, and the result.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub input_digest: String,
    pub config: Value,
    pub result: ReportPayload,
    pub timing_ms: f64,
}

impl RunReport {
    pub fn new(command: &str, input_digest: String, config: Value, result: ReportPayload) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest,
            config,
            result,
            timing_ms: 0.0,
        }
    }
}

/// `sha256:<hex>` of raw bytes.
pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_prefixed() {
        let d = digest_bytes(b"abc");
        assert!(d.starts_with("sha256:"));
        assert_eq!(
            d,
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(digest_bytes(b"abc"), d);
    }
}
