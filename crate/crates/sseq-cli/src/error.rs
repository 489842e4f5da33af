use std::fmt;
use std::path::Path;

use sseq::fgab::FgError;
use sseq::kone::KoneError;
use sseq::repring::RepError;
use sseq::tower::TowerError;
use sseq::transport::TransportError;

/// A failed invocation: bad input (exit 2) or a refusal by the math (exit 3).
#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        CliError::Schema(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Parse(_) => CliError::Schema(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Schema(_) => CliError::Schema(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TransportError> for CliError {
    fn from(e: TransportError) -> Self {
        match e {
            TransportError::Schema(_) => CliError::Schema(e.to_string()),
            TransportError::Tower(t) => t.into(),
            TransportError::Kone(k) => k.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<KoneError> for CliError {
    fn from(e: KoneError) -> Self {
        match e {
            KoneError::Parse(_) => CliError::Schema(e.to_string()),
            KoneError::Tower(t) => t.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<FgError> for CliError {
    fn from(e: FgError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Read and deserialize a UTF-8 JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::schema(format!("Schema: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::schema(format!("Schema: {}: {e}", path.display())))
}
