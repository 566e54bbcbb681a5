//! Versioned JSON container for [`GanetModel`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::run::GanetModel;
use crate::error::{Error, Result};
use crate::io::write_atomic;

pub const MODEL_FORMAT: &str = "ganet-model";
pub const MODEL_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<M> {
    format: String,
    version: u64,
    model: M,
}

impl GanetModel {
    pub fn to_json(&self) -> Result<String> {
        let env = Envelope {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            model: self,
        };
        serde_json::to_string_pretty(&env)
            .map_err(|e| Error::Invalid(format!("model serialization failed: {e}")))
    }

    pub fn from_json(text: &str) -> Result<GanetModel> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::ModelParse(e.to_string()))?;
        match value.get("format").and_then(Value::as_str) {
            Some(MODEL_FORMAT) => {}
            Some(other) => {
                return Err(Error::ModelParse(format!(
                    "not a model file (format `{other}`)"
                )))
            }
            None => return Err(Error::ModelParse("missing `format` field".into())),
        }
        let version = value
            .get("version")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::ModelParse("missing `version` field".into()))?;
        if version != MODEL_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: MODEL_VERSION,
            });
        }
        let env: Envelope<GanetModel> =
            serde_json::from_value(value).map_err(|e| Error::ModelParse(e.to_string()))?;
        Ok(env.model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomic(path.as_ref(), self.to_json()?.as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<GanetModel> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
