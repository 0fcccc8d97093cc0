//! JSON input and output documents. Complex entries are always `[re, im]`.

use serde::{Deserialize, Serialize};

use crate::frame::FrameSequence;
use crate::matrix::C64;

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Entry>>,
}

/// A parse or validation failure, naming the field at fault.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentError(pub String);

impl std::fmt::Display for DocumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DocumentError {}

fn to_complex(entries: &[Entry]) -> Vec<C64> {
    entries.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

pub fn from_complex(v: &[C64]) -> Vec<Entry> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn check_finite(field: &str, entries: &[Entry]) -> Result<(), DocumentError> {
    match entries.iter().position(|[re, im]| !(re.is_finite() && im.is_finite())) {
        Some(i) => Err(DocumentError(format!("{field}[{i}]: entry is not finite"))),
        None => Ok(()),
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| DocumentError(format!("invalid document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn from_frame(frame: &FrameSequence) -> Self {
        Self {
            ambient_dim: frame.ambient_dim(),
            vectors: frame.vectors().iter().map(|v| from_complex(v)).collect(),
            signal: None,
            coefficients: None,
        }
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        let n = self.ambient_dim;
        if n == 0 {
            return Err(DocumentError("ambient_dim: must be positive".into()));
        }
        if self.vectors.is_empty() {
            return Err(DocumentError("vectors: must contain at least one vector".into()));
        }
        for (k, v) in self.vectors.iter().enumerate() {
            if v.len() != n {
                return Err(DocumentError(format!(
                    "vectors[{k}]: expected {n} entries (ambient_dim), found {}",
                    v.len()
                )));
            }
            check_finite(&format!("vectors[{k}]"), v)?;
        }
        if let Some(f) = &self.signal {
            if f.len() != n {
                return Err(DocumentError(format!(
                    "signal: expected {n} entries (ambient_dim), found {}",
                    f.len()
                )));
            }
            check_finite("signal", f)?;
        }
        if let Some(c) = &self.coefficients {
            let m = self.vectors.len();
            if c.len() != m {
                return Err(DocumentError(format!(
                    "coefficients: expected {m} entries (one per vector), found {}",
                    c.len()
                )));
            }
            check_finite("coefficients", c)?;
        }
        Ok(())
    }

    pub fn frame(&self) -> Result<FrameSequence, DocumentError> {
        let vectors = self.vectors.iter().map(|v| to_complex(v)).collect();
        FrameSequence::new(self.ambient_dim, vectors).map_err(|e| DocumentError(format!("vectors: {e}")))
    }

    pub fn signal(&self) -> Option<Vec<C64>> {
        self.signal.as_deref().map(to_complex)
    }

    pub fn coefficients(&self) -> Option<Vec<C64>> {
        self.coefficients.as_deref().map(to_complex)
    }
}
