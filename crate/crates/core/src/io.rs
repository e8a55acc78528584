//! Canonical JSON output shared by every file the crate writes.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::hodge::MetricWeights;

/// Pretty JSON with object keys sorted, terminated by a newline.
///
/// Floats use the shortest representation that round-trips, so identical
/// values always print identically.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

/// On-disk metric: `{ "name": string, "weights": [[float, ...], ...] }`, one
/// list per degree in simplex order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub name: String,
    pub weights: Vec<Vec<f64>>,
}

impl WeightsFile {
    pub fn new(name: impl Into<String>, w: &MetricWeights) -> Self {
        Self { name: name.into(), weights: w.degrees().to_vec() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// Validates shape and positivity against `k`.
    pub fn to_weights(&self, k: &SimplicialComplex) -> Result<MetricWeights> {
        MetricWeights::new(k, self.weights.clone())
    }
}
