//! On-disk JSON shapes, one entity per file.
//!
//! ```text
//! algorithms/*.json       {id, name, description, parameters:[{name, type, description}]}
//! implementations/*.json  {id, algorithm, sdk, circuit | generator, rule:{parameter, min, max}}
//! qpus/*.json             {id, vendor, qubits, gateset, coupling:{edges:[[a,b],...]},
//!                          decoherence_us, layer_time_us, sdks:[...]}
//! sdks/*.json             {id, vendor, description}
//! gatesets/*.json         {name, basis:[...], rules:[{from, expansion:[...]}]}
//! ```
//!
//! `circuit` is either inline circuit text or `{"file": "<path relative to
//! the registry root>"}`.

use serde::{Deserialize, Serialize};

use crate::rules::SelectionRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterType {
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterDocument {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: ParameterType,
    #[serde(default)]
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmDocument {
    pub id: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub parameters: Vec<ParameterDocument>,
    /// Must be set to accept an empty parameter list.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub parameterless: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircuitSourceDocument {
    Inline(String),
    File { file: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplementationDocument {
    pub id: String,
    pub algorithm: String,
    pub sdk: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitSourceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<SelectionRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingDocument {
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpuDocument {
    pub id: String,
    pub vendor: String,
    pub qubits: usize,
    pub gateset: String,
    pub coupling: CouplingDocument,
    pub decoherence_us: f64,
    pub layer_time_us: f64,
    pub sdks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SdkDocument {
    pub id: String,
    pub vendor: String,
    #[serde(default)]
    pub description: String,
}
