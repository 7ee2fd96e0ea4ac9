//! File-backed catalog of algorithms, implementations, quantum computers
//! and SDKs.
//!
//! A registry root holds one JSON document per entity:
//!
//! ```text
//! <root>/algorithms/*.json
//! <root>/implementations/*.json
//! <root>/qpus/*.json
//! <root>/sdks/*.json
//! <root>/gatesets/*.json      (optional)
//! <root>/criteria.json        (optional plugin list)
//! ```
//!
//! Loading is all-or-nothing: [`load_registry`] either returns a fully
//! cross-checked [`Registry`] or every problem found, each naming the
//! offending file and field. Entities are kept sorted by id.

mod documents;
pub mod generator;
mod load;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::circuit::QuantumCircuit;
use crate::rules::{CriterionPlugin, CriterionSpec, InputValues, RuleCarrier, SelectionRule};
use crate::transpiler::{CouplingMap, NativeGateSet};

pub use documents::{
    AlgorithmDocument, CircuitSourceDocument, CouplingDocument, ImplementationDocument, ParameterDocument,
    ParameterType, QpuDocument, SdkDocument,
};
pub use generator::GeneratorError;
pub use load::{load_registry, validate, Diagnostic, RegistryError};

#[derive(Debug, Clone, PartialEq)]
pub struct Algorithm {
    doc: AlgorithmDocument,
}

impl Algorithm {
    pub fn id(&self) -> &str {
        &self.doc.id
    }

    pub fn name(&self) -> &str {
        &self.doc.name
    }

    pub fn description(&self) -> &str {
        &self.doc.description
    }

    pub fn parameters(&self) -> &[ParameterDocument] {
        &self.doc.parameters
    }

    pub fn document(&self) -> &AlgorithmDocument {
        &self.doc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sdk {
    doc: SdkDocument,
}

impl Sdk {
    pub fn id(&self) -> &str {
        &self.doc.id
    }

    pub fn vendor(&self) -> &str {
        &self.doc.vendor
    }

    pub fn description(&self) -> &str {
        &self.doc.description
    }

    pub fn document(&self) -> &SdkDocument {
        &self.doc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitSource {
    Static(QuantumCircuit),
    Generator(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Implementation {
    doc: ImplementationDocument,
    source: CircuitSource,
}

impl Implementation {
    pub fn id(&self) -> &str {
        &self.doc.id
    }

    pub fn algorithm_id(&self) -> &str {
        &self.doc.algorithm
    }

    pub fn sdk(&self) -> &str {
        &self.doc.sdk
    }

    pub fn rule(&self) -> Option<&SelectionRule> {
        self.doc.rule.as_ref()
    }

    pub fn source(&self) -> &CircuitSource {
        &self.source
    }

    pub fn document(&self) -> &ImplementationDocument {
        &self.doc
    }

    /// The circuit to run for `input`. Generators receive the value of
    /// the parameter named by the selection rule.
    pub fn circuit_for(&self, input: &InputValues) -> Result<QuantumCircuit, GeneratorError> {
        match &self.source {
            CircuitSource::Static(c) => Ok(c.clone()),
            CircuitSource::Generator(name) => {
                let size = self.rule().and_then(|r| input.get(&r.parameter)).copied().unwrap_or(0);
                generator::generate(name, size)
            }
        }
    }
}

impl RuleCarrier for Implementation {
    fn id(&self) -> &str {
        &self.doc.id
    }

    fn selection_rule(&self) -> Option<&SelectionRule> {
        self.doc.rule.as_ref()
    }
}

/// Capability record of one quantum computer.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumComputer {
    doc: QpuDocument,
    gate_set: Arc<NativeGateSet>,
    coupling: CouplingMap,
    sdks: BTreeSet<String>,
}

impl QuantumComputer {
    /// Builds a record outside any registry directory. The caller is
    /// responsible for `gate_set.name()` matching `doc.gateset`.
    pub fn new(doc: QpuDocument, gate_set: Arc<NativeGateSet>) -> Result<Self, String> {
        let edges: Vec<(usize, usize)> = doc.coupling.edges.iter().map(|e| (e[0], e[1])).collect();
        let coupling = CouplingMap::new(doc.qubits, &edges).map_err(|e| e.to_string())?;
        if !(doc.decoherence_us.is_finite() && doc.decoherence_us > 0.0) {
            return Err("decoherence_us must be positive".into());
        }
        if !(doc.layer_time_us.is_finite() && doc.layer_time_us > 0.0) {
            return Err("layer_time_us must be positive".into());
        }
        if doc.sdks.is_empty() {
            return Err("sdks must not be empty".into());
        }
        let sdks = doc.sdks.iter().cloned().collect();
        Ok(Self {
            doc,
            gate_set,
            coupling,
            sdks,
        })
    }

    pub fn id(&self) -> &str {
        &self.doc.id
    }

    pub fn vendor(&self) -> &str {
        &self.doc.vendor
    }

    pub fn num_qubits(&self) -> usize {
        self.doc.qubits
    }

    pub fn gate_set(&self) -> &NativeGateSet {
        &self.gate_set
    }

    pub fn coupling(&self) -> &CouplingMap {
        &self.coupling
    }

    pub fn decoherence_time_us(&self) -> f64 {
        self.doc.decoherence_us
    }

    pub fn layer_time_us(&self) -> f64 {
        self.doc.layer_time_us
    }

    pub fn sdks(&self) -> &BTreeSet<String> {
        &self.sdks
    }

    pub fn supports_sdk(&self, sdk: &str) -> bool {
        self.sdks.contains(sdk)
    }

    pub fn document(&self) -> &QpuDocument {
        &self.doc
    }

    pub fn max_depth(&self) -> usize {
        max_depth(self)
    }
}

/// Slack that keeps exact quotients such as `0.3 / 0.1` from flooring
/// one layer short.
const DEPTH_EPSILON: f64 = 1e-9;

/// Number of sequential layers that fit into the decoherence budget:
/// `floor(decoherence_time / layer_time)`.
pub fn max_depth(qpu: &QuantumComputer) -> usize {
    depth_budget(qpu.decoherence_time_us(), qpu.layer_time_us())
}

pub(crate) fn depth_budget(decoherence_us: f64, layer_time_us: f64) -> usize {
    let layers = (decoherence_us / layer_time_us + DEPTH_EPSILON).floor();
    if layers >= usize::MAX as f64 {
        usize::MAX
    } else {
        layers as usize
    }
}

/// Immutable, fully validated catalog.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    algorithms: BTreeMap<String, Algorithm>,
    implementations: BTreeMap<String, Implementation>,
    qpus: BTreeMap<String, QuantumComputer>,
    sdks: BTreeMap<String, Sdk>,
    gate_sets: BTreeMap<String, Arc<NativeGateSet>>,
    criteria: Vec<CriterionSpec>,
}

impl Registry {
    pub fn algorithms(&self) -> impl Iterator<Item = &Algorithm> {
        self.algorithms.values()
    }

    pub fn implementations(&self) -> impl Iterator<Item = &Implementation> {
        self.implementations.values()
    }

    pub fn qpus(&self) -> impl Iterator<Item = &QuantumComputer> {
        self.qpus.values()
    }

    pub fn sdks(&self) -> impl Iterator<Item = &Sdk> {
        self.sdks.values()
    }

    pub fn gate_sets(&self) -> impl Iterator<Item = &NativeGateSet> {
        self.gate_sets.values().map(|g| g.as_ref())
    }

    pub fn algorithm(&self, id: &str) -> Option<&Algorithm> {
        self.algorithms.get(id)
    }

    pub fn implementation(&self, id: &str) -> Option<&Implementation> {
        self.implementations.get(id)
    }

    pub fn qpu(&self, id: &str) -> Option<&QuantumComputer> {
        self.qpus.get(id)
    }

    pub fn sdk(&self, id: &str) -> Option<&Sdk> {
        self.sdks.get(id)
    }

    pub fn gate_set(&self, name: &str) -> Option<&NativeGateSet> {
        self.gate_sets.get(name).map(|g| g.as_ref())
    }

    /// Implementations of one algorithm, sorted by id.
    pub fn implementations_of(&self, algorithm_id: &str) -> Vec<Implementation> {
        self.implementations
            .values()
            .filter(|i| i.algorithm_id() == algorithm_id)
            .cloned()
            .collect()
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    /// Fresh plugin instances for the configured criteria.
    pub fn plugins(&self) -> Vec<Box<dyn CriterionPlugin>> {
        self.criteria.iter().map(CriterionSpec::build).collect()
    }

    /// Copy of this registry without one quantum computer.
    pub fn without_qpu(&self, id: &str) -> Registry {
        let mut copy = self.clone();
        copy.qpus.remove(id);
        copy
    }

    /// Copy of this registry without one implementation.
    pub fn without_implementation(&self, id: &str) -> Registry {
        let mut copy = self.clone();
        copy.implementations.remove(id);
        copy
    }

    /// Copy of this registry with a different plugin configuration.
    pub fn with_criteria(&self, criteria: Vec<CriterionSpec>) -> Registry {
        let mut copy = self.clone();
        copy.criteria = criteria;
        copy
    }

    pub fn is_empty(&self) -> bool {
        self.algorithms.is_empty() && self.implementations.is_empty() && self.qpus.is_empty() && self.sdks.is_empty()
    }
}
