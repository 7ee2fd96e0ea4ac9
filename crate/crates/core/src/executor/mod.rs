//! Execution of transpiled circuits on pluggable backends.
//!
//! The built-in [`StatevectorBackend`] simulates ideal, noiseless
//! execution. [`RemoteStubBackend`] stands in for vendor cloud delivery
//! and always reports that it is not connected.

mod sample;
mod statevector;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::transpiler::TranspiledCircuit;

pub use sample::{bitstring, marginal_probabilities, sample};
pub use statevector::{apply_gate, norm, simulate, StateVector, SIMULATOR_MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecutionError {
    #[error("circuit width {width} exceeds the simulator limit of {max} qubits")]
    TooWide { width: usize, max: usize },
    #[error("no qubits to measure")]
    NothingMeasured,
    #[error("shots must be at least 1")]
    NoShots,
    #[error("measured qubit {qubit} is outside a {width}-qubit state")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {0} is measured twice")]
    DuplicateMeasuredQubit(usize),
    #[error("backend '{backend}' does not support sdk '{sdk}'")]
    SdkMismatch { backend: String, sdk: String },
    #[error("backend '{backend}' handles at most {max} qubits, circuit has {width}")]
    CapabilityExceeded { backend: String, width: usize, max: usize },
    #[error("backend '{0}' is not connected")]
    NotConnected(String),
}

/// Measurement histogram of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionResult {
    pub backend: String,
    pub shots: u64,
    pub seed: u64,
    /// Bitstring (qubit 0 rightmost) to occurrence count.
    pub counts: BTreeMap<String, u64>,
}

/// Something that runs transpiled circuits.
pub trait Backend: Send + Sync {
    fn id(&self) -> &str;
    fn supported_sdks(&self) -> &BTreeSet<String>;
    fn max_qubits(&self) -> usize;

    /// Runs a circuit already checked against SDK and capability.
    /// Must be deterministic in `(circuit, shots, seed)`.
    fn run(&self, t: &TranspiledCircuit, shots: u64, seed: u64) -> Result<ExecutionResult, ExecutionError>;
}

/// Checks SDK support and capability, then runs `t` on `backend`.
pub fn execute(
    t: &TranspiledCircuit,
    sdk: &str,
    backend: &dyn Backend,
    shots: u64,
    seed: u64,
) -> Result<ExecutionResult, ExecutionError> {
    if !backend.supported_sdks().contains(sdk) {
        return Err(ExecutionError::SdkMismatch {
            backend: backend.id().to_string(),
            sdk: sdk.to_string(),
        });
    }
    if t.width > backend.max_qubits() {
        return Err(ExecutionError::CapabilityExceeded {
            backend: backend.id().to_string(),
            width: t.width,
            max: backend.max_qubits(),
        });
    }
    if shots == 0 {
        return Err(ExecutionError::NoShots);
    }
    backend.run(t, shots, seed)
}

/// Physical qubits to read out, ordered by the logical qubit they hold.
///
/// These are the measured qubits, or every logical qubit of the source
/// circuit when it measures nothing. Bit `k` of a result therefore
/// belongs to the `k`-th smallest measured logical qubit.
pub fn readout_qubits(t: &TranspiledCircuit) -> Vec<usize> {
    let layout = &t.final_layout;
    let mut logical: Vec<usize> = if t.circuit.has_measurements() {
        t.circuit
            .measured_qubits()
            .into_iter()
            .map(|p| layout.logical(p))
            .collect()
    } else {
        (0..t.source_width).collect()
    };
    logical.sort_unstable();
    logical.into_iter().map(|l| layout.physical(l)).collect()
}

/// Ideal dense statevector simulation with seeded sampling.
#[derive(Debug, Clone)]
pub struct StatevectorBackend {
    sdks: BTreeSet<String>,
}

impl StatevectorBackend {
    pub fn new<I, S>(sdks: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            sdks: sdks.into_iter().map(Into::into).collect(),
        }
    }
}

impl Backend for StatevectorBackend {
    fn id(&self) -> &str {
        "statevector-simulator"
    }

    fn supported_sdks(&self) -> &BTreeSet<String> {
        &self.sdks
    }

    fn max_qubits(&self) -> usize {
        SIMULATOR_MAX_QUBITS
    }

    fn run(&self, t: &TranspiledCircuit, shots: u64, seed: u64) -> Result<ExecutionResult, ExecutionError> {
        let state = simulate(&t.circuit)?;
        let counts = sample(&state, &readout_qubits(t), shots, seed)?;
        Ok(ExecutionResult {
            backend: self.id().to_string(),
            shots,
            seed,
            counts,
        })
    }
}

/// Placeholder for delivery to a vendor cloud.
#[derive(Debug, Clone)]
pub struct RemoteStubBackend {
    id: String,
    sdks: BTreeSet<String>,
    max_qubits: usize,
}

impl RemoteStubBackend {
    pub fn new<I, S>(id: impl Into<String>, sdks: I, max_qubits: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            id: id.into(),
            sdks: sdks.into_iter().map(Into::into).collect(),
            max_qubits,
        }
    }
}

impl Backend for RemoteStubBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn supported_sdks(&self) -> &BTreeSet<String> {
        &self.sdks
    }

    fn max_qubits(&self) -> usize {
        self.max_qubits
    }

    fn run(&self, _t: &TranspiledCircuit, _shots: u64, _seed: u64) -> Result<ExecutionResult, ExecutionError> {
        Err(ExecutionError::NotConnected(self.id.clone()))
    }
}
