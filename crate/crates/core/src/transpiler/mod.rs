//! Hardware-specific transpilation.
//!
//! [`transpile`] rewrites a circuit into a quantum computer's native gate
//! set ([`decompose`]), inserts SWAPs so every 2-qubit gate lands on a
//! coupled pair ([`route`]), expands those SWAPs, and reports the
//! resulting width and depth. No optimisation passes run; the output is
//! only guaranteed to be correct.

mod coupling;
mod decompose;
mod equiv;
mod gateset;
mod route;

use thiserror::Error;

use crate::circuit::{CircuitError, GateKind, QuantumCircuit};
use crate::registry::QuantumComputer;

pub use coupling::{CouplingError, CouplingMap};
pub use decompose::{decompose, MAX_EXPANSION_DEPTH};
pub use equiv::{circuits_equivalent, EquivalenceError, EQUIVALENCE_TOLERANCE};
pub use gateset::{GateSetDocument, GateSetIssue, GateTemplate, NativeGateSet, RuleDocument, TemplateDocument};
pub use route::{route, Layout};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TranspileError {
    #[error("circuit width {width} exceeds the {qubits} physical qubits")]
    WidthExceedsQubits { width: usize, qubits: usize },
    #[error("gate set '{gate_set}' has no rule for '{kind}'")]
    NoRule { kind: GateKind, gate_set: String },
    #[error("expanding '{kind}' in gate set '{gate_set}' exceeded {MAX_EXPANSION_DEPTH} nested rules")]
    ExpansionTooDeep { kind: GateKind, gate_set: String },
    #[error("'{kind}' acts on more than 2 qubits and cannot be routed")]
    GateTooWide { kind: GateKind },
    #[error("no coupling path between physical qubits {from} and {to}")]
    NoPath { from: usize, to: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A circuit rewritten for one quantum computer.
#[derive(Debug, Clone, PartialEq)]
pub struct TranspiledCircuit {
    pub circuit: QuantumCircuit,
    pub source_id: String,
    pub target_id: String,
    /// Width of the circuit before transpilation.
    pub source_width: usize,
    pub width: usize,
    pub depth: usize,
    pub final_layout: Layout,
}

impl TranspiledCircuit {
    pub fn gate_count(&self) -> usize {
        self.circuit.gates().len()
    }
}

/// Transpiles `c` for `qpu`: decompose, route, decompose again to expand
/// routing SWAPs, then measure.
pub fn transpile(
    c: &QuantumCircuit,
    source_id: &str,
    qpu: &QuantumComputer,
) -> Result<TranspiledCircuit, TranspileError> {
    transpile_to(c, source_id, qpu.id(), qpu.gate_set(), qpu.coupling())
}

/// [`transpile`] against an explicit gate set and coupling map.
pub fn transpile_to(
    c: &QuantumCircuit,
    source_id: &str,
    target_id: &str,
    gate_set: &NativeGateSet,
    coupling: &CouplingMap,
) -> Result<TranspiledCircuit, TranspileError> {
    if c.num_qubits() > coupling.num_physical_qubits() {
        return Err(TranspileError::WidthExceedsQubits {
            width: c.num_qubits(),
            qubits: coupling.num_physical_qubits(),
        });
    }
    let native = decompose(c, gate_set)?;
    let (routed, final_layout) = route(&native, coupling)?;
    let circuit = decompose(&routed, gate_set)?;
    Ok(TranspiledCircuit {
        width: circuit.width(),
        depth: circuit.depth(),
        source_id: source_id.to_string(),
        target_id: target_id.to_string(),
        source_width: c.num_qubits(),
        final_layout,
        circuit,
    })
}
