use crate::circuit::{GateApplication, QuantumCircuit};

use super::{NativeGateSet, TranspileError};

/// Maximum nesting of rule applications for a single source gate.
pub const MAX_EXPANSION_DEPTH: usize = 16;

/// Rewrites every gate outside `basis` with the gate set's rules,
/// recursively, until only basis gates and measurements remain.
pub fn decompose(c: &QuantumCircuit, basis: &NativeGateSet) -> Result<QuantumCircuit, TranspileError> {
    let mut out = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        expand(g, basis, 0, &mut out)?;
    }
    Ok(QuantumCircuit::new(c.name(), c.num_qubits(), out)?)
}

fn expand(
    g: &GateApplication,
    basis: &NativeGateSet,
    depth: usize,
    out: &mut Vec<GateApplication>,
) -> Result<(), TranspileError> {
    if basis.contains(g.kind) {
        out.push(g.clone());
        return Ok(());
    }
    if depth == MAX_EXPANSION_DEPTH {
        return Err(TranspileError::ExpansionTooDeep {
            kind: g.kind,
            gate_set: basis.name().to_string(),
        });
    }
    let rule = basis.rule(g.kind).ok_or_else(|| TranspileError::NoRule {
        kind: g.kind,
        gate_set: basis.name().to_string(),
    })?;
    for template in rule {
        expand(&template.instantiate(g), basis, depth + 1, out)?;
    }
    Ok(())
}
