//! Random circuits for tests and benchmarks.

use std::f64::consts::PI;

use rand::seq::index::sample;
use rand::Rng;

use super::{GateApplication, GateKind, QuantumCircuit};

/// `num_gates` unitary gates drawn uniformly from the catalog (restricted
/// to those fitting in `num_qubits`), with distinct random operands and
/// angles in `[-2π, 2π)`.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, num_qubits: usize, num_gates: usize) -> QuantumCircuit {
    let kinds: Vec<GateKind> = GateKind::ALL
        .iter()
        .copied()
        .filter(|k| k.is_unitary() && k.arity() <= num_qubits)
        .collect();
    let gates = (0..num_gates)
        .map(|_| {
            let kind = kinds[rng.random_range(0..kinds.len())];
            let operands = sample(rng, num_qubits, kind.arity()).into_vec();
            let params = (0..kind.param_count())
                .map(|_| rng.random_range(-2.0 * PI..2.0 * PI))
                .collect();
            GateApplication::new(kind, operands, params).expect("generated gate is well formed")
        })
        .collect();
    QuantumCircuit::new("q", num_qubits, gates).expect("generated circuit is well formed")
}

/// [`random_circuit`] followed by a measurement of every qubit.
pub fn random_measured_circuit<R: Rng + ?Sized>(rng: &mut R, num_qubits: usize, num_gates: usize) -> QuantumCircuit {
    let mut gates = random_circuit(rng, num_qubits, num_gates).into_gates();
    gates.extend((0..num_qubits).map(|q| GateApplication::fixed(GateKind::Measure, &[q])));
    QuantumCircuit::new("q", num_qubits, gates).expect("measurements are terminal")
}
