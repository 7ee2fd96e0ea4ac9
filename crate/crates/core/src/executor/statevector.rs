use num_complex::Complex64;

use super::ExecutionError;
use crate::circuit::{gate_matrix, GateApplication, QuantumCircuit};

/// Widest circuit the dense simulator accepts.
pub const SIMULATOR_MAX_QUBITS: usize = 20;

/// Amplitudes indexed by basis state; bit `k` of the index is qubit `k`.
pub type StateVector = Vec<Complex64>;

/// Applies the circuit to |0…0⟩. Measurements are deferred and skipped.
pub fn simulate(c: &QuantumCircuit) -> Result<StateVector, ExecutionError> {
    if c.num_qubits() > SIMULATOR_MAX_QUBITS {
        return Err(ExecutionError::TooWide {
            width: c.num_qubits(),
            max: SIMULATOR_MAX_QUBITS,
        });
    }
    let mut state = vec![Complex64::new(0.0, 0.0); 1usize << c.num_qubits()];
    state[0] = Complex64::new(1.0, 0.0);
    for g in c.gates() {
        apply_gate(&mut state, g);
    }
    Ok(state)
}

/// In-place update of the amplitudes touched by one gate.
pub fn apply_gate(state: &mut [Complex64], g: &GateApplication) {
    let Some(m) = gate_matrix(g) else {
        return;
    };
    let k = g.operands.len();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|local| {
            g.operands
                .iter()
                .enumerate()
                .filter(|(bit, _)| (local >> bit) & 1 == 1)
                .map(|(_, &q)| 1usize << q)
                .sum()
        })
        .collect();
    let mask: usize = g.operands.iter().map(|&q| 1usize << q).sum();
    let mut buf = vec![Complex64::new(0.0, 0.0); offsets.len()];
    for base in 0..state.len() {
        if base & mask != 0 {
            continue;
        }
        for (b, off) in buf.iter_mut().zip(&offsets) {
            *b = state[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, amp) in buf.iter().enumerate() {
                acc += m.get(row, col) * amp;
            }
            state[base | off] = acc;
        }
    }
}

pub fn norm(state: &[Complex64]) -> f64 {
    state.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
