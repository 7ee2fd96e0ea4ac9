use super::{GateApplication, QuantumCircuit};

/// A circuit grouped into layers of gates on pairwise disjoint qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredCircuit {
    pub layers: Vec<Vec<GateApplication>>,
}

impl LayeredCircuit {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Gates in layer order; within a layer, in source order.
    pub fn flatten(&self) -> impl Iterator<Item = &GateApplication> {
        self.layers.iter().flatten()
    }
}

/// Greedy as-soon-as-possible layering by gate order.
///
/// Each gate goes into the layer right after the last layer that already
/// holds a gate on one of its qubits.
pub fn compute_layers(c: &QuantumCircuit) -> LayeredCircuit {
    let mut next_free = vec![0usize; c.num_qubits()];
    let mut layers: Vec<Vec<GateApplication>> = Vec::new();
    for g in c.gates() {
        let slot = g.operands.iter().map(|&q| next_free[q]).max().unwrap_or(0);
        if slot == layers.len() {
            layers.push(Vec::new());
        }
        layers[slot].push(g.clone());
        for &q in &g.operands {
            next_free[q] = slot + 1;
        }
    }
    LayeredCircuit { layers }
}
