use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{GateApplication, GateKind, QuantumCircuit};

use super::{CouplingMap, TranspileError};

/// Final position of every wire: entry `l` is the physical qubit that
/// holds logical qubit `l` at the end of the circuit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Layout(Vec<usize>);

impl Layout {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Fails unless `map` is a permutation of `0..map.len()`.
    pub fn from_vec(map: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; map.len()];
        for &p in &map {
            if p >= map.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(Self(map))
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.0[logical]
    }

    pub fn logical(&self, physical: usize) -> usize {
        self.0
            .iter()
            .position(|&p| p == physical)
            .expect("layout is a permutation")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(l, &p)| l == p)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(l, p)| format!("{l}->{p}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Greedy SWAP insertion onto `map`.
///
/// Starts from the identity layout. A 2-qubit gate on uncoupled qubits is
/// preceded by SWAPs walking its first operand along the shortest path
/// towards the second until they are adjacent. Routing stays inside the
/// physical qubits `0..width` whenever those are connected among
/// themselves, so the circuit keeps its width; otherwise the whole device
/// is used and the width grows to the highest physical qubit touched.
///
/// Measurements are terminal per qubit and are emitted after all other
/// gates, on the final physical position of the measured qubit.
pub fn route(c: &QuantumCircuit, map: &CouplingMap) -> Result<(QuantumCircuit, Layout), TranspileError> {
    let width = c.num_qubits();
    let physical = map.num_physical_qubits();
    if width > physical {
        return Err(TranspileError::WidthExceedsQubits {
            width,
            qubits: physical,
        });
    }
    let limit = if map.prefix_connected(width) { width } else { physical };
    let mut to_physical: Vec<usize> = (0..limit).collect();
    let mut to_logical: Vec<usize> = (0..limit).collect();
    let mut out = Vec::with_capacity(c.gates().len());
    let mut measures = Vec::new();
    let mut extent = width;

    for g in c.gates() {
        if g.kind == GateKind::Measure {
            measures.push(g.operands[0]);
            continue;
        }
        match g.kind.arity() {
            1 => out.push(GateApplication {
                operands: vec![to_physical[g.operands[0]]],
                ..g.clone()
            }),
            2 => {
                let (a, b) = (g.operands[0], g.operands[1]);
                let (pa, pb) = (to_physical[a], to_physical[b]);
                if !map.is_edge(pa, pb) {
                    let path = map
                        .shortest_path(pa, pb, limit)
                        .ok_or(TranspileError::NoPath { from: pa, to: pb })?;
                    for hop in path.windows(2).take(path.len() - 2) {
                        let (p, q) = (hop[0], hop[1]);
                        out.push(GateApplication::fixed(GateKind::Swap, &[p, q]));
                        extent = extent.max(p + 1).max(q + 1);
                        let (lp, lq) = (to_logical[p], to_logical[q]);
                        to_logical.swap(p, q);
                        to_physical[lp] = q;
                        to_physical[lq] = p;
                    }
                }
                out.push(GateApplication {
                    operands: vec![to_physical[a], to_physical[b]],
                    ..g.clone()
                });
            }
            _ => return Err(TranspileError::GateTooWide { kind: g.kind }),
        }
    }
    for l in measures {
        out.push(GateApplication::fixed(GateKind::Measure, &[to_physical[l]]));
    }
    to_physical.truncate(extent);
    let routed = QuantumCircuit::new(c.name(), extent, out)?;
    let layout = Layout::from_vec(to_physical).expect("untouched wires stay in place");
    Ok((routed, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn nonadjacent_cx_on_a_line() {
        let c = parse_circuit("qreg q[3]; cx q[0],q[2];").unwrap();
        let (r, layout) = route(&c, &CouplingMap::linear(3)).unwrap();
        assert_eq!(
            r.gates(),
            &[
                GateApplication::fixed(GateKind::Swap, &[0, 1]),
                GateApplication::fixed(GateKind::Cx, &[1, 2]),
            ]
        );
        assert_eq!(layout.as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn compliant_circuit_is_untouched() {
        let c = parse_circuit("qreg q[3]; h q[0]; cx q[0],q[1]; cx q[2],q[1]; measure q[2];").unwrap();
        let (r, layout) = route(&c, &CouplingMap::linear(5)).unwrap();
        assert_eq!(r, c);
        assert!(layout.is_identity());
    }

    #[test]
    fn measurements_follow_their_qubit() {
        let c = parse_circuit("qreg q[3]; cx q[0],q[2]; measure q[0]; measure q[2];").unwrap();
        let (r, layout) = route(&c, &CouplingMap::linear(3)).unwrap();
        let tail: Vec<_> = r.gates().iter().rev().take(2).rev().cloned().collect();
        assert_eq!(
            tail,
            vec![
                GateApplication::fixed(GateKind::Measure, &[layout.physical(0)]),
                GateApplication::fixed(GateKind::Measure, &[layout.physical(2)]),
            ]
        );
    }

    #[test]
    fn falls_back_to_whole_device_when_prefix_is_split() {
        let map = CouplingMap::new(3, &[(0, 2), (1, 2)]).unwrap();
        let c = parse_circuit("qreg q[2]; cx q[0],q[1];").unwrap();
        let (r, layout) = route(&c, &map).unwrap();
        assert_eq!(r.num_qubits(), 3);
        assert_eq!(layout.len(), 3);
        for g in r.gates() {
            assert!(map.is_edge(g.operands[0], g.operands[1]));
        }
    }

    #[test]
    fn too_wide() {
        let c = QuantumCircuit::empty("q", 6).unwrap();
        assert_eq!(
            route(&c, &CouplingMap::linear(5)).unwrap_err(),
            TranspileError::WidthExceedsQubits { width: 6, qubits: 5 }
        );
    }

    #[test]
    fn layout_validation() {
        assert!(Layout::from_vec(vec![1, 0, 2]).is_some());
        assert!(Layout::from_vec(vec![1, 1]).is_none());
        assert!(Layout::from_vec(vec![0, 2]).is_none());
        assert_eq!(Layout::from_vec(vec![2, 0, 1]).unwrap().logical(0), 1);
    }
}
