use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{unitary_of, QuantumCircuit, UnitaryError};

use super::Layout;

/// Entry-wise tolerance after global-phase alignment.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error(transparent)]
    Unitary(#[from] UnitaryError),
    #[error("layout covers {layout} qubits but the compared circuit has {width}")]
    LayoutSize { layout: usize, width: usize },
    #[error("reference circuit is wider ({reference}) than the compared circuit ({width})")]
    ReferenceWider { reference: usize, width: usize },
}

/// Whether `b` implements `a` followed by the qubit permutation `layout`
/// (logical qubit `l` ends on qubit `layout[l]`), up to global phase.
///
/// `a` may be narrower than `b`; its missing qubits are idle wires.
pub fn circuits_equivalent(a: &QuantumCircuit, b: &QuantumCircuit, layout: &Layout) -> Result<bool, EquivalenceError> {
    let width = b.num_qubits();
    if layout.len() != width {
        return Err(EquivalenceError::LayoutSize {
            layout: layout.len(),
            width,
        });
    }
    if a.num_qubits() > width {
        return Err(EquivalenceError::ReferenceWider {
            reference: a.num_qubits(),
            width,
        });
    }
    let padded = QuantumCircuit::new(a.name(), width, a.gates().to_vec()).expect("widening keeps validity");
    let ua = unitary_of(&padded)?;
    let ub = unitary_of(b)?;
    let dim = ua.dim;

    let permute = |r: usize| -> usize {
        (0..width)
            .filter(|&l| (r >> l) & 1 == 1)
            .map(|l| 1usize << layout.physical(l))
            .sum()
    };
    // expected[permute(r)][c] = ua[r][c]
    let mut expected = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        let pr = permute(r);
        expected[pr * dim..(pr + 1) * dim].copy_from_slice(&ua.data[r * dim..(r + 1) * dim]);
    }

    let (pivot, _) = expected.iter().enumerate().fold(
        (0, -1.0),
        |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best },
    );
    if ub.data[pivot].norm() < 1e-12 {
        return Ok(false);
    }
    let ratio = ub.data[pivot] / expected[pivot];
    let phase = ratio / ratio.norm();
    let max_diff = expected
        .iter()
        .zip(&ub.data)
        .map(|(e, b)| (b - phase * e).norm())
        .fold(0.0, f64::max);
    Ok(max_diff <= EQUIVALENCE_TOLERANCE)
}
