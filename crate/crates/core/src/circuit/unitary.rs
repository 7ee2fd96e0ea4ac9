use num_complex::Complex64;
use thiserror::Error;

use super::{gate_matrix, QuantumCircuit};

/// Largest width accepted by [`unitary_of`].
pub const UNITARY_MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitaryError {
    #[error("circuit contains measurements; no unitary")]
    ContainsMeasure,
    #[error("circuit width {width} exceeds the unitary oracle limit of {max} qubits")]
    TooWide { width: usize, max: usize },
}

/// Dense square complex matrix, row-major. Basis index bit `k` is qubit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    /// Whether `U·U†` is the identity within `tol` (max entry deviation).
    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(i, k) * self.get(j, k).conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                if (acc - Complex64::new(expect, 0.0)).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Full unitary of a measurement-free circuit, gates applied in order.
///
/// Each gate is embedded at its operand positions and left-multiplied
/// onto the running product.
pub fn unitary_of(c: &QuantumCircuit) -> Result<Unitary, UnitaryError> {
    if c.has_measurements() {
        return Err(UnitaryError::ContainsMeasure);
    }
    if c.num_qubits() > UNITARY_MAX_QUBITS {
        return Err(UnitaryError::TooWide {
            width: c.num_qubits(),
            max: UNITARY_MAX_QUBITS,
        });
    }
    let dim = 1usize << c.num_qubits();
    let mut u = Unitary::identity(dim);
    let mut next = vec![Complex64::new(0.0, 0.0); dim * dim];
    for g in c.gates() {
        let m = gate_matrix(g).expect("measurements rejected above");
        let mask: usize = g.operands.iter().map(|&q| 1usize << q).sum();
        for row in 0..dim {
            let local_row = local_index(row, &g.operands);
            let out = &mut next[row * dim..(row + 1) * dim];
            out.fill(Complex64::new(0.0, 0.0));
            for local_col in 0..m.dim {
                let coeff = m.get(local_row, local_col);
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let k = (row & !mask) | global_bits(local_col, &g.operands);
                let src = &u.data[k * dim..(k + 1) * dim];
                for (o, s) in out.iter_mut().zip(src) {
                    *o += coeff * s;
                }
            }
        }
        std::mem::swap(&mut u.data, &mut next);
    }
    Ok(u)
}

fn local_index(global: usize, operands: &[usize]) -> usize {
    operands
        .iter()
        .enumerate()
        .map(|(k, &q)| ((global >> q) & 1) << k)
        .sum()
}

fn global_bits(local: usize, operands: &[usize]) -> usize {
    operands.iter().enumerate().map(|(k, &q)| ((local >> k) & 1) << q).sum()
}
