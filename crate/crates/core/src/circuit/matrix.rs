use num_complex::Complex64;

use super::{GateApplication, GateKind};

/// Dense row-major matrix of a gate in its local basis.
///
/// Operand `k` of the application is bit `k` of the local index, so for
/// `cx q[c],q[t]` the control is the least-significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl GateMatrix {
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self { dim, data }
    }

    fn permutation(dim: usize, image: impl Fn(usize) -> usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for col in 0..dim {
            data[image(col) * dim + col] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    fn diagonal(entries: &[Complex64]) -> Self {
        let dim = entries.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, e) in entries.iter().enumerate() {
            data[i * dim + i] = *e;
        }
        Self { dim, data }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix of a unitary gate application; `None` for `measure`.
pub fn gate_matrix(g: &GateApplication) -> Option<GateMatrix> {
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let m = match g.kind {
        GateKind::Measure => return None,
        GateKind::I => GateMatrix::diagonal(&[one, one]),
        GateKind::X => GateMatrix::from_rows(&[&[zero, one], &[one, zero]]),
        GateKind::Y => GateMatrix::from_rows(&[&[zero, c(0.0, -1.0)], &[c(0.0, 1.0), zero]]),
        GateKind::Z => GateMatrix::diagonal(&[one, -one]),
        GateKind::H => GateMatrix::from_rows(&[&[c(s2, 0.0), c(s2, 0.0)], &[c(s2, 0.0), c(-s2, 0.0)]]),
        GateKind::S => GateMatrix::diagonal(&[one, c(0.0, 1.0)]),
        GateKind::Sdg => GateMatrix::diagonal(&[one, c(0.0, -1.0)]),
        GateKind::T => GateMatrix::diagonal(&[one, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
        GateKind::Tdg => GateMatrix::diagonal(&[one, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]),
        GateKind::Sx => GateMatrix::from_rows(&[&[c(0.5, 0.5), c(0.5, -0.5)], &[c(0.5, -0.5), c(0.5, 0.5)]]),
        GateKind::Rx => {
            let (s, co) = (g.params[0] / 2.0).sin_cos();
            GateMatrix::from_rows(&[&[c(co, 0.0), c(0.0, -s)], &[c(0.0, -s), c(co, 0.0)]])
        }
        GateKind::Ry => {
            let (s, co) = (g.params[0] / 2.0).sin_cos();
            GateMatrix::from_rows(&[&[c(co, 0.0), c(-s, 0.0)], &[c(s, 0.0), c(co, 0.0)]])
        }
        GateKind::Rz => {
            let half = g.params[0] / 2.0;
            GateMatrix::diagonal(&[Complex64::from_polar(1.0, -half), Complex64::from_polar(1.0, half)])
        }
        GateKind::U3 => {
            let (theta, phi, lambda) = (g.params[0], g.params[1], g.params[2]);
            let (s, co) = (theta / 2.0).sin_cos();
            GateMatrix::from_rows(&[
                &[c(co, 0.0), -Complex64::from_polar(s, lambda)],
                &[Complex64::from_polar(s, phi), Complex64::from_polar(co, phi + lambda)],
            ])
        }
        // bit0 = control, bit1 = target
        GateKind::Cx => GateMatrix::permutation(4, |i| if i & 1 == 1 { i ^ 2 } else { i }),
        GateKind::Cz => GateMatrix::diagonal(&[one, one, one, -one]),
        GateKind::Swap => GateMatrix::permutation(4, |i| ((i & 1) << 1) | ((i >> 1) & 1)),
        // bits 0,1 = controls, bit2 = target
        GateKind::Ccx => GateMatrix::permutation(8, |i| if i & 3 == 3 { i ^ 4 } else { i }),
    };
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(m: &GateMatrix) -> bool {
        let n = m.dim;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += m.get(i, k) * m.get(j, k).conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                if (acc - Complex64::new(expect, 0.0)).norm() > 1e-12 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn every_catalog_gate_is_unitary() {
        for kind in GateKind::ALL {
            if kind == GateKind::Measure {
                continue;
            }
            let operands: Vec<usize> = (0..kind.arity()).collect();
            let params: Vec<f64> = (0..kind.param_count()).map(|i| 0.3 + i as f64).collect();
            let g = GateApplication::new(kind, operands, params).unwrap();
            assert!(is_unitary(&gate_matrix(&g).unwrap()), "{kind}");
        }
    }

    #[test]
    fn sx_squares_to_x() {
        let m = gate_matrix(&GateApplication::fixed(GateKind::Sx, &[0])).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += m.get(i, k) * m.get(k, j);
                }
                let expect = if i != j { 1.0 } else { 0.0 };
                assert!((acc - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }
}
