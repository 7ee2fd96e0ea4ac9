//! Built-in circuit generators.
//!
//! An implementation may name a generator instead of fixed circuit text;
//! the generator receives the value of the parameter the implementation's
//! selection rule constrains.

use thiserror::Error;

use crate::circuit::{GateApplication, GateKind, QuantumCircuit};

/// Widest circuit any built-in generator produces.
pub const MAX_GENERATED_QUBITS: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown generator '{0}'")]
    Unknown(String),
    #[error("generator '{generator}' needs a size in 1..={max}, got {size}")]
    SizeOutOfRange { generator: String, size: i64, max: i64 },
}

pub type GeneratorFn = fn(i64) -> Result<QuantumCircuit, GeneratorError>;

pub const GENERATORS: &[(&str, GeneratorFn)] = &[("ghz", ghz)];

pub fn lookup(name: &str) -> Option<GeneratorFn> {
    GENERATORS.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

pub fn generate(name: &str, size: i64) -> Result<QuantumCircuit, GeneratorError> {
    lookup(name).ok_or_else(|| GeneratorError::Unknown(name.to_string()))?(size)
}

/// `n`-qubit GHZ state preparation followed by measurement of every qubit.
pub fn ghz(size: i64) -> Result<QuantumCircuit, GeneratorError> {
    if !(1..=MAX_GENERATED_QUBITS).contains(&size) {
        return Err(GeneratorError::SizeOutOfRange {
            generator: "ghz".into(),
            size,
            max: MAX_GENERATED_QUBITS,
        });
    }
    let n = size as usize;
    let mut gates = vec![GateApplication::fixed(GateKind::H, &[0])];
    gates.extend((1..n).map(|q| GateApplication::fixed(GateKind::Cx, &[q - 1, q])));
    gates.extend((0..n).map(|q| GateApplication::fixed(GateKind::Measure, &[q])));
    Ok(QuantumCircuit::new("q", n, gates).expect("ghz construction is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_shape() {
        let c = ghz(3).unwrap();
        assert_eq!(c.width(), 3);
        // h, cx, cx, then measurements
        assert_eq!(c.depth(), 4);
        assert_eq!(c.measured_qubits(), vec![0, 1, 2]);
        assert!(ghz(0).is_err());
        assert!(ghz(65).is_err());
        assert!(generate("qft", 3).is_err());
    }
}
