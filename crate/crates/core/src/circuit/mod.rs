//! Gate-based circuit representation.
//!
//! A [`QuantumCircuit`] is an ordered list of [`GateApplication`]s over a
//! single register of indexed qubits. Circuits are validated on
//! construction and immutable afterwards.

mod layers;
mod matrix;
mod parse;
pub mod random;
mod unitary;

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use layers::{compute_layers, LayeredCircuit};
pub use matrix::{gate_matrix, GateMatrix};
pub use parse::{parse_circuit, ParseError, ParseErrorKind};
pub use unitary::{unitary_of, Unitary, UnitaryError, UNITARY_MAX_QUBITS};

/// Tolerance used when comparing angles modulo 2π.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// The fixed gate catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Sx,
    Rx,
    Ry,
    Rz,
    U3,
    Cx,
    Cz,
    Swap,
    Ccx,
    Measure,
}

impl GateKind {
    pub const ALL: [GateKind; 19] = [
        GateKind::I,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Sx,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::U3,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccx,
        GateKind::Measure,
    ];

    /// Lowercase name as used in circuit text.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::I => "id",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Sx => "sx",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::U3 => "u3",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Ccx => "ccx",
            GateKind::Measure => "measure",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap => 2,
            GateKind::Ccx => 3,
            _ => 1,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::U3 => 3,
            _ => 0,
        }
    }

    pub fn is_unitary(self) -> bool {
        self != GateKind::Measure
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown gate '{0}'")]
pub struct UnknownGate(pub String);

impl FromStr for GateKind {
    type Err = UnknownGate;

    /// Case-insensitive; `i` is accepted as an alias of `id`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if lower == "i" {
            return Ok(GateKind::I);
        }
        GateKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == lower)
            .ok_or_else(|| UnknownGate(s.to_string()))
    }
}

impl Serialize for GateKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GateKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("{kind} expects {expected} operand(s), got {got}")]
    WrongArity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("{kind} expects {expected} parameter(s), got {got}")]
    WrongParamCount {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("{kind} has duplicate operand q[{qubit}]")]
    DuplicateOperand { kind: GateKind, qubit: usize },
    #[error("qubit index {index} out of range for register of size {size}")]
    QubitOutOfRange { index: usize, size: usize },
    #[error("gate {kind} acts on q[{qubit}] after it was measured")]
    GateAfterMeasure { kind: GateKind, qubit: usize },
    #[error("non-finite angle in {kind}")]
    NonFiniteAngle { kind: GateKind },
    #[error("invalid circuit name '{0}': must be an identifier")]
    InvalidName(String),
}

/// One gate applied to specific qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    pub kind: GateKind,
    pub operands: Vec<usize>,
    pub params: Vec<f64>,
}

impl GateApplication {
    /// Checks arity, parameter count and operand distinctness.
    pub fn new(kind: GateKind, operands: Vec<usize>, params: Vec<f64>) -> Result<Self, CircuitError> {
        if operands.len() != kind.arity() {
            return Err(CircuitError::WrongArity {
                kind,
                expected: kind.arity(),
                got: operands.len(),
            });
        }
        if params.len() != kind.param_count() {
            return Err(CircuitError::WrongParamCount {
                kind,
                expected: kind.param_count(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(CircuitError::NonFiniteAngle { kind });
        }
        for (i, q) in operands.iter().enumerate() {
            if operands[..i].contains(q) {
                return Err(CircuitError::DuplicateOperand { kind, qubit: *q });
            }
        }
        Ok(Self { kind, operands, params })
    }

    /// Shorthand for parameterless gates; panics on invalid operands.
    pub fn fixed(kind: GateKind, operands: &[usize]) -> Self {
        Self::new(kind, operands.to_vec(), Vec::new()).expect("invalid gate application")
    }

    /// Shorthand for parameterised gates; panics on invalid input.
    pub fn with_params(kind: GateKind, operands: &[usize], params: &[f64]) -> Self {
        Self::new(kind, operands.to_vec(), params.to_vec()).expect("invalid gate application")
    }

    pub fn acts_on(&self, qubit: usize) -> bool {
        self.operands.contains(&qubit)
    }

    /// Equality with angles compared modulo 2π.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.operands == other.operands
            && self.params.len() == other.params.len()
            && self.params.iter().zip(&other.params).all(|(a, b)| angles_equal(*a, *b))
    }
}

impl fmt::Display for GateApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| format!("{p:?}")).collect();
            write!(f, "({})", ps.join(","))?;
        }
        let ops: Vec<String> = self.operands.iter().map(|q| format!("q[{q}]")).collect();
        write!(f, " {}", ops.join(","))
    }
}

/// Angles equal modulo 2π within [`ANGLE_TOLERANCE`].
pub fn angles_equal(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TAU);
    d < ANGLE_TOLERANCE || TAU - d < ANGLE_TOLERANCE
}

/// An ordered gate list over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCircuit {
    name: String,
    num_qubits: usize,
    gates: Vec<GateApplication>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl QuantumCircuit {
    pub fn new(name: impl Into<String>, num_qubits: usize, gates: Vec<GateApplication>) -> Result<Self, CircuitError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(CircuitError::InvalidName(name));
        }
        let mut measured = HashSet::new();
        for g in &gates {
            // Re-check what GateApplication::new guarantees; fields are public.
            let g = GateApplication::new(g.kind, g.operands.clone(), g.params.clone())?;
            for &q in &g.operands {
                if q >= num_qubits {
                    return Err(CircuitError::QubitOutOfRange {
                        index: q,
                        size: num_qubits,
                    });
                }
            }
            if g.kind == GateKind::Measure {
                measured.insert(g.operands[0]);
            } else if let Some(&q) = g.operands.iter().find(|q| measured.contains(*q)) {
                return Err(CircuitError::GateAfterMeasure { kind: g.kind, qubit: q });
            }
        }
        Ok(Self {
            name,
            num_qubits,
            gates,
        })
    }

    pub fn empty(name: impl Into<String>, num_qubits: usize) -> Result<Self, CircuitError> {
        Self::new(name, num_qubits, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<GateApplication> {
        self.gates
    }

    /// Number of qubits (the circuit width).
    pub fn width(&self) -> usize {
        self.num_qubits
    }

    /// Number of ASAP layers; measurements count like 1-qubit gates.
    pub fn depth(&self) -> usize {
        compute_layers(self).depth()
    }

    pub fn has_measurements(&self) -> bool {
        self.gates.iter().any(|g| g.kind == GateKind::Measure)
    }

    /// Measured qubits in order of first measurement.
    pub fn measured_qubits(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for g in &self.gates {
            if g.kind == GateKind::Measure && !out.contains(&g.operands[0]) {
                out.push(g.operands[0]);
            }
        }
        out
    }

    /// Gates appended to this circuit; the result is validated again.
    pub fn append(&self, more: &QuantumCircuit) -> Result<Self, CircuitError> {
        let n = self.num_qubits.max(more.num_qubits);
        let mut gates = self.gates.clone();
        gates.extend(more.gates.iter().cloned());
        Self::new(self.name.clone(), n, gates)
    }

    /// Canonical text rendering; [`parse_circuit`] reads it back unchanged.
    pub fn render(&self) -> String {
        let mut out = format!("qreg {}[{}];\n", self.name, self.num_qubits);
        for g in &self.gates {
            let ops: Vec<String> = g.operands.iter().map(|q| format!("{}[{q}]", self.name)).collect();
            out.push_str(g.kind.name());
            if !g.params.is_empty() {
                let ps: Vec<String> = g.params.iter().map(|p| format!("{p:?}")).collect();
                out.push_str(&format!("({})", ps.join(",")));
            }
            out.push(' ');
            out.push_str(&ops.join(","));
            out.push_str(";\n");
        }
        out
    }

    /// Same width and gate list, angles compared modulo 2π.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits
            && self.gates.len() == other.gates.len()
            && self.gates.iter().zip(&other.gates).all(|(a, b)| a.approx_eq(b))
    }
}

impl fmt::Display for QuantumCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
