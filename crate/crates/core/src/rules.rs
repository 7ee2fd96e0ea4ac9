//! Selection rules.
//!
//! Two predicates drive the analysis:
//!
//! * **processable**: an implementation accepts input `n` iff
//!   `min <= n <= max` for the interval attached to the implementation.
//! * **executable**: a quantum computer runs an implementation iff it
//!   provides at least the required qubits, its depth budget covers the
//!   transpiled depth, and it supports the implementation's SDK.
//!
//! Further criteria plug in through [`CriterionPlugin`]; a pair is
//! selectable only if it is executable and no plugin fails it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry::{Implementation, QuantumComputer};
use crate::transpiler::TranspiledCircuit;

/// Named integer inputs, e.g. `n = 9`.
pub type InputValues = BTreeMap<String, i64>;

/// Inclusive input interval for one named parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionRule {
    pub parameter: String,
    pub min: i64,
    pub max: i64,
}

impl SelectionRule {
    pub fn new(parameter: impl Into<String>, min: i64, max: i64) -> Self {
        Self {
            parameter: parameter.into(),
            min,
            max,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.min <= self.max
    }
}

/// `n` is neither smaller than the lower bound nor greater than the upper.
pub fn processable(n: i64, rule: &SelectionRule) -> bool {
    n >= rule.min && n <= rule.max
}

/// Everything needed to decide executability of one (implementation, QPU) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutabilityFacts {
    /// Qubits provided by the quantum computer.
    pub provided_qubits: usize,
    /// Width of the transpiled implementation.
    pub required_qubits: usize,
    /// Maximum depth the quantum computer can execute.
    pub max_depth: usize,
    /// Depth of the transpiled implementation.
    pub required_depth: usize,
    pub qpu_sdks: BTreeSet<String>,
    pub implementation_sdk: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Conjunct {
    Qubits,
    Depth,
    Sdk,
}

impl fmt::Display for Conjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjunct::Qubits => "Qubits",
            Conjunct::Depth => "Depth",
            Conjunct::Sdk => "Sdk",
        })
    }
}

impl ExecutabilityFacts {
    /// The conjuncts that do not hold, in fixed order.
    pub fn failed_conjuncts(&self) -> Vec<Conjunct> {
        let mut out = Vec::new();
        if self.provided_qubits < self.required_qubits {
            out.push(Conjunct::Qubits);
        }
        if self.max_depth < self.required_depth {
            out.push(Conjunct::Depth);
        }
        if !self.qpu_sdks.contains(&self.implementation_sdk) {
            out.push(Conjunct::Sdk);
        }
        out
    }

    /// Human-readable account of one failed conjunct.
    pub fn explain(&self, conjunct: Conjunct) -> String {
        match conjunct {
            Conjunct::Qubits => format!(
                "Qubits: quantum computer provides {} qubits, circuit needs {}",
                self.provided_qubits, self.required_qubits
            ),
            Conjunct::Depth => format!(
                "Depth: quantum computer supports depth {}, circuit needs {}",
                self.max_depth, self.required_depth
            ),
            Conjunct::Sdk => {
                let sdks: Vec<&str> = self.qpu_sdks.iter().map(String::as_str).collect();
                format!(
                    "Sdk: implementation uses '{}', quantum computer supports [{}]",
                    self.implementation_sdk,
                    sdks.join(", ")
                )
            }
        }
    }
}

/// Qubits, depth and SDK conjuncts all hold.
pub fn executable(f: &ExecutabilityFacts) -> bool {
    f.provided_qubits >= f.required_qubits
        && f.max_depth >= f.required_depth
        && f.qpu_sdks.contains(&f.implementation_sdk)
}

/// Anything carrying an optional selection rule.
pub trait RuleCarrier {
    fn id(&self) -> &str;
    fn selection_rule(&self) -> Option<&SelectionRule>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Filtered<'a, T> {
    pub retained: Vec<&'a T>,
    pub warnings: Vec<String>,
}

/// Keeps the implementations whose rule accepts the input, in input order.
///
/// Implementations without a rule, or whose rule names a parameter absent
/// from `input`, are dropped with a warning.
pub fn filter_implementations<'a, T: RuleCarrier>(input: &InputValues, impls: &'a [T]) -> Filtered<'a, T> {
    let mut retained = Vec::new();
    let mut warnings = Vec::new();
    for imp in impls {
        let Some(rule) = imp.selection_rule() else {
            warnings.push(format!("implementation '{}' has no selection rule; excluded", imp.id()));
            continue;
        };
        let Some(&n) = input.get(&rule.parameter) else {
            warnings.push(format!(
                "implementation '{}' constrains parameter '{}' which was not supplied; excluded",
                imp.id(),
                rule.parameter
            ));
            continue;
        };
        if processable(n, rule) {
            retained.push(imp);
        }
    }
    Filtered { retained, warnings }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub verdict: Verdict,
    pub reason: String,
}

impl Assessment {
    pub fn pass(reason: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::Pass,
            reason: reason.into(),
        }
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::Fail,
            reason: reason.into(),
        }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::NotApplicable,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct PluginError(pub String);

/// An additional selection criterion. Evaluation must be pure.
pub trait CriterionPlugin: Send + Sync {
    fn name(&self) -> &str;

    fn evaluate(
        &self,
        implementation: &Implementation,
        qpu: &QuantumComputer,
        transpiled: &TranspiledCircuit,
    ) -> Result<Assessment, PluginError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluginVerdict {
    pub name: String,
    pub verdict: Verdict,
    pub reason: String,
}

/// Runs every plugin in registration order. Errors and panics become
/// `fail` verdicts carrying the error text.
pub fn run_plugins(
    plugins: &[Box<dyn CriterionPlugin>],
    implementation: &Implementation,
    qpu: &QuantumComputer,
    transpiled: &TranspiledCircuit,
) -> Vec<PluginVerdict> {
    plugins
        .iter()
        .map(|p| {
            let outcome = catch_unwind(AssertUnwindSafe(|| p.evaluate(implementation, qpu, transpiled)));
            let assessment = match outcome {
                Ok(Ok(a)) => a,
                Ok(Err(e)) => Assessment::fail(format!("plugin error: {e}")),
                Err(panic) => {
                    let msg = panic
                        .downcast_ref::<&str>()
                        .map(|s| s.to_string())
                        .or_else(|| panic.downcast_ref::<String>().cloned())
                        .unwrap_or_else(|| "unknown panic".into());
                    Assessment::fail(format!("plugin panicked: {msg}"))
                }
            };
            PluginVerdict {
                name: p.name().to_string(),
                verdict: assessment.verdict,
                reason: assessment.reason,
            }
        })
        .collect()
}

/// Executable and not vetoed by any plugin.
pub fn selectable(executable: bool, verdicts: &[PluginVerdict]) -> bool {
    executable && verdicts.iter().all(|v| v.verdict != Verdict::Fail)
}

/// Fails transpiled circuits with more gates than `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxGateCount {
    pub limit: usize,
}

impl CriterionPlugin for MaxGateCount {
    fn name(&self) -> &str {
        "max-gate-count"
    }

    fn evaluate(
        &self,
        _implementation: &Implementation,
        _qpu: &QuantumComputer,
        transpiled: &TranspiledCircuit,
    ) -> Result<Assessment, PluginError> {
        let count = transpiled.gate_count();
        Ok(if count <= self.limit {
            Assessment::pass(format!("{count} gates within limit {}", self.limit))
        } else {
            Assessment::fail(format!("{count} gates exceed limit {}", self.limit))
        })
    }
}

/// Declarative plugin configuration, as listed in a registry's
/// `criteria.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CriterionSpec {
    MaxGateCount { limit: usize },
}

impl CriterionSpec {
    pub fn build(&self) -> Box<dyn CriterionPlugin> {
        match self {
            CriterionSpec::MaxGateCount { limit } => Box::new(MaxGateCount { limit: *limit }),
        }
    }
}
