//! Analysis from algorithm choice to a recommended
//! (implementation, quantum computer) pair.
//!
//! [`analyze`] filters the algorithm's implementations by their selection
//! rules, transpiles every survivor for every quantum computer sharing its
//! SDK, evaluates executability and plugins, and records one row per
//! pair. [`select`] ranks executable rows by transpiled depth, then width,
//! then tightest fit, then ids.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry::{Implementation, QuantumComputer, Registry};
use crate::rules::{
    executable, filter_implementations, run_plugins, selectable, Conjunct, CriterionPlugin, ExecutabilityFacts,
    InputValues, PluginVerdict, Verdict,
};
use crate::transpiler::{transpile, TranspileError, TranspiledCircuit};

pub const SDK_MISMATCH: &str = "sdk mismatch";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),
    #[error("missing value for parameter '{0}'")]
    MissingParameter(String),
    #[error("algorithm '{algorithm}' has no parameter '{parameter}'")]
    UnknownParameter { algorithm: String, parameter: String },
    #[error("unknown implementation '{0}'")]
    UnknownImplementation(String),
    #[error("unknown quantum computer '{0}'")]
    UnknownQpu(String),
    #[error("{0}")]
    Circuit(String),
    #[error(transparent)]
    Transpile(#[from] TranspileError),
}

/// One (implementation, quantum computer) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub implementation_id: String,
    pub qpu_id: String,
    pub implementation_sdk: String,
    pub qpu_sdks: Vec<String>,
    pub sdk_match: bool,
    /// q1; absent when transpilation was skipped or failed early.
    pub transpiled_width: Option<usize>,
    /// d1; absent when transpilation was skipped or failed.
    pub transpiled_depth: Option<usize>,
    /// q0
    pub qpu_qubits: usize,
    /// d0
    pub qpu_max_depth: usize,
    pub failed_conjuncts: Vec<Conjunct>,
    pub plugin_verdicts: Vec<PluginVerdict>,
    pub executable: bool,
    pub skip_reason: Option<String>,
}

impl ReportRow {
    /// Executability facts, when both width and depth are known.
    pub fn facts(&self) -> Option<ExecutabilityFacts> {
        Some(ExecutabilityFacts {
            provided_qubits: self.qpu_qubits,
            required_qubits: self.transpiled_width?,
            max_depth: self.qpu_max_depth,
            required_depth: self.transpiled_depth?,
            qpu_sdks: self.qpu_sdks.iter().cloned().collect(),
            implementation_sdk: self.implementation_sdk.clone(),
        })
    }

    /// Re-derives the executable flag from the stored facts.
    pub fn rederive_executable(&self) -> bool {
        match self.facts() {
            Some(f) => selectable(executable(&f), &self.plugin_verdicts),
            None => false,
        }
    }

    /// Why the pair cannot run, one clause per problem.
    pub fn explain_failure(&self) -> String {
        let facts = ExecutabilityFacts {
            provided_qubits: self.qpu_qubits,
            required_qubits: self.transpiled_width.unwrap_or(0),
            max_depth: self.qpu_max_depth,
            required_depth: self.transpiled_depth.unwrap_or(0),
            qpu_sdks: self.qpu_sdks.iter().cloned().collect(),
            implementation_sdk: self.implementation_sdk.clone(),
        };
        let mut parts: Vec<String> = self.failed_conjuncts.iter().map(|&c| facts.explain(c)).collect();
        if let Some(reason) = &self.skip_reason {
            if reason != SDK_MISMATCH || parts.is_empty() {
                parts.push(reason.clone());
            }
        }
        for v in &self.plugin_verdicts {
            if v.verdict == Verdict::Fail {
                parts.push(format!("plugin {}: {}", v.name, v.reason));
            }
        }
        parts.join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub algorithm_id: String,
    pub input: InputValues,
    pub rows: Vec<ReportRow>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn row(&self, implementation_id: &str, qpu_id: &str) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.implementation_id == implementation_id && r.qpu_id == qpu_id)
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recommendation {
    pub implementation_id: String,
    pub qpu_id: String,
    pub rationale: String,
}

/// Pretty JSON with object keys sorted at every level.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize to JSON");
    serde_json::to_string_pretty(&v).expect("JSON values render")
}

/// Checks `input` against the algorithm's declared parameters.
pub fn check_input(registry: &Registry, algorithm_id: &str, input: &InputValues) -> Result<(), AnalysisError> {
    let algorithm = registry
        .algorithm(algorithm_id)
        .ok_or_else(|| AnalysisError::UnknownAlgorithm(algorithm_id.to_string()))?;
    for p in algorithm.parameters() {
        if !input.contains_key(&p.name) {
            return Err(AnalysisError::MissingParameter(p.name.clone()));
        }
    }
    if let Some(extra) = input
        .keys()
        .find(|k| algorithm.parameters().iter().all(|p| &p.name != *k))
    {
        return Err(AnalysisError::UnknownParameter {
            algorithm: algorithm_id.to_string(),
            parameter: extra.clone(),
        });
    }
    Ok(())
}

pub fn analyze(registry: &Registry, algorithm_id: &str, input: &InputValues) -> Result<AnalysisReport, AnalysisError> {
    check_input(registry, algorithm_id, input)?;
    let implementations = registry.implementations_of(algorithm_id);
    let filtered = filter_implementations(input, &implementations);
    let qpus: Vec<&QuantumComputer> = registry.qpus().collect();
    let pairs: Vec<(&Implementation, &QuantumComputer)> = filtered
        .retained
        .iter()
        .flat_map(|&i| qpus.iter().map(move |&q| (i, q)))
        .collect();
    let plugins = registry.plugins();

    let mut rows: Vec<ReportRow> = pairs
        .par_iter()
        .map(|&(i, q)| analyze_pair(i, q, input, &plugins))
        .collect();
    rows.sort_by(|a, b| (&a.implementation_id, &a.qpu_id).cmp(&(&b.implementation_id, &b.qpu_id)));

    Ok(AnalysisReport {
        algorithm_id: algorithm_id.to_string(),
        input: input.clone(),
        rows,
        warnings: filtered.warnings,
    })
}

fn analyze_pair(
    implementation: &Implementation,
    qpu: &QuantumComputer,
    input: &InputValues,
    plugins: &[Box<dyn CriterionPlugin>],
) -> ReportRow {
    let mut row = ReportRow {
        implementation_id: implementation.id().to_string(),
        qpu_id: qpu.id().to_string(),
        implementation_sdk: implementation.sdk().to_string(),
        qpu_sdks: qpu.sdks().iter().cloned().collect(),
        sdk_match: qpu.supports_sdk(implementation.sdk()),
        transpiled_width: None,
        transpiled_depth: None,
        qpu_qubits: qpu.num_qubits(),
        qpu_max_depth: qpu.max_depth(),
        failed_conjuncts: Vec::new(),
        plugin_verdicts: Vec::new(),
        executable: false,
        skip_reason: None,
    };
    if !row.sdk_match {
        row.failed_conjuncts.push(Conjunct::Sdk);
        row.skip_reason = Some(SDK_MISMATCH.to_string());
        return row;
    }
    let circuit = match implementation.circuit_for(input) {
        Ok(c) => c,
        Err(e) => {
            row.skip_reason = Some(format!("circuit generation failed: {e}"));
            return row;
        }
    };
    match transpile(&circuit, implementation.id(), qpu) {
        Ok(t) => {
            row.transpiled_width = Some(t.width);
            row.transpiled_depth = Some(t.depth);
            row.plugin_verdicts = run_plugins(plugins, implementation, qpu, &t);
            let facts = row.facts().expect("width and depth are set");
            row.failed_conjuncts = facts.failed_conjuncts();
            row.executable = selectable(executable(&facts), &row.plugin_verdicts);
        }
        Err(TranspileError::WidthExceedsQubits { width, qubits }) => {
            row.transpiled_width = Some(width);
            row.failed_conjuncts.push(Conjunct::Qubits);
            row.skip_reason = Some(format!(
                "transpilation failed: circuit width {width} exceeds {qubits} qubits"
            ));
        }
        Err(e) => {
            row.skip_reason = Some(format!("transpilation failed: {e}"));
        }
    }
    log::debug!(
        "{} on {}: width {:?}, depth {:?}, executable {}",
        row.implementation_id,
        row.qpu_id,
        row.transpiled_width,
        row.transpiled_depth,
        row.executable
    );
    row
}

type RankKey<'a> = (usize, usize, usize, &'a str, &'a str);

fn rank_key(r: &ReportRow) -> RankKey<'_> {
    let width = r.transpiled_width.unwrap_or(usize::MAX);
    (
        r.transpiled_depth.unwrap_or(usize::MAX),
        width,
        r.qpu_qubits.saturating_sub(width),
        &r.implementation_id,
        &r.qpu_id,
    )
}

fn recommend(r: &ReportRow) -> Recommendation {
    Recommendation {
        implementation_id: r.implementation_id.clone(),
        qpu_id: r.qpu_id.clone(),
        rationale: format!(
            "depth {} of {} layers, width {} of {} qubits",
            r.transpiled_depth.unwrap_or(0),
            r.qpu_max_depth,
            r.transpiled_width.unwrap_or(0),
            r.qpu_qubits
        ),
    }
}

/// Best executable row, or `None` when nothing can run.
pub fn select(report: &AnalysisReport) -> Option<Recommendation> {
    report
        .rows
        .iter()
        .filter(|r| r.executable)
        .min_by(|a, b| rank_key(a).cmp(&rank_key(b)))
        .map(recommend)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectionError {
    #[error("no executable pair")]
    NoExecutablePair,
    #[error("no analyzed pair matches implementation {implementation:?} and quantum computer {qpu:?}")]
    NoMatchingPair {
        implementation: Option<String>,
        qpu: Option<String>,
    },
    #[error("{implementation} on {qpu} is not executable: {reason}")]
    NotExecutable {
        implementation: String,
        qpu: String,
        failed: Vec<Conjunct>,
        reason: String,
    },
}

/// Like [`select`], restricted to rows matching the given ids.
///
/// When the restriction leaves rows but none is executable, the error
/// explains the best-ranked candidate's failure.
pub fn select_with(
    report: &AnalysisReport,
    implementation: Option<&str>,
    qpu: Option<&str>,
) -> Result<Recommendation, SelectionError> {
    if implementation.is_none() && qpu.is_none() {
        return select(report).ok_or(SelectionError::NoExecutablePair);
    }
    let candidates: Vec<&ReportRow> = report
        .rows
        .iter()
        .filter(|r| implementation.is_none_or(|i| r.implementation_id == i) && qpu.is_none_or(|q| r.qpu_id == q))
        .collect();
    if let Some(best) = candidates
        .iter()
        .filter(|r| r.executable)
        .min_by(|a, b| rank_key(a).cmp(&rank_key(b)))
    {
        return Ok(recommend(best));
    }
    let Some(row) = candidates.iter().min_by(|a, b| rank_key(a).cmp(&rank_key(b))) else {
        return Err(SelectionError::NoMatchingPair {
            implementation: implementation.map(str::to_string),
            qpu: qpu.map(str::to_string),
        });
    };
    Err(SelectionError::NotExecutable {
        implementation: row.implementation_id.clone(),
        qpu: row.qpu_id.clone(),
        failed: row.failed_conjuncts.clone(),
        reason: row.explain_failure(),
    })
}

/// Transpiles one pair for execution, exactly as [`analyze`] did.
pub fn transpile_pair(
    registry: &Registry,
    implementation_id: &str,
    qpu_id: &str,
    input: &InputValues,
) -> Result<(TranspiledCircuit, String), AnalysisError> {
    let implementation = registry
        .implementation(implementation_id)
        .ok_or_else(|| AnalysisError::UnknownImplementation(implementation_id.to_string()))?;
    let qpu = registry
        .qpu(qpu_id)
        .ok_or_else(|| AnalysisError::UnknownQpu(qpu_id.to_string()))?;
    let circuit = implementation
        .circuit_for(input)
        .map_err(|e| AnalysisError::Circuit(e.to_string()))?;
    let t = transpile(&circuit, implementation.id(), qpu)?;
    Ok((t, implementation.sdk().to_string()))
}

/// Parses `name=value` assignments into input values.
pub fn parse_assignments<S: AsRef<str>>(items: &[S]) -> Result<InputValues, String> {
    let mut out = BTreeMap::new();
    for item in items {
        let item = item.as_ref();
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got '{item}'"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(format!("empty parameter name in '{item}'"));
        }
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| format!("parameter '{name}' needs an integer value, got '{}'", value.trim()))?;
        if out.insert(name.to_string(), value).is_some() {
            return Err(format!("parameter '{name}' given twice"));
        }
    }
    Ok(out)
}
