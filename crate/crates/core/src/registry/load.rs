use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use super::documents::*;
use super::{generator, Algorithm, CircuitSource, Implementation, QuantumComputer, Registry, Sdk};
use crate::circuit::parse_circuit;
use crate::rules::CriterionSpec;
use crate::transpiler::{CouplingMap, GateSetDocument, NativeGateSet};

/// One problem found while loading a registry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    /// Path relative to the registry root, `/`-separated.
    pub path: String,
    /// Offending field; empty when the whole document is at fault.
    pub field: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}: {}", self.path, self.message)
        } else {
            write!(f, "{}: {}: {}", self.path, self.field, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("registry at {} failed to load with {} problem(s):\n{}", .root.display(), .diagnostics.len(), render(.diagnostics))]
pub struct RegistryError {
    pub root: PathBuf,
    pub diagnostics: Vec<Diagnostic>,
}

fn render(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

/// Loads and cross-checks every document under `root`.
pub fn load_registry(root: impl AsRef<Path>) -> Result<Registry, RegistryError> {
    let root = root.as_ref();
    let (registry, diagnostics) = Loader::new(root).run();
    match registry {
        Some(r) if diagnostics.is_empty() => Ok(r),
        _ => Err(RegistryError {
            root: root.to_path_buf(),
            diagnostics,
        }),
    }
}

/// All problems [`load_registry`] would report; empty iff it succeeds.
pub fn validate(root: impl AsRef<Path>) -> Vec<Diagnostic> {
    Loader::new(root.as_ref()).run().1
}

const REQUIRED_DIRS: [&str; 4] = ["algorithms", "implementations", "qpus", "sdks"];

struct Loader<'a> {
    root: &'a Path,
    diagnostics: Vec<Diagnostic>,
}

struct Entry<T> {
    path: String,
    doc: T,
}

impl<'a> Loader<'a> {
    fn new(root: &'a Path) -> Self {
        Self {
            root,
            diagnostics: Vec::new(),
        }
    }

    fn report(&mut self, path: &str, field: &str, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            path: path.to_string(),
            field: field.to_string(),
            message: message.into(),
        });
    }

    fn run(mut self) -> (Option<Registry>, Vec<Diagnostic>) {
        if !self.root.is_dir() {
            self.report(&self.root.display().to_string(), "", "registry root is not a directory");
            return (None, self.diagnostics);
        }
        for dir in REQUIRED_DIRS {
            if !self.root.join(dir).is_dir() {
                self.report(dir, "", "missing directory");
            }
        }

        let sdk_docs: Vec<Entry<SdkDocument>> = self.read_dir("sdks");
        let gate_set_docs: Vec<Entry<GateSetDocument>> = self.read_dir("gatesets");
        let algorithm_docs: Vec<Entry<AlgorithmDocument>> = self.read_dir("algorithms");
        let qpu_docs: Vec<Entry<QpuDocument>> = self.read_dir("qpus");
        let implementation_docs: Vec<Entry<ImplementationDocument>> = self.read_dir("implementations");
        let criteria = self.read_criteria();

        let sdk_docs = self.dedupe("sdk", sdk_docs, |d| &d.id);
        let gate_set_docs = self.dedupe("gate set", gate_set_docs, |d| &d.name);
        let algorithm_docs = self.dedupe("algorithm", algorithm_docs, |d| &d.id);
        let qpu_docs = self.dedupe("qpu", qpu_docs, |d| &d.id);
        let implementation_docs = self.dedupe("implementation", implementation_docs, |d| &d.id);

        let mut sdks = BTreeMap::new();
        for e in sdk_docs {
            if e.doc.id.trim().is_empty() {
                self.report(&e.path, "id", "must not be empty");
                continue;
            }
            sdks.insert(e.doc.id.clone(), Sdk { doc: e.doc });
        }

        let mut gate_sets = BTreeMap::new();
        for e in gate_set_docs {
            match NativeGateSet::from_document(&e.doc) {
                Ok(gs) => {
                    gate_sets.insert(e.doc.name.clone(), Arc::new(gs));
                }
                Err(issues) => {
                    for issue in issues {
                        self.report(&e.path, &issue.field, issue.message);
                    }
                }
            }
        }

        let mut algorithms = BTreeMap::new();
        for e in algorithm_docs {
            if let Some(a) = self.algorithm(e) {
                algorithms.insert(a.id().to_string(), a);
            }
        }

        let mut qpus = BTreeMap::new();
        for e in qpu_docs {
            if let Some(q) = self.qpu(e, &gate_sets, &sdks) {
                qpus.insert(q.id().to_string(), q);
            }
        }

        let mut implementations = BTreeMap::new();
        for e in implementation_docs {
            if let Some(i) = self.implementation(e, &algorithms, &sdks) {
                implementations.insert(i.id().to_string(), i);
            }
        }

        let registry = Registry {
            algorithms,
            implementations,
            qpus,
            sdks,
            gate_sets,
            criteria,
        };
        if self.diagnostics.is_empty() {
            (Some(registry), self.diagnostics)
        } else {
            (None, self.diagnostics)
        }
    }

    /// Parses every `*.json` file in `dir`, in file-name order.
    fn read_dir<T: DeserializeOwned>(&mut self, dir: &str) -> Vec<Entry<T>> {
        let full = self.root.join(dir);
        let Ok(listing) = fs::read_dir(&full) else {
            return Vec::new();
        };
        let mut files: Vec<PathBuf> = listing
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for file in files {
            let name = file
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let path = format!("{dir}/{name}");
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    self.report(&path, "", format!("cannot read: {e}"));
                    continue;
                }
            };
            match serde_json::from_str(&text) {
                Ok(doc) => out.push(Entry { path, doc }),
                Err(e) => self.report(&path, "", format!("invalid document: {e}")),
            }
        }
        out
    }

    fn read_criteria(&mut self) -> Vec<CriterionSpec> {
        let file = self.root.join("criteria.json");
        if !file.is_file() {
            return Vec::new();
        }
        let parsed = fs::read_to_string(&file)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str::<Vec<CriterionSpec>>(&t).map_err(|e| e.to_string()));
        match parsed {
            Ok(c) => c,
            Err(e) => {
                self.report("criteria.json", "", format!("invalid document: {e}"));
                Vec::new()
            }
        }
    }

    /// Keeps the first document per key; later ones are reported.
    fn dedupe<T>(&mut self, kind: &str, entries: Vec<Entry<T>>, key: impl Fn(&T) -> &String) -> Vec<Entry<T>> {
        let mut first: BTreeMap<String, String> = BTreeMap::new();
        let mut out = Vec::new();
        for e in entries {
            let k = key(&e.doc).clone();
            if let Some(prev) = first.get(&k) {
                let msg = format!("duplicate {kind} id '{k}' (first defined in {prev})");
                self.report(&e.path, if kind == "gate set" { "name" } else { "id" }, msg);
                continue;
            }
            first.insert(k, e.path.clone());
            out.push(e);
        }
        out
    }

    fn algorithm(&mut self, e: Entry<AlgorithmDocument>) -> Option<Algorithm> {
        let before = self.diagnostics.len();
        if e.doc.id.trim().is_empty() {
            self.report(&e.path, "id", "must not be empty");
        }
        if e.doc.parameters.is_empty() && !e.doc.parameterless {
            self.report(
                &e.path,
                "parameters",
                "needs at least one parameter or \"parameterless\": true",
            );
        }
        let mut names = BTreeSet::new();
        for (i, p) in e.doc.parameters.iter().enumerate() {
            if !crate::circuit::is_identifier(&p.name) {
                self.report(
                    &e.path,
                    &format!("parameters[{i}].name"),
                    format!("'{}' is not an identifier", p.name),
                );
            }
            if !names.insert(p.name.as_str()) {
                self.report(
                    &e.path,
                    &format!("parameters[{i}].name"),
                    format!("duplicate parameter '{}'", p.name),
                );
            }
        }
        (self.diagnostics.len() == before).then_some(Algorithm { doc: e.doc })
    }

    fn qpu(
        &mut self,
        e: Entry<QpuDocument>,
        gate_sets: &BTreeMap<String, Arc<NativeGateSet>>,
        sdks: &BTreeMap<String, Sdk>,
    ) -> Option<QuantumComputer> {
        let before = self.diagnostics.len();
        let d = &e.doc;
        if d.id.trim().is_empty() {
            self.report(&e.path, "id", "must not be empty");
        }
        let gate_set = gate_sets.get(&d.gateset).cloned();
        if gate_set.is_none() {
            self.report(&e.path, "gateset", format!("unknown gate set '{}'", d.gateset));
        }
        if d.qubits == 0 {
            self.report(&e.path, "qubits", "must be at least 1");
        } else {
            let edges: Vec<(usize, usize)> = d.coupling.edges.iter().map(|e| (e[0], e[1])).collect();
            if let Err(err) = CouplingMap::new(d.qubits, &edges) {
                self.report(&e.path, "coupling", err.to_string());
            }
        }
        if !(d.decoherence_us.is_finite() && d.decoherence_us > 0.0) {
            self.report(&e.path, "decoherence_us", "must be a positive number");
        }
        if !(d.layer_time_us.is_finite() && d.layer_time_us > 0.0) {
            self.report(&e.path, "layer_time_us", "must be a positive number");
        }
        if d.sdks.is_empty() {
            self.report(&e.path, "sdks", "must not be empty");
        }
        for s in &d.sdks {
            if !sdks.contains_key(s) {
                self.report(&e.path, "sdks", format!("unknown sdk '{s}'"));
            }
        }
        if self.diagnostics.len() != before {
            return None;
        }
        match QuantumComputer::new(e.doc, gate_set?) {
            Ok(q) => Some(q),
            Err(msg) => {
                self.report(&e.path, "", msg);
                None
            }
        }
    }

    fn implementation(
        &mut self,
        e: Entry<ImplementationDocument>,
        algorithms: &BTreeMap<String, Algorithm>,
        sdks: &BTreeMap<String, Sdk>,
    ) -> Option<Implementation> {
        let before = self.diagnostics.len();
        let d = &e.doc;
        if d.id.trim().is_empty() {
            self.report(&e.path, "id", "must not be empty");
        }
        let algorithm = algorithms.get(&d.algorithm);
        if algorithm.is_none() {
            self.report(&e.path, "algorithm", format!("unknown algorithm '{}'", d.algorithm));
        }
        if !sdks.contains_key(&d.sdk) {
            self.report(&e.path, "sdk", format!("unknown sdk '{}'", d.sdk));
        }
        if let Some(rule) = &d.rule {
            if !rule.is_valid() {
                self.report(&e.path, "rule", format!("min {} exceeds max {}", rule.min, rule.max));
            }
            if let Some(a) = algorithm {
                if !a.parameters().iter().any(|p| p.name == rule.parameter) {
                    self.report(
                        &e.path,
                        "rule.parameter",
                        format!("algorithm '{}' has no parameter '{}'", a.id(), rule.parameter),
                    );
                }
            }
        }
        let source = match (&d.circuit, &d.generator) {
            (Some(_), Some(_)) => {
                self.report(&e.path, "circuit", "give either 'circuit' or 'generator', not both");
                None
            }
            (None, None) => {
                self.report(&e.path, "circuit", "one of 'circuit' or 'generator' is required");
                None
            }
            (None, Some(g)) => {
                if generator::lookup(g).is_none() {
                    self.report(&e.path, "generator", format!("unknown generator '{g}'"));
                    None
                } else {
                    Some(CircuitSource::Generator(g.clone()))
                }
            }
            (Some(src), None) => self.circuit(&e.path, src).map(CircuitSource::Static),
        };
        if self.diagnostics.len() != before {
            return None;
        }
        Some(Implementation {
            doc: e.doc,
            source: source?,
        })
    }

    fn circuit(&mut self, path: &str, src: &CircuitSourceDocument) -> Option<crate::circuit::QuantumCircuit> {
        let (text, origin) = match src {
            CircuitSourceDocument::Inline(t) => (t.clone(), "circuit".to_string()),
            CircuitSourceDocument::File { file } => {
                let rel = Path::new(file);
                if rel.is_absolute() || rel.components().any(|c| matches!(c, std::path::Component::ParentDir)) {
                    self.report(
                        path,
                        "circuit.file",
                        format!("'{file}' must be a path inside the registry"),
                    );
                    return None;
                }
                match fs::read_to_string(self.root.join(rel)) {
                    Ok(t) => (t, format!("circuit.file ({file})")),
                    Err(err) => {
                        self.report(path, "circuit.file", format!("cannot read '{file}': {err}"));
                        return None;
                    }
                }
            }
        };
        match parse_circuit(&text) {
            Ok(c) => Some(c),
            Err(err) => {
                self.report(path, &origin, err.to_string());
                None
            }
        }
    }
}
