//! Native gate sets and their rewrite tables.
//!
//! A gate set document names the basis and, for every other catalog gate,
//! one expansion into gates that are either in the basis or themselves
//! expandable:
//!
//! ```json
//! {
//!   "name": "ibm-basis",
//!   "basis": ["rz", "sx", "x", "cx"],
//!   "rules": [
//!     { "from": "h", "expansion": [
//!         { "gate": "rz", "qubits": [0], "params": ["pi/2"] },
//!         { "gate": "sx", "qubits": [0] },
//!         { "gate": "rz", "qubits": [0], "params": ["pi/2"] } ] }
//!   ]
//! }
//! ```
//!
//! `qubits` index the operands of the rewritten gate; `params` are angle
//! expressions over `pi` and the rewritten gate's parameters `p0..p2`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::circuit::{GateApplication, GateKind};
use crate::expr::AngleExpr;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSetDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub basis: Vec<GateKind>,
    #[serde(default)]
    pub rules: Vec<RuleDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDocument {
    pub from: GateKind,
    pub expansion: Vec<TemplateDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDocument {
    pub gate: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
}

/// One gate of an expansion, with operands and angles relative to the
/// gate being rewritten.
#[derive(Debug, Clone, PartialEq)]
pub struct GateTemplate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub params: Vec<AngleExpr>,
}

impl GateTemplate {
    pub fn instantiate(&self, source: &GateApplication) -> GateApplication {
        GateApplication {
            kind: self.kind,
            operands: self.qubits.iter().map(|&i| source.operands[i]).collect(),
            params: self.params.iter().map(|e| e.eval(&source.params)).collect(),
        }
    }
}

/// A problem found while validating a gate set document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSetIssue {
    pub field: String,
    pub message: String,
}

impl GateSetIssue {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Validated basis plus rewrite table.
#[derive(Debug, Clone, PartialEq)]
pub struct NativeGateSet {
    name: String,
    basis: BTreeSet<GateKind>,
    rules: BTreeMap<GateKind, Vec<GateTemplate>>,
}

const ENTANGLERS: [GateKind; 2] = [GateKind::Cx, GateKind::Cz];
const UNIVERSAL_1Q: [&[GateKind]; 3] = [
    &[GateKind::Rz, GateKind::Sx],
    &[GateKind::Rx, GateKind::Rz],
    &[GateKind::U3],
];

impl NativeGateSet {
    pub fn from_json(text: &str) -> Result<Self, Vec<GateSetIssue>> {
        let doc: GateSetDocument =
            serde_json::from_str(text).map_err(|e| vec![GateSetIssue::new("", e.to_string())])?;
        Self::from_document(&doc)
    }

    /// Validates a document. All problems are returned, not just the first.
    pub fn from_document(doc: &GateSetDocument) -> Result<Self, Vec<GateSetIssue>> {
        let mut issues = Vec::new();
        if doc.name.trim().is_empty() {
            issues.push(GateSetIssue::new("name", "must not be empty"));
        }
        let basis: BTreeSet<GateKind> = doc.basis.iter().copied().filter(|k| k.is_unitary()).collect();
        if let Some(k) = basis.iter().find(|k| k.arity() > 2) {
            issues.push(GateSetIssue::new("basis", format!("'{k}' acts on more than 2 qubits")));
        }
        if !ENTANGLERS.iter().any(|k| basis.contains(k)) {
            issues.push(GateSetIssue::new("basis", "needs a 2-qubit entangling gate (cx or cz)"));
        }
        if !UNIVERSAL_1Q.iter().any(|set| set.iter().all(|k| basis.contains(k))) {
            issues.push(GateSetIssue::new(
                "basis",
                "needs a universal 1-qubit set: {rz, sx}, {rx, rz} or {u3}",
            ));
        }

        let mut rules = BTreeMap::new();
        for (i, rule) in doc.rules.iter().enumerate() {
            let field = format!("rules[{i}]");
            let from = rule.from;
            if !from.is_unitary() {
                issues.push(GateSetIssue::new(&field, "measure cannot be rewritten"));
                continue;
            }
            if basis.contains(&from) {
                issues.push(GateSetIssue::new(&field, format!("'{from}' is already in the basis")));
                continue;
            }
            if rules.contains_key(&from) {
                issues.push(GateSetIssue::new(&field, format!("second rule for '{from}'")));
                continue;
            }
            if rule.expansion.is_empty() {
                issues.push(GateSetIssue::new(&field, "expansion must not be empty"));
                continue;
            }
            let mut templates = Vec::new();
            let mut ok = true;
            for (j, t) in rule.expansion.iter().enumerate() {
                let tfield = format!("{field}.expansion[{j}]");
                match Self::template(from, t) {
                    Ok(tpl) => templates.push(tpl),
                    Err(msg) => {
                        issues.push(GateSetIssue::new(tfield, msg));
                        ok = false;
                    }
                }
            }
            if ok {
                rules.insert(from, templates);
            }
        }

        let set = Self {
            name: doc.name.clone(),
            basis,
            rules,
        };
        if issues.is_empty() {
            let unreachable = set.unreachable_kinds();
            if !unreachable.is_empty() {
                let names: Vec<&str> = unreachable.iter().map(|k| k.name()).collect();
                issues.push(GateSetIssue::new(
                    "rules",
                    format!("no expansion reaches the basis for: {}", names.join(", ")),
                ));
            }
        }
        if issues.is_empty() {
            Ok(set)
        } else {
            Err(issues)
        }
    }

    fn template(from: GateKind, t: &TemplateDocument) -> Result<GateTemplate, String> {
        if !t.gate.is_unitary() {
            return Err("measure cannot appear in an expansion".into());
        }
        if t.qubits.len() != t.gate.arity() {
            return Err(format!(
                "'{}' needs {} qubit(s), got {}",
                t.gate,
                t.gate.arity(),
                t.qubits.len()
            ));
        }
        if let Some(q) = t.qubits.iter().find(|&&q| q >= from.arity()) {
            return Err(format!("qubit {q} out of range for '{from}' (arity {})", from.arity()));
        }
        for (i, q) in t.qubits.iter().enumerate() {
            if t.qubits[..i].contains(q) {
                return Err(format!("duplicate qubit {q}"));
            }
        }
        if t.params.len() != t.gate.param_count() {
            return Err(format!(
                "'{}' needs {} parameter(s), got {}",
                t.gate,
                t.gate.param_count(),
                t.params.len()
            ));
        }
        let params = t
            .params
            .iter()
            .map(|src| AngleExpr::parse(src, from.param_count()).map_err(|e| format!("'{src}': {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GateTemplate {
            kind: t.gate,
            qubits: t.qubits.clone(),
            params,
        })
    }

    /// Catalog gates with no expansion chain into the basis.
    fn unreachable_kinds(&self) -> Vec<GateKind> {
        let mut reachable: BTreeSet<GateKind> = self.basis.clone();
        reachable.insert(GateKind::Measure);
        loop {
            let before = reachable.len();
            for (from, templates) in &self.rules {
                if templates.iter().all(|t| reachable.contains(&t.kind)) {
                    reachable.insert(*from);
                }
            }
            if reachable.len() == before {
                break;
            }
        }
        GateKind::ALL.into_iter().filter(|k| !reachable.contains(k)).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &BTreeSet<GateKind> {
        &self.basis
    }

    /// Measurements are always native.
    pub fn contains(&self, kind: GateKind) -> bool {
        kind == GateKind::Measure || self.basis.contains(&kind)
    }

    pub fn rule(&self, kind: GateKind) -> Option<&[GateTemplate]> {
        self.rules.get(&kind).map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(basis: &[GateKind], rules: Vec<RuleDocument>) -> GateSetDocument {
        GateSetDocument {
            name: "t".into(),
            description: None,
            basis: basis.to_vec(),
            rules,
        }
    }

    #[test]
    fn basis_requirements() {
        let issues = NativeGateSet::from_document(&doc(&[GateKind::Rz, GateKind::Sx], vec![])).unwrap_err();
        assert!(issues.iter().any(|i| i.message.contains("entangling")));
        let issues = NativeGateSet::from_document(&doc(&[GateKind::Rz, GateKind::Cx], vec![])).unwrap_err();
        assert!(issues.iter().any(|i| i.message.contains("universal")));
    }

    #[test]
    fn missing_rules_are_reported() {
        let issues = NativeGateSet::from_document(&doc(&[GateKind::U3, GateKind::Cx], vec![])).unwrap_err();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].message.contains("h"), "{issues:?}");
    }

    #[test]
    fn bad_templates() {
        let rule = RuleDocument {
            from: GateKind::H,
            expansion: vec![TemplateDocument {
                gate: GateKind::Rz,
                qubits: vec![1],
                params: vec!["p0".into()],
            }],
        };
        let issues = NativeGateSet::from_document(&doc(&[GateKind::U3, GateKind::Cx], vec![rule])).unwrap_err();
        assert!(issues.iter().any(|i| i.field == "rules[0].expansion[0]"));
    }

    #[test]
    fn template_instantiation() {
        let t = GateTemplate {
            kind: GateKind::Rz,
            qubits: vec![1],
            params: vec![AngleExpr::parse("p0 / 2", 1).unwrap()],
        };
        let cp = GateApplication {
            kind: GateKind::Rx,
            operands: vec![3, 7],
            params: vec![1.0],
        };
        let g = t.instantiate(&cp);
        assert_eq!(g.operands, vec![7]);
        assert_eq!(g.params, vec![0.5]);
    }
}
