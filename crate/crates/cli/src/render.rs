//! Text and JSON rendering. Tables are projections of the JSON form.

use std::fmt::Write;

use nisq_analyzer::executor::ExecutionResult;
use nisq_analyzer::pipeline::{canonical_json, AnalysisReport, Recommendation};
use nisq_analyzer::registry::{CircuitSourceDocument, Registry};
use serde_json::{json, Value};

use crate::Kind;

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

pub fn listing(registry: &Registry, kind: Kind, as_json: bool) -> String {
    if as_json {
        let docs: Vec<Value> = match kind {
            Kind::Algorithms => registry.algorithms().map(|a| json!(a.document())).collect(),
            Kind::Implementations => registry.implementations().map(|i| json!(i.document())).collect(),
            Kind::Qpus => registry.qpus().map(|q| json!(q.document())).collect(),
            Kind::Sdks => registry.sdks().map(|s| json!(s.document())).collect(),
        };
        return with_newline(canonical_json(&docs));
    }
    match kind {
        Kind::Algorithms => table(
            &["ID", "NAME", "PARAMETERS"],
            &registry
                .algorithms()
                .map(|a| {
                    let params: Vec<&str> = a.parameters().iter().map(|p| p.name.as_str()).collect();
                    vec![a.id().into(), a.name().into(), params.join(",")]
                })
                .collect::<Vec<_>>(),
        ),
        Kind::Implementations => table(
            &["ID", "ALGORITHM", "SDK", "RULE", "CIRCUIT"],
            &registry
                .implementations()
                .map(|i| {
                    let rule = i
                        .rule()
                        .map(|r| format!("{} <= {} <= {}", r.min, r.parameter, r.max))
                        .unwrap_or_else(|| "-".into());
                    let doc = i.document();
                    let source = match (&doc.circuit, &doc.generator) {
                        (Some(CircuitSourceDocument::File { file }), _) => file.clone(),
                        (Some(CircuitSourceDocument::Inline(_)), _) => "inline".into(),
                        (None, Some(g)) => format!("generator {g}"),
                        (None, None) => "-".into(),
                    };
                    vec![i.id().into(), i.algorithm_id().into(), i.sdk().into(), rule, source]
                })
                .collect::<Vec<_>>(),
        ),
        Kind::Qpus => table(
            &["ID", "VENDOR", "QUBITS", "MAX_DEPTH", "GATESET", "SDKS"],
            &registry
                .qpus()
                .map(|q| {
                    let sdks: Vec<&str> = q.sdks().iter().map(String::as_str).collect();
                    vec![
                        q.id().into(),
                        q.vendor().into(),
                        q.num_qubits().to_string(),
                        q.max_depth().to_string(),
                        q.gate_set().name().into(),
                        sdks.join(","),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Kind::Sdks => table(
            &["ID", "VENDOR", "DESCRIPTION"],
            &registry
                .sdks()
                .map(|s| vec![s.id().into(), s.vendor().into(), s.description().into()])
                .collect::<Vec<_>>(),
        ),
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn analysis(report: &AnalysisReport, recommendation: Option<&Recommendation>, as_json: bool) -> String {
    if as_json {
        return with_newline(canonical_json(&json!({
            "report": report,
            "recommendation": recommendation,
        })));
    }
    let input: Vec<String> = report.input.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut out = format!("algorithm {} with {}\n\n", report.algorithm_id, input.join(" "));
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let plugins: Vec<String> = r
                .plugin_verdicts
                .iter()
                .map(|v| {
                    format!(
                        "{}:{}",
                        v.name,
                        serde_json::to_value(v.verdict).unwrap().as_str().unwrap()
                    )
                })
                .collect();
            let note = if r.executable {
                String::new()
            } else {
                r.explain_failure()
            };
            vec![
                r.implementation_id.clone(),
                r.qpu_id.clone(),
                opt(r.transpiled_width),
                r.qpu_qubits.to_string(),
                opt(r.transpiled_depth),
                r.qpu_max_depth.to_string(),
                if r.sdk_match { "yes" } else { "no" }.into(),
                if plugins.is_empty() {
                    "-".into()
                } else {
                    plugins.join(",")
                },
                if r.executable { "yes" } else { "no" }.into(),
                note,
            ]
        })
        .collect();
    if rows.is_empty() {
        out.push_str("no implementation accepts this input\n");
    } else {
        out.push_str(&table(
            &[
                "IMPLEMENTATION",
                "QPU",
                "Q1",
                "Q0",
                "D1",
                "D0",
                "SDK",
                "PLUGINS",
                "EXECUTABLE",
                "NOTE",
            ],
            &rows,
        ));
    }
    out.push('\n');
    match recommendation {
        Some(r) => {
            let _ = writeln!(
                out,
                "recommendation: {} on {} ({})",
                r.implementation_id, r.qpu_id, r.rationale
            );
        }
        None => out.push_str("recommendation: none, no executable pair\n"),
    }
    out
}

pub fn execution(choice: &Recommendation, result: &ExecutionResult, as_json: bool) -> String {
    if as_json {
        return with_newline(canonical_json(&json!({
            "implementation_id": choice.implementation_id,
            "qpu_id": choice.qpu_id,
            "result": result,
        })));
    }
    let mut out = format!(
        "{} on {} via {} ({} shots, seed {})\n\n",
        choice.implementation_id, choice.qpu_id, result.backend, result.shots, result.seed
    );
    let rows: Vec<Vec<String>> = result
        .counts
        .iter()
        .map(|(bits, n)| vec![bits.clone(), n.to_string()])
        .collect();
    out.push_str(&table(&["OUTCOME", "COUNT"], &rows));
    out
}
