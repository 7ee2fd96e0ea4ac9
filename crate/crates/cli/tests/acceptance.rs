//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nisq_analyzer::circuit::random::random_circuit;
use nisq_analyzer::circuit::{compute_layers, parse_circuit, unitary_of, GateKind, QuantumCircuit};
use nisq_analyzer::executor::{marginal_probabilities, readout_qubits, sample, simulate};
use nisq_analyzer::pipeline::analyze;
use nisq_analyzer::registry::generator::ghz;
use nisq_analyzer::registry::{load_registry, validate, CircuitSource, Diagnostic, Registry};
use nisq_analyzer::rules::{executable, processable, ExecutabilityFacts, SelectionRule};
use nisq_analyzer::transpiler::{circuits_equivalent, transpile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bundled() -> Registry {
    load_registry(common::registry_root()).expect("bundled registry loads")
}

fn critical_path_depth(c: &QuantumCircuit) -> usize {
    let gates = c.gates();
    let mut longest = vec![1usize; gates.len()];
    for j in 0..gates.len() {
        for i in 0..j {
            if gates[i].operands.iter().any(|q| gates[j].operands.contains(q)) {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
    }
    longest.into_iter().max().unwrap_or(0)
}

fn scenario() -> Outcome {
    let start = Instant::now();
    let root = common::registry_root();
    let out = common::nisq(&root, &["analyze", "shor", "n=9", "--json"]);
    check(out.status.code() == Some(0), || {
        format!("n=9 exit {:?}", out.status.code())
    })?;
    let v = common::json(&out);
    let rows = v["report"]["rows"].as_array().ok_or("no rows")?;
    check(rows.iter().any(|r| r["implementation_id"] == "shor-15-qiskit"), || {
        "shor-15-qiskit not processable for n=9".into()
    })?;
    let row = rows
        .iter()
        .find(|r| r["implementation_id"] == "shor-15-qiskit" && r["qpu_id"] == "ibmq-16")
        .ok_or("no shor-15-qiskit/ibmq-16 row")?;
    check(row["executable"] == true, || {
        format!("ibmq-16 row not executable: {row}")
    })?;

    let out = common::nisq(&root, &["analyze", "shor", "n=16", "--json"]);
    let v = common::json(&out);
    let leaked = v["report"]["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .any(|r| r["implementation_id"] == "shor-15-qiskit");
    check(!leaked, || "shor-15-qiskit present for n=16".into())?;

    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "d1={} d0={} q1={} q0={}, {:.2?}",
        row["transpiled_depth"], row["qpu_max_depth"], row["transpiled_width"], row["qpu_qubits"], elapsed
    ))
}

fn processable_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cases = 20_000;
    for i in 0..cases {
        // half the triples near zero so the bounds are hit exactly
        let (n, l0, l1): (i64, i64, i64) = if i % 2 == 0 {
            (
                rng.random_range(-8..=8),
                rng.random_range(-8..=8),
                rng.random_range(-8..=8),
            )
        } else {
            (rng.random(), rng.random(), rng.random())
        };
        let got = processable(n, &SelectionRule::new("n", l0, l1));
        check(got == (l0 <= n && n <= l1), || {
            format!("n={n} l0={l0} l1={l1} gave {got}")
        })?;
    }
    Ok(format!("{cases} triples"))
}

fn executable_truth_table() -> Outcome {
    let mut rows = 0;
    for bits in 0..8u8 {
        let (qubits, depth, sdk) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
        // a holding conjunct is checked at equality and with slack
        for slack in [0usize, 3] {
            let f = ExecutabilityFacts {
                provided_qubits: if qubits { 7 + slack } else { 6 },
                required_qubits: 7,
                max_depth: if depth { 40 + slack } else { 39 },
                required_depth: 40,
                qpu_sdks: BTreeSet::from(["qiskit".to_string()]),
                implementation_sdk: if sdk { "qiskit" } else { "forest" }.into(),
            };
            let expected = qubits && depth && sdk;
            check(executable(&f) == expected, || format!("{f:?} should be {expected}"))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} evaluations over 8 combinations"))
}

fn transpiler_correctness() -> Outcome {
    let start = Instant::now();
    let registry = bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let circuits = 200;
    let mut checked = 0;
    for _ in 0..circuits {
        let width = rng.random_range(1..=4);
        let gates = rng.random_range(0..=15);
        let c = random_circuit(&mut rng, width, gates);
        for qpu in registry.qpus() {
            let t = transpile(&c, "random", qpu).map_err(|e| format!("{}: {e}", qpu.id()))?;
            let same = circuits_equivalent(&c, &t.circuit, &t.final_layout).map_err(|e| e.to_string())?;
            check(same, || format!("not equivalent on {}:\n{}", qpu.id(), c.render()))?;
            for g in t.circuit.gates() {
                check(qpu.gate_set().contains(g.kind), || {
                    format!("{:?} outside basis of {}", g.kind, qpu.id())
                })?;
                if g.operands.len() == 2 {
                    check(qpu.coupling().is_edge(g.operands[0], g.operands[1]), || {
                        format!("{g:?} off the coupling map of {}", qpu.id())
                    })?;
                }
                check(g.operands.len() <= 2, || format!("{g:?} left undecomposed"))?;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} circuit/qpu pairs, {elapsed:.2?}"))
}

fn layering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let circuits = 2000;
    for _ in 0..circuits {
        let width = rng.random_range(1..=6);
        let gates = rng.random_range(0..=20);
        let c = random_circuit(&mut rng, width, gates);
        let layered = compute_layers(&c);
        for layer in &layered.layers {
            let mut seen = BTreeSet::new();
            for g in layer {
                for &q in &g.operands {
                    check(seen.insert(q), || {
                        format!("qubit {q} twice in a layer of\n{}", c.render())
                    })?;
                }
            }
        }
        for q in 0..width {
            let before: Vec<_> = c.gates().iter().filter(|g| g.acts_on(q)).collect();
            let after: Vec<_> = layered.flatten().filter(|g| g.acts_on(q)).collect();
            check(before == after, || {
                format!("order changed on qubit {q} of\n{}", c.render())
            })?;
        }
        check(layered.flatten().count() == c.gates().len(), || "gate lost".into())?;
        check(layered.depth() == critical_path_depth(&c), || {
            format!(
                "depth {} vs oracle {}\n{}",
                layered.depth(),
                critical_path_depth(&c),
                c.render()
            )
        })?;
    }
    Ok(format!("{circuits} circuits"))
}

fn simulator_fidelity() -> Outcome {
    let registry = bundled();
    let bell = parse_circuit("qreg q[2]; h q[0]; cx q[0],q[1]; measure q[0]; measure q[1];").unwrap();
    let mut fixtures = vec![bell.clone(), ghz(3).unwrap(), ghz(6).unwrap()];
    for imp in registry.implementations() {
        if let CircuitSource::Static(c) = imp.source() {
            if c.width() <= 6 {
                fixtures.push(c.clone());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    fixtures.extend((1..=6).map(|n| random_circuit(&mut rng, n, 20)));
    for c in &fixtures {
        let unitary_part = QuantumCircuit::new(
            "q",
            c.num_qubits(),
            c.gates()
                .iter()
                .filter(|g| g.kind != GateKind::Measure)
                .cloned()
                .collect(),
        )
        .unwrap();
        let state = simulate(c).map_err(|e| e.to_string())?;
        let column = unitary_of(&unitary_part).map_err(|e| e.to_string())?.column(0);
        let err = state
            .iter()
            .zip(&column)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        check(err <= 1e-9, || format!("deviation {err:e} on\n{}", c.render()))?;
    }

    let state = simulate(&bell).unwrap();
    let counts = sample(&state, &[0, 1], 10_000, 2024).map_err(|e| e.to_string())?;
    let f = counts.get("00").copied().unwrap_or(0) as f64 / 10_000.0;
    check((0.48..=0.52).contains(&f), || format!("freq(00) = {f}"))?;

    let again = sample(&state, &[0, 1], 10_000, 2024).unwrap();
    check(counts == again, || "library counts differ between runs".into())?;
    let root = common::registry_root();
    let args = ["execute", "shor", "n=9", "--shots", "1000", "--seed", "7", "--json"];
    let (a, b) = (common::nisq(&root, &args), common::nisq(&root, &args));
    check(a.status.success() && a.stdout == b.stdout, || {
        "CLI counts differ between runs".into()
    })?;
    Ok(format!("{} fixtures, freq(00) = {f:.4}", fixtures.len()))
}

fn distribution_preservation() -> Outcome {
    let registry = bundled();
    let source = ghz(3).unwrap();
    let mut report = Vec::new();
    for qpu in registry.qpus() {
        let t = transpile(&source, "ghz-3", qpu).map_err(|e| e.to_string())?;
        let probs = marginal_probabilities(&simulate(&t.circuit).map_err(|e| e.to_string())?, &readout_qubits(&t));
        let support: BTreeMap<usize, f64> = probs.iter().copied().enumerate().filter(|&(_, p)| p > 1e-6).collect();
        check(support.keys().copied().eq([0b000, 0b111]), || {
            format!("support {:?} on {}", support.keys().collect::<Vec<_>>(), qpu.id())
        })?;
        for p in support.values() {
            check((p - 0.5).abs() <= 1e-6, || format!("probability {p} on {}", qpu.id()))?;
        }
        report.push(format!("{} layout {}", qpu.id(), t.final_layout));
    }
    Ok(report.join(", "))
}

fn determinism() -> Outcome {
    let registry = bundled();
    let mut rows = 0;
    for (alg, n) in [("shor", 9), ("shor", 16), ("shor", 21), ("ghz", 3), ("ghz", 12)] {
        let input = BTreeMap::from([("n".to_string(), n)]);
        let a = analyze(&registry, alg, &input).map_err(|e| e.to_string())?;
        let b = analyze(&registry, alg, &input).map_err(|e| e.to_string())?;
        check(a.to_canonical_json() == b.to_canonical_json(), || {
            format!("{alg} n={n} differs")
        })?;
        for row in &a.rows {
            check(row.executable == row.rederive_executable(), || {
                format!("{} on {} is inconsistent", row.implementation_id, row.qpu_id)
            })?;
            rows += 1;
        }
    }
    let root = common::registry_root();
    let args = ["analyze", "shor", "n=9", "--json"];
    check(
        common::nisq(&root, &args).stdout == common::nisq(&root, &args).stdout,
        || "CLI analysis differs between runs".into(),
    )?;
    Ok(format!("{rows} rows re-derived"))
}

fn violation(name: &str, mutate: impl FnOnce(&std::path::Path), expected: Diagnostic) -> Result<(), String> {
    let dir = common::registry_copy();
    mutate(dir.path());
    let diags = validate(dir.path());
    check(diags == vec![expected.clone()], || {
        format!("{name}: got {diags:?}, expected {expected}")
    })?;
    match load_registry(dir.path()) {
        Ok(_) => Err(format!("{name}: load succeeded")),
        Err(e) => check(e.diagnostics == diags, || {
            format!("{name}: load reported {:?}", e.diagnostics)
        }),
    }
}

fn registry_robustness() -> Outcome {
    violation(
        "missing sdk",
        |root| {
            common::edit_json(&root.join("implementations/shor-15-qiskit.json"), |v| {
                v["sdk"] = "cirq".into()
            })
        },
        Diagnostic {
            path: "implementations/shor-15-qiskit.json".into(),
            field: "sdk".into(),
            message: "unknown sdk 'cirq'".into(),
        },
    )?;
    violation(
        "disconnected coupling",
        |root| {
            common::edit_json(&root.join("qpus/ibmq-5.json"), |v| {
                v["coupling"]["edges"] = serde_json::json!([[0, 1], [1, 2], [3, 4]])
            })
        },
        Diagnostic {
            path: "qpus/ibmq-5.json".into(),
            field: "coupling".into(),
            message: "coupling map is disconnected: components {0,1,2} | {3,4}".into(),
        },
    )?;
    violation(
        "duplicate id",
        |root| {
            let src = root.join("implementations/ghz-forest.json");
            fs::copy(&src, root.join("implementations/zz-ghz-forest.json")).unwrap();
        },
        Diagnostic {
            path: "implementations/zz-ghz-forest.json".into(),
            field: "id".into(),
            message: "duplicate implementation id 'ghz-forest' (first defined in implementations/ghz-forest.json)"
                .into(),
        },
    )?;
    Ok("3 fixtures".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked scenario reproduction", scenario),
        ("processability oracle", processable_oracle),
        ("executability truth table", executable_truth_table),
        ("transpiler correctness", transpiler_correctness),
        ("depth and width semantics", layering),
        ("simulator fidelity", simulator_fidelity),
        ("distribution preservation", distribution_preservation),
        ("determinism and self-consistency", determinism),
        ("registry robustness", registry_robustness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
