mod common;

use std::collections::BTreeMap;

use nisq_analyzer::circuit::random::random_circuit;
use nisq_analyzer::circuit::{parse_circuit, unitary_of, QuantumCircuit};
use nisq_analyzer::executor::{
    execute, marginal_probabilities, readout_qubits, simulate, Backend, ExecutionError, RemoteStubBackend,
    StatevectorBackend,
};
use nisq_analyzer::registry::generator::ghz;
use nisq_analyzer::registry::CircuitSource;
use nisq_analyzer::transpiler::transpile;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bell() -> QuantumCircuit {
    parse_circuit("qreg q[2]; h q[0]; cx q[0],q[1]; measure q[0]; measure q[1];").unwrap()
}

fn qiskit() -> StatevectorBackend {
    StatevectorBackend::new(["qiskit"])
}

#[test]
fn bell_on_the_simulator() {
    let qpu = common::bundled().qpu("ibmq-5").unwrap().clone();
    let t = transpile(&bell(), "bell", &qpu).unwrap();
    let result = execute(&t, "qiskit", &qiskit(), 100, 7).unwrap();
    assert_eq!(result.counts.values().sum::<u64>(), 100);
    assert!(result.counts.keys().all(|k| k == "00" || k == "11"));
    assert_eq!(result, execute(&t, "qiskit", &qiskit(), 100, 7).unwrap());
    assert_eq!((result.shots, result.seed), (100, 7));
}

#[test]
fn backend_contract_errors() {
    let qpu = common::bundled().qpu("ibmq-16").unwrap().clone();
    let t = transpile(&bell(), "bell", &qpu).unwrap();
    assert!(matches!(
        execute(&t, "forest", &qiskit(), 10, 0),
        Err(ExecutionError::SdkMismatch { .. })
    ));
    let stub = RemoteStubBackend::new("ibm-cloud", ["qiskit"], 16);
    let err = execute(&t, "qiskit", &stub, 10, 0).unwrap_err();
    assert!(err.to_string().contains("not connected"));
    let tiny = RemoteStubBackend::new("tiny", ["qiskit"], 1);
    assert!(matches!(
        execute(&t, "qiskit", &tiny, 10, 0),
        Err(ExecutionError::CapabilityExceeded { .. })
    ));
    assert_eq!(execute(&t, "qiskit", &qiskit(), 0, 0), Err(ExecutionError::NoShots));
    assert_eq!(qiskit().max_qubits(), 20);
}

#[test]
fn ghz3_on_ibmq16_samples_two_outcomes() {
    let qpu = common::bundled().qpu("ibmq-16").unwrap().clone();
    let t = transpile(&ghz(3).unwrap(), "ghz", &qpu).unwrap();
    let result = execute(&t, "qiskit", &qiskit(), 4096, 1).unwrap();
    assert_eq!(result.counts.keys().collect::<Vec<_>>(), ["000", "111"]);
    for count in result.counts.values() {
        let f = *count as f64 / 4096.0;
        assert!((f - 0.5).abs() <= 0.04, "{f}");
    }
}

#[test]
fn unmeasured_circuits_read_every_qubit() {
    let qpu = common::bundled().qpu("ibmq-5").unwrap().clone();
    let c = parse_circuit("qreg q[3]; x q[0]; cx q[0],q[2];").unwrap();
    let t = transpile(&c, "c", &qpu).unwrap();
    let result = execute(&t, "qiskit", &qiskit(), 10, 0).unwrap();
    assert_eq!(result.counts, BTreeMap::from([("101".to_string(), 10)]));
}

/// Source distribution of `c` over its measured qubits (all when none).
fn source_distribution(c: &QuantumCircuit) -> Vec<f64> {
    let mut measured = c.measured_qubits();
    if measured.is_empty() {
        measured = (0..c.num_qubits()).collect();
    }
    measured.sort_unstable();
    marginal_probabilities(&simulate(c).unwrap(), &measured)
}

#[test]
fn transpilation_preserves_distributions() {
    let registry = common::bundled();
    let mut fixtures: Vec<QuantumCircuit> = vec![bell(), ghz(3).unwrap(), ghz(5).unwrap()];
    for imp in registry.implementations() {
        if let CircuitSource::Static(c) = imp.source() {
            if c.width() <= 5 {
                fixtures.push(c.clone());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    fixtures.extend((0..10).map(|_| random_circuit(&mut rng, 4, 12)));
    for c in &fixtures {
        let expected = source_distribution(c);
        for qpu in registry.qpus() {
            let t = transpile(c, "f", qpu).unwrap();
            let got = marginal_probabilities(&simulate(&t.circuit).unwrap(), &readout_qubits(&t));
            for (a, b) in expected.iter().zip(&got) {
                assert!((a - b).abs() <= 1e-6, "{} on {}", c.render(), qpu.id());
            }
        }
    }
}

#[test]
fn simulator_matches_unitary_on_fixtures() {
    let mut fixtures = vec![bell(), ghz(6).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    fixtures.extend((1..=6).map(|n| random_circuit(&mut rng, n, 25)));
    for c in fixtures {
        let unitary_part: QuantumCircuit = QuantumCircuit::new(
            "q",
            c.num_qubits(),
            c.gates().iter().filter(|g| g.kind.is_unitary()).cloned().collect(),
        )
        .unwrap();
        let state = simulate(&c).unwrap();
        let column = unitary_of(&unitary_part).unwrap().column(0);
        assert!(state.iter().zip(&column).all(|(a, b)| (a - b).norm() <= 1e-9));
    }
}
