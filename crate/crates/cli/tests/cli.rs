mod common;

use std::fs;
use std::process::Command;

use common::{json, nisq, registry_root, stderr, stdout};

#[test]
fn list_commands() {
    let root = registry_root();
    let out = nisq(&root, &["list", "algorithms"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.starts_with("shor ")));

    let out = nisq(&root, &["list", "qpus", "--json"]);
    let v = json(&out);
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["forest-8", "ibmq-16", "ibmq-5"]);

    for kind in ["implementations", "sdks"] {
        assert_eq!(nisq(&root, &["list", kind]).status.code(), Some(0));
    }
}

#[test]
fn list_on_an_empty_registry() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["algorithms", "implementations", "qpus", "sdks"] {
        fs::create_dir(dir.path().join(sub)).unwrap();
    }
    let out = nisq(dir.path(), &["list", "algorithms", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!([]));
}

#[test]
fn registry_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nisq"))
        .args(["list", "sdks"])
        .env("NISQ_REGISTRY", registry_root())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("qiskit"));
}

#[test]
fn broken_registry_exits_one() {
    let dir = common::registry_copy();
    common::edit_json(&dir.path().join("implementations/shor-15-qiskit.json"), |v| {
        v["sdk"] = "cirq".into()
    });
    let out = nisq(dir.path(), &["list", "algorithms"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("implementations/shor-15-qiskit.json"));
    let out = nisq(dir.path(), &["validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("unknown sdk 'cirq'"));
    assert_eq!(nisq(&registry_root(), &["validate"]).status.code(), Some(0));
}

#[test]
fn analyze_recommends_shor15_on_ibmq16() {
    let out = nisq(&registry_root(), &["analyze", "shor", "n=9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("recommendation: shor-15-qiskit on ibmq-16"),
        "{}",
        stdout(&out)
    );

    let out = nisq(&registry_root(), &["analyze", "shor", "n=9", "--json"]);
    let v = json(&out);
    assert_eq!(v["recommendation"]["implementation_id"], "shor-15-qiskit");
    assert_eq!(v["recommendation"]["qpu_id"], "ibmq-16");
}

#[test]
fn analyze_without_executable_pair_exits_two() {
    let dir = common::registry_copy();
    fs::remove_file(dir.path().join("implementations/shor-general-forest.json")).unwrap();
    let out = nisq(dir.path(), &["analyze", "shor", "n=16"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("no executable pair"));
    let out = nisq(dir.path(), &["execute", "shor", "n=16"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    let root = registry_root();
    for args in [
        &["analyze", "shor"][..],
        &["analyze", "shor", "n"],
        &["analyze", "shor", "n=nine"],
        &["analyze", "grover", "n=3"],
        &["frobnicate"],
        &["list", "gates"],
        &["execute", "shor", "n=9", "--shots", "0"],
    ] {
        let out = nisq(&root, args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(nisq(&root, &["--help"]).status.code(), Some(0));
}

#[test]
fn execute_is_reproducible() {
    let root = registry_root();
    let args = ["execute", "shor", "n=9", "--shots", "100", "--seed", "7", "--json"];
    let a = nisq(&root, &args);
    let b = nisq(&root, &args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let total: u64 = v["result"]["counts"]
        .as_object()
        .unwrap()
        .values()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(total, 100);
    assert_eq!(v["result"]["shots"], 100);
    assert_eq!(v["result"]["seed"], 7);
    // counting register of the order-finding circuit reads even values only
    for key in v["result"]["counts"].as_object().unwrap().keys() {
        assert!(["000", "010", "100", "110"].contains(&key.as_str()), "{key}");
    }
}

#[test]
fn qpu_override_matches_automatic_choice() {
    let root = registry_root();
    let auto = json(&nisq(&root, &["execute", "shor", "n=9", "--seed", "3", "--json"]));
    let forced = json(&nisq(
        &root,
        &["execute", "shor", "n=9", "--seed", "3", "--json", "--qpu", "ibmq-16"],
    ));
    assert_eq!(auto, forced);
    assert_eq!(forced["qpu_id"], "ibmq-16");
}

#[test]
fn override_onto_a_small_qpu_cites_qubits() {
    let out = nisq(
        &registry_root(),
        &["execute", "shor", "n=9", "--impl", "shor-15-qiskit", "--qpu", "ibmq-5"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Qubits"), "{}", stderr(&out));
    let out = nisq(&registry_root(), &["execute", "shor", "n=9", "--qpu", "nowhere"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_and_json_agree() {
    let root = registry_root();
    let table = stdout(&nisq(&root, &["analyze", "ghz", "n=3"]));
    let v = json(&nisq(&root, &["analyze", "ghz", "n=3", "--json"]));
    for row in v["report"]["rows"].as_array().unwrap() {
        let imp = row["implementation_id"].as_str().unwrap();
        let qpu = row["qpu_id"].as_str().unwrap();
        let line = table
            .lines()
            .find(|l| l.split_whitespace().take(2).eq([imp, qpu]))
            .unwrap_or_else(|| panic!("{imp} {qpu} missing"));
        let cells: Vec<&str> = line.split_whitespace().collect();
        let show = |x: &serde_json::Value| x.as_u64().map_or("-".to_string(), |n| n.to_string());
        assert_eq!(cells[2], show(&row["transpiled_width"]));
        assert_eq!(cells[3], show(&row["qpu_qubits"]));
        assert_eq!(cells[4], show(&row["transpiled_depth"]));
        assert_eq!(cells[5], show(&row["qpu_max_depth"]));
        assert_eq!(
            cells[8],
            if row["executable"].as_bool().unwrap() {
                "yes"
            } else {
                "no"
            }
        );
    }
}
