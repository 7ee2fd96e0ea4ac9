#![allow(dead_code)]

use std::path::PathBuf;

use nisq_analyzer::circuit::QuantumCircuit;
use nisq_analyzer::registry::{load_registry, Registry};

pub fn registry_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../registry")
}

pub fn bundled() -> Registry {
    load_registry(registry_root()).expect("bundled registry loads")
}

/// Longest chain of gates where each consecutive pair shares a qubit.
/// Quadratic, written without reference to the layering code.
pub fn critical_path_depth(c: &QuantumCircuit) -> usize {
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

/// Copies the bundled registry into a fresh temporary directory.
pub fn registry_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&registry_root(), dir.path());
    dir
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

/// Rewrites one JSON document in place.
pub fn edit_json(path: &std::path::Path, f: impl FnOnce(&mut serde_json::Value)) {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}
