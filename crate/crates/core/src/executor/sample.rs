//! Seeded measurement sampling.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
//! Each shot draws one `u64`, keeps its top 53 bits as a uniform `u` in
//! `[0, 1)`, and picks the first outcome (in ascending outcome order)
//! whose cumulative probability exceeds `u`. Counts are therefore
//! reproducible on every platform for a given seed.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExecutionError;

/// Marginal distribution over `measured` qubits. Outcome bit `k` is
/// the value of `measured[k]`.
pub fn marginal_probabilities(state: &[Complex64], measured: &[usize]) -> Vec<f64> {
    let mut probs = vec![0.0; 1usize << measured.len()];
    for (index, amp) in state.iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let outcome: usize = measured.iter().enumerate().map(|(k, &q)| ((index >> q) & 1) << k).sum();
        probs[outcome] += p;
    }
    probs
}

/// Renders an outcome with bit 0 as the rightmost character.
pub fn bitstring(outcome: usize, len: usize) -> String {
    (0..len)
        .rev()
        .map(|k| if (outcome >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Draws `shots` outcomes over `measured` qubits.
pub fn sample(
    state: &[Complex64],
    measured: &[usize],
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, u64>, ExecutionError> {
    if measured.is_empty() {
        return Err(ExecutionError::NothingMeasured);
    }
    if shots == 0 {
        return Err(ExecutionError::NoShots);
    }
    let width = state.len().trailing_zeros() as usize;
    for (i, &q) in measured.iter().enumerate() {
        if q >= width {
            return Err(ExecutionError::QubitOutOfRange { qubit: q, width });
        }
        if measured[..i].contains(&q) {
            return Err(ExecutionError::DuplicateMeasuredQubit(q));
        }
    }

    let probs = marginal_probabilities(state, measured);
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    // Outcomes with zero probability are never drawn, even when rounding
    // leaves the total slightly below 1.
    let last_possible = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * total;
        let idx = cumulative.partition_point(|&c| c <= u).min(last_possible);
        hits[idx] += 1;
    }
    Ok(hits
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .map(|(outcome, n)| (bitstring(outcome, measured.len()), n))
        .collect())
}
