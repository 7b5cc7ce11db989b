//! Seeded source generators shared by the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use rand::rngs::StdRng;
use rand::Rng;

/// Zipf-distributed letters with exponent `s`, every letter appearing at
/// least once (positions shuffled). Requires `n >= l`.
pub fn zipf_sequence(rng: &mut StdRng, n: usize, l: usize, s: f64) -> Vec<u32> {
    assert!(n >= l);
    let weights: Vec<f64> = (1..=l).map(|k| (k as f64).powf(-s)).collect();
    let total: f64 = weights.iter().sum();
    let mut cdf = Vec::with_capacity(l);
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cdf.push(acc);
    }
    let mut seq: Vec<u32> = (0..l as u32).collect();
    for _ in 0..n - l {
        let u: f64 = rng.random();
        let letter = cdf.partition_point(|&c| c < u).min(l - 1);
        seq.push(letter as u32);
    }
    for i in (1..seq.len()).rev() {
        seq.swap(i, rng.random_range(0..=i));
    }
    seq
}

/// Geometric-ish skew: each step halves the probability of the next letter.
pub fn skewed_sequence(rng: &mut StdRng, n: usize, l: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let mut a = 0usize;
            while a + 1 < l && rng.random_bool(0.5) {
                a += 1;
            }
            a as u32
        })
        .collect()
}

/// Order-1 Markov chain over `l` letters: stays on the current letter with
/// probability `stay`, otherwise steps to a uniform other letter.
pub fn markov_sequence(rng: &mut StdRng, n: usize, l: usize, stay: f64) -> Vec<u32> {
    let mut seq = Vec::with_capacity(n);
    let mut state = rng.random_range(0..l as u32);
    for _ in 0..n {
        seq.push(state);
        if !rng.random_bool(stay) {
            let step = rng.random_range(1..l as u32);
            state = (state + step) % l as u32;
        }
    }
    seq
}
