//! The blocked variant's time/memory dial: shorter blocks mean shorter
//! within-block walks but a larger block table.
//!
//! Run with: cargo run --release --example blocked_tradeoff

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vla::codes::{FrequencyTable, TrimmedCodeBook};
use vla::storage::CompressedSequence;

fn main() {
    let mut rng = StdRng::seed_from_u64(7);
    let n = 1 << 16;
    let x: Vec<u32> = (0..n)
        .map(|_| {
            let mut a = 0u32;
            while a < 255 && rng.random_bool(0.35) {
                a += 1;
            }
            a
        })
        .collect();
    let freqs = FrequencyTable::from_sequence(&x, 256).unwrap();
    let code = TrimmedCodeBook::from_frequencies(&freqs).unwrap();

    println!("N = {n}, h1 = {:.3}", freqs.entropy());
    println!();
    println!(
        "{:>10} {:>8} {:>14} {:>12} {:>12}",
        "blocks m", "M", "bits/letter", "words avg", "words max"
    );

    let reference = CompressedSequence::sigma_bit(&x, code.clone()).unwrap();
    report("1 (=tree)", &reference, &x, &mut rng);

    // Block lengths N^alpha for a few alphas.
    for alpha in [0.25f64, 0.5, 0.75] {
        let block_len = ((n as f64).powf(alpha).round() as usize).clamp(1, n);
        let m = n.div_ceil(block_len);
        let cs = CompressedSequence::blocked(&x, code.clone(), m).unwrap();
        report(&format!("{m}"), &cs, &x, &mut rng);
    }
}

fn report(label: &str, cs: &CompressedSequence, x: &[u32], rng: &mut StdRng) {
    let stats = cs.stats().unwrap();
    let mut total = 0usize;
    let mut max = 0usize;
    let probes = 2000;
    for _ in 0..probes {
        let i = rng.random_range(1..=x.len());
        let (letter, cost) = cs.access_traced(i).unwrap();
        assert_eq!(letter, x[i - 1]);
        total += cost.index_words;
        max = max.max(cost.index_words);
    }
    println!(
        "{:>10} {:>8} {:>14.3} {:>12.2} {:>12}",
        label,
        cs.block_len().unwrap_or(x.len()),
        stats.bits_per_letter,
        total as f64 / probes as f64,
        max,
    );
}
