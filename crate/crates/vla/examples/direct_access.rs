//! Compress a generated text and read single letters straight out of the
//! compressed form.
//!
//! Run with: cargo run --release --example direct_access

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vla::codes::{FrequencyTable, TrimmedCodeBook};
use vla::storage::CompressedSequence;

fn main() {
    // A steeply skewed byte source, the regime where variable-length coding
    // pays for its index.
    let mut rng = StdRng::seed_from_u64(42);
    let n = 1 << 18;
    let text: Vec<u32> = (0..n)
        .map(|_| {
            let mut a = 0u32;
            while a < 255 && rng.random_bool(0.3) {
                a += 1;
            }
            a
        })
        .collect();

    let freqs = FrequencyTable::from_sequence(&text, 256).unwrap();
    let code = TrimmedCodeBook::from_frequencies(&freqs).unwrap();
    let cs = CompressedSequence::sigma_bit(&text, code).unwrap();

    let stats = cs.stats().unwrap();
    println!(
        "{n} letters, h1 = {:.3} bits -> {:.3} bits/letter stored (z {:.3} + index {:.3})",
        stats.empirical_h1,
        stats.bits_per_letter,
        stats.z_bits as f64 / n as f64,
        stats.index_bits as f64 / n as f64,
    );
    println!("fixed-width baseline would use 8.000 bits/letter");
    println!();

    let mut worst = 0;
    for _ in 0..10_000 {
        let i = rng.random_range(1..=n);
        let (letter, cost) = cs.access_traced(i).unwrap();
        assert_eq!(letter, text[i - 1]);
        worst = worst.max(cost.index_words);
    }
    println!(
        "10000 random accesses verified; at most {worst} index words touched per access \
         (cap for N = 2^18 is {})",
        18 + 1
    );

    for i in [1usize, 2, n / 2, n] {
        println!("  letter {i:>6} = {}", cs.access(i).unwrap());
    }
}
