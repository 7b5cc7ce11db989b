//! When neighbouring letters are correlated, coding whole blocks as letters
//! of a derived alphabet beats per-letter coding: block entropy h_M drops
//! below h_1 and the stored size follows.
//!
//! Run with: cargo run --release --example superletter_gain

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vla::codes::{FrequencyTable, TrimmedCodeBook};
use vla::storage::CompressedSequence;

fn main() {
    // Order-1 Markov chain over 4 letters: stay put with probability 0.9.
    let mut rng = StdRng::seed_from_u64(11);
    let n = 1 << 16;
    let mut state = 0u32;
    let x: Vec<u32> = (0..n)
        .map(|_| {
            let out = state;
            if !rng.random_bool(0.9) {
                state = (state + rng.random_range(1..4)) % 4;
            }
            out
        })
        .collect();

    let freqs = FrequencyTable::from_sequence(&x, 4).unwrap();
    let code = TrimmedCodeBook::from_frequencies(&freqs).unwrap();
    let per_letter = CompressedSequence::sigma_bit(&x, code).unwrap();
    let base = per_letter.stats().unwrap();
    println!(
        "per-letter store: h1 = {:.3}, {:.3} bits/letter",
        base.empirical_h1, base.bits_per_letter
    );
    println!();
    println!(
        "{:>4} {:>10} {:>8} {:>14} {:>12}",
        "M", "blocks", "hM", "bits/letter", "codebook b"
    );

    for block_len in [1usize, 2, 4, 8, 16] {
        let cs = CompressedSequence::superletter(&x, 4, block_len).unwrap();
        let stats = cs.stats().unwrap();
        println!(
            "{:>4} {:>10} {:>8.3} {:>14.3} {:>12}",
            block_len,
            stats.block_count.unwrap(),
            stats.empirical_hm.unwrap(),
            stats.bits_per_letter,
            stats.codebook_bits,
        );
        for _ in 0..2000 {
            let i = rng.random_range(1..=n);
            assert_eq!(cs.access(i).unwrap(), x[i - 1]);
        }
    }
    println!();
    println!("larger blocks trade slower, bigger codebooks for fewer stored bits");
}
