//! Build a Huffman code over a steeply skewed 15-letter alphabet, then trim
//! it so no codeword exceeds ⌈log L⌉ + 1 bits.
//!
//! Run with: cargo run --example trimmed_codes

use vla::codes::{CodeBook, FrequencyTable, TrimmedCodeBook};

fn bits(word: u64, width: u8) -> String {
    (0..width)
        .rev()
        .map(|b| if word >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn main() {
    // p(a_i) = 2^-(i+1), with the last letter doubled so the tree closes.
    let mut counts: Vec<u64> = (0..14).map(|i| 1u64 << (13 - i)).collect();
    counts.push(1);
    let freqs = FrequencyTable::from_counts(counts).unwrap();

    let huffman = CodeBook::huffman(&freqs).unwrap();
    let trimmed = TrimmedCodeBook::trim(huffman.clone()).unwrap();

    println!("letter  p(a)      huffman           trimmed");
    for letter in 0..15 {
        let (hw, hl) = huffman.codeword(letter).unwrap();
        let (tw, tl) = trimmed.encode(letter).unwrap();
        println!(
            "a_{letter:<5} {:<9.6} {:<17} {}",
            freqs.probability(letter),
            bits(hw, hl),
            bits(tw, tl),
        );
    }

    println!();
    println!(
        "max huffman length {} -> max trimmed length {} (lambda = {})",
        huffman.lengths().iter().max().unwrap(),
        (0..15).map(|a| trimmed.length(a)).max().unwrap(),
        trimmed.lambda(),
    );
    println!(
        "avg huffman {:.4} bits/letter, avg trimmed {:.4} (entropy {:.4})",
        freqs.average_length(huffman.lengths()),
        trimmed.average_length(&freqs),
        freqs.entropy(),
    );
}
