//! The two-stream layout on a tiny sequence: codewords in z, their lengths
//! in y, and direct access by summing length fields.
//!
//! Run with: cargo run --example two_stream

use vla::codes::{FrequencyTable, TrimmedCodeBook};
use vla::storage::CompressedSequence;

fn main() {
    let mut counts: Vec<u64> = (0..14).map(|i| 1u64 << (13 - i)).collect();
    counts.push(1);
    let freqs = FrequencyTable::from_counts(counts).unwrap();
    let code = TrimmedCodeBook::from_frequencies(&freqs).unwrap();

    let x = [5u32, 0, 0, 10];
    println!("x = a_5 a_0 a_0 a_10");
    let cs = CompressedSequence::sigma_tr(&x, code.clone()).unwrap();

    println!("z = {}   ({} bits)", cs.z().to_bit_string(), cs.z().len());
    let y = cs.length_fields().unwrap();
    let stored: Vec<u64> = y.iter().collect();
    println!(
        "y = {:?} stored in {}-bit fields (codeword lengths {:?})",
        stored,
        y.width(),
        stored.iter().map(|&v| v + 1).collect::<Vec<_>>(),
    );

    println!();
    for i in 1..=4 {
        let (letter, cost) = cs.access_traced(i).unwrap();
        println!(
            "access({i}) = a_{letter}  after reading {} length fields",
            cost.index_words
        );
    }
}
