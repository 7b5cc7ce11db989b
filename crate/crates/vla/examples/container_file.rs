//! Write a compressed sequence to a .vla file, load it back, and query it.
//!
//! Run with: cargo run --example container_file

use vla::codes::{FrequencyTable, TrimmedCodeBook};
use vla::container::{self, SymbolTable};
use vla::storage::CompressedSequence;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = b"sing in me muse and through me tell the story";
    let letters: Vec<u32> = text.iter().map(|&b| b as u32).collect();

    let freqs = FrequencyTable::from_sequence(&letters, 256)?;
    let code = TrimmedCodeBook::from_frequencies(&freqs)?;
    let cs = CompressedSequence::blocked(&letters, code, 8)?;

    let path = std::env::temp_dir().join("example.vla");
    let bytes = container::serialize(&cs);
    std::fs::write(&path, &bytes)?;
    println!(
        "wrote {} ({} bytes for {} letters, {} blocks)",
        path.display(),
        bytes.len(),
        cs.len(),
        cs.block_count().unwrap(),
    );

    let (loaded, symbols) = container::deserialize(&std::fs::read(&path)?)?;
    assert_eq!(symbols, SymbolTable::Bytes);
    assert_eq!(container::serialize(&loaded), bytes, "byte-stable reload");

    let slice: Vec<u8> = (12..=15)
        .map(|i| loaded.access(i).map(|l| l as u8))
        .collect::<Result<_, _>>()?;
    println!(
        "letters 12..=15 of the loaded file: {:?}",
        String::from_utf8_lossy(&slice)
    );

    for i in 1..=loaded.len() {
        assert_eq!(loaded.access(i)?, letters[i - 1]);
    }
    println!("all {} letters verified against the original", loaded.len());
    std::fs::remove_file(&path)?;
    Ok(())
}
