//! The `vla` command-line tool.
//!
//! Subcommands: `build`, `get`, `stats`, `verify`, `bench`. Exit codes are a
//! stable contract for scripting: 0 success, 1 verification or query
//! failure, 2 usage error (bad flags, unreadable or empty input, malformed
//! container).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::codes::{FrequencyTable, TrimmedCodeBook};
use crate::container::{self, SymbolTable};
use crate::storage::{CompressedSequence, StorageStats, Variant};

#[derive(Parser)]
#[command(
    name = "vla",
    version,
    about = "Store a sequence under a variable-length code with fast access to any single letter"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Fixed,
    SigmaTr,
    SigmaBit,
    Blocked,
    Superletter,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Fixed => Variant::Fixed,
            VariantArg::SigmaTr => Variant::SigmaTr,
            VariantArg::SigmaBit => Variant::SigmaBit,
            VariantArg::Blocked => Variant::Blocked,
            VariantArg::Superletter => Variant::Superletter,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into a .vla container
    Build {
        input: PathBuf,
        output: PathBuf,
        /// Storage variant
        #[arg(long, value_enum, default_value_t = VariantArg::SigmaBit)]
        variant: VariantArg,
        /// Block count (blocked variant only)
        #[arg(long)]
        m: Option<usize>,
        /// Block length (superletter variant only)
        #[arg(long = "M")]
        block_len: Option<usize>,
        /// Treat whitespace-separated tokens as letters instead of bytes
        #[arg(long)]
        tokens: bool,
        /// Print the stats line as JSON
        #[arg(long)]
        json: bool,
    },
    /// Print letters i..i+count-1 of a container (1-based)
    Get {
        container: PathBuf,
        index: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Print size and entropy statistics of a container
    Stats {
        container: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a container against the original file
    Verify {
        container: PathBuf,
        original: PathBuf,
        /// Probe this many random positions instead of every letter
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Build every variant over an input and tabulate size against access cost
    Bench {
        input: PathBuf,
        /// Treat whitespace-separated tokens as letters instead of bytes
        #[arg(long)]
        tokens: bool,
        /// Emit one JSON object per grid cell
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Bad flags, unreadable or malformed input: exit 2.
    Usage(String),
    /// A query or verification that ran and failed: exit 1.
    Query(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Query(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(msg) | Failure::Query(msg) => msg,
        }
    }
}

/// Parses arguments from the environment and runs; returns the process exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version land here too; let clap pick the exit code
            // (0 for those, 2 for real usage errors).
            let _ = err.print();
            return err.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("vla: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Build {
            input,
            output,
            variant,
            m,
            block_len,
            tokens,
            json,
        } => cmd_build(&input, &output, variant.into(), m, block_len, tokens, json),
        Command::Get {
            container,
            index,
            count,
        } => cmd_get(&container, index, count),
        Command::Stats { container, json } => cmd_stats(&container, json),
        Command::Verify {
            container,
            original,
            sample,
        } => cmd_verify(&container, &original, sample),
        Command::Bench {
            input,
            tokens,
            json,
        } => cmd_bench(&input, tokens, json),
    }
}

struct ParsedInput {
    letters: Vec<u32>,
    alphabet_len: usize,
    symbols: SymbolTable,
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path)
        .map_err(|err| Failure::Usage(format!("cannot read {}: {err}", path.display())))
}

fn parse_input(path: &Path, tokens: bool) -> Result<ParsedInput, Failure> {
    let bytes = read_file(path)?;
    if bytes.is_empty() {
        return Err(Failure::Usage(format!("empty input: {}", path.display())));
    }
    if !tokens {
        return Ok(ParsedInput {
            letters: bytes.iter().map(|&b| b as u32).collect(),
            alphabet_len: 256,
            symbols: SymbolTable::Bytes,
        });
    }
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| Failure::Usage("token mode needs UTF-8 input".to_string()))?;
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.is_empty() {
        return Err(Failure::Usage(format!("empty input: {}", path.display())));
    }
    let mut dictionary: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    dictionary.sort_unstable();
    dictionary.dedup();
    if dictionary.len() < 2 {
        return Err(Failure::Usage(
            "token mode needs at least 2 distinct tokens".to_string(),
        ));
    }
    let letters = words
        .iter()
        .map(|w| dictionary.binary_search(&w.to_string()).unwrap() as u32)
        .collect();
    Ok(ParsedInput {
        letters,
        alphabet_len: dictionary.len(),
        symbols: SymbolTable::Tokens(dictionary),
    })
}

fn trimmed_code(letters: &[u32], alphabet_len: usize) -> Result<TrimmedCodeBook, Failure> {
    let freqs = FrequencyTable::from_sequence(letters, alphabet_len)
        .map_err(|err| Failure::Usage(err.to_string()))?;
    TrimmedCodeBook::from_frequencies(&freqs).map_err(|err| Failure::Usage(err.to_string()))
}

fn build_store(
    input: &ParsedInput,
    variant: Variant,
    m: Option<usize>,
    block_len: Option<usize>,
) -> Result<CompressedSequence, Failure> {
    if m.is_some() && variant != Variant::Blocked {
        return Err(Failure::Usage(
            "--m only applies to the blocked variant".to_string(),
        ));
    }
    if block_len.is_some() && variant != Variant::Superletter {
        return Err(Failure::Usage(
            "--M only applies to the superletter variant".to_string(),
        ));
    }
    let usage = |err: crate::Error| Failure::Usage(err.to_string());
    match variant {
        Variant::Fixed => {
            CompressedSequence::fixed(&input.letters, input.alphabet_len).map_err(usage)
        }
        Variant::SigmaTr => {
            let code = trimmed_code(&input.letters, input.alphabet_len)?;
            CompressedSequence::sigma_tr(&input.letters, code).map_err(usage)
        }
        Variant::SigmaBit => {
            let code = trimmed_code(&input.letters, input.alphabet_len)?;
            CompressedSequence::sigma_bit(&input.letters, code).map_err(usage)
        }
        Variant::Blocked => {
            let m = m.ok_or_else(|| {
                Failure::Usage("the blocked variant requires --m <blocks>".to_string())
            })?;
            let code = trimmed_code(&input.letters, input.alphabet_len)?;
            CompressedSequence::blocked(&input.letters, code, m).map_err(usage)
        }
        Variant::Superletter => {
            let block_len = block_len.ok_or_else(|| {
                Failure::Usage("the superletter variant requires --M <letters>".to_string())
            })?;
            CompressedSequence::superletter(&input.letters, input.alphabet_len, block_len)
                .map_err(usage)
        }
    }
}

fn format_stats(stats: &StorageStats) -> String {
    let mut line = format!(
        "{}: n={} L={} payload={} bits ({:.3} bits/letter), z={} index={} codebook={}, h1={:.3}",
        stats.variant,
        stats.n,
        stats.alphabet_len,
        stats.payload_bits,
        stats.bits_per_letter,
        stats.z_bits,
        stats.index_bits,
        stats.codebook_bits,
        stats.empirical_h1,
    );
    if let Some(hm) = stats.empirical_hm {
        line.push_str(&format!(" hM={hm:.3}"));
    }
    line.push_str(&format!(
        ", bound={:.0} slack={:.0}",
        stats.bound_bits, stats.slack_bits
    ));
    line
}

fn load_container(path: &Path) -> Result<(CompressedSequence, SymbolTable), Failure> {
    let bytes = read_file(path)?;
    container::deserialize(&bytes).map_err(|err| Failure::Usage(err.to_string()))
}

fn cmd_build(
    input_path: &Path,
    output_path: &Path,
    variant: Variant,
    m: Option<usize>,
    block_len: Option<usize>,
    tokens: bool,
    json: bool,
) -> Result<(), Failure> {
    let input = parse_input(input_path, tokens)?;
    let cs = build_store(&input, variant, m, block_len)?;
    let bytes = container::serialize_with_symbols(&cs, &input.symbols);
    std::fs::write(output_path, &bytes)
        .map_err(|err| Failure::Usage(format!("cannot write {}: {err}", output_path.display())))?;
    let stats = cs.stats().map_err(|err| Failure::Usage(err.to_string()))?;
    if json {
        println!("{}", serde_json::to_string(&stats).unwrap());
    } else {
        println!("wrote {} ({} bytes)", output_path.display(), bytes.len());
        println!("{}", format_stats(&stats));
    }
    Ok(())
}

fn cmd_get(container_path: &Path, index: usize, count: usize) -> Result<(), Failure> {
    let (cs, symbols) = load_container(container_path)?;
    if index == 0 || count == 0 || index + count - 1 > cs.len() {
        return Err(Failure::Query(format!(
            "letters {index}..{} out of range 1..={}",
            index + count.max(1) - 1,
            cs.len()
        )));
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match symbols {
        SymbolTable::Bytes => {
            let mut bytes = Vec::with_capacity(count);
            for i in index..index + count {
                let letter = cs
                    .access(i)
                    .map_err(|err| Failure::Query(err.to_string()))?;
                bytes.push(letter as u8);
            }
            out.write_all(&bytes)
                .map_err(|err| Failure::Usage(err.to_string()))?;
        }
        SymbolTable::Tokens(tokens) => {
            let mut words = Vec::with_capacity(count);
            for i in index..index + count {
                let letter = cs
                    .access(i)
                    .map_err(|err| Failure::Query(err.to_string()))?;
                words.push(
                    tokens
                        .get(letter as usize)
                        .ok_or_else(|| Failure::Query(format!("letter {letter} has no token")))?
                        .as_str(),
                );
            }
            writeln!(out, "{}", words.join(" ")).map_err(|err| Failure::Usage(err.to_string()))?;
        }
    }
    Ok(())
}

fn cmd_stats(container_path: &Path, json: bool) -> Result<(), Failure> {
    let (cs, _) = load_container(container_path)?;
    let stats = cs.stats().map_err(|err| Failure::Usage(err.to_string()))?;
    if json {
        println!("{}", serde_json::to_string(&stats).unwrap());
    } else {
        println!("{}", format_stats(&stats));
    }
    Ok(())
}

/// Reads the original through the container's own symbol mapping.
fn original_letters(bytes: &[u8], symbols: &SymbolTable) -> Result<Vec<u32>, Failure> {
    match symbols {
        SymbolTable::Bytes => Ok(bytes.iter().map(|&b| b as u32).collect()),
        SymbolTable::Tokens(tokens) => {
            let text = std::str::from_utf8(bytes)
                .map_err(|_| Failure::Query("original is not UTF-8 token input".to_string()))?;
            let lookup: std::collections::HashMap<&str, u32> = tokens
                .iter()
                .enumerate()
                .map(|(i, t)| (t.as_str(), i as u32))
                .collect();
            text.split_whitespace()
                .map(|w| {
                    lookup.get(w).copied().ok_or_else(|| {
                        Failure::Query(format!("token {w:?} absent from the container alphabet"))
                    })
                })
                .collect()
        }
    }
}

fn cmd_verify(
    container_path: &Path,
    original_path: &Path,
    sample: Option<usize>,
) -> Result<(), Failure> {
    let (cs, symbols) = load_container(container_path)?;
    let original = original_letters(&read_file(original_path)?, &symbols)?;
    if original.len() != cs.len() {
        return Err(Failure::Query(format!(
            "length mismatch: container has {} letters, original {}",
            cs.len(),
            original.len()
        )));
    }
    let positions: Vec<usize> = match sample {
        None => (1..=cs.len()).collect(),
        Some(k) => {
            // Fixed seed: repeated runs probe the same positions.
            let mut rng = StdRng::seed_from_u64(0x76_1a);
            (0..k).map(|_| rng.random_range(1..=cs.len())).collect()
        }
    };
    for &i in &positions {
        let got = cs
            .access(i)
            .map_err(|err| Failure::Query(err.to_string()))?;
        if got != original[i - 1] {
            return Err(Failure::Query(format!(
                "mismatch at letter {i}: container {got}, original {}",
                original[i - 1]
            )));
        }
    }
    println!("verify: OK ({} letters checked)", positions.len());
    Ok(())
}

#[derive(Serialize)]
struct BenchCell {
    variant: &'static str,
    n: usize,
    m: Option<usize>,
    block_len: Option<usize>,
    bits_per_letter: f64,
    slack_bits: f64,
    index_words_avg: f64,
    index_words_max: usize,
    ns_per_access: f64,
}

fn bench_cell(
    cs: &CompressedSequence,
    label_m: Option<usize>,
    probes: usize,
) -> Result<BenchCell, Failure> {
    let stats = cs.stats().map_err(|err| Failure::Usage(err.to_string()))?;
    let mut rng = StdRng::seed_from_u64(0xbe_0c);
    let indices: Vec<usize> = (0..probes)
        .map(|_| rng.random_range(1..=cs.len()))
        .collect();
    let mut words_total = 0usize;
    let mut words_max = 0usize;
    let started = Instant::now();
    for &i in &indices {
        let (_, cost) = cs
            .access_traced(i)
            .map_err(|err| Failure::Usage(err.to_string()))?;
        words_total += cost.index_words;
        words_max = words_max.max(cost.index_words);
    }
    let elapsed = started.elapsed();
    Ok(BenchCell {
        variant: cs.variant().name(),
        n: cs.len(),
        m: label_m,
        block_len: cs.block_len(),
        bits_per_letter: stats.bits_per_letter,
        slack_bits: stats.slack_bits,
        index_words_avg: words_total as f64 / indices.len() as f64,
        index_words_max: words_max,
        ns_per_access: elapsed.as_nanos() as f64 / indices.len() as f64,
    })
}

fn print_cell(cell: &BenchCell, json: bool) {
    if json {
        println!("{}", serde_json::to_string(cell).unwrap());
        return;
    }
    let params = match (cell.m, cell.block_len) {
        (Some(m), Some(block_len)) => format!("m={m} M={block_len}"),
        (None, Some(block_len)) => format!("M={block_len}"),
        _ => String::new(),
    };
    println!(
        "{:<12} {:<12} {:>10.3} {:>12.0} {:>9.2} {:>9} {:>12.0}",
        cell.variant,
        params,
        cell.bits_per_letter,
        cell.slack_bits,
        cell.index_words_avg,
        cell.index_words_max,
        cell.ns_per_access,
    );
}

fn cmd_bench(input_path: &Path, tokens: bool, json: bool) -> Result<(), Failure> {
    let input = parse_input(input_path, tokens)?;
    let n = input.letters.len();
    let probes = n.min(256);

    if !json {
        println!(
            "{:<12} {:<12} {:>10} {:>12} {:>9} {:>9} {:>12}",
            "variant", "params", "bits/ltr", "slack", "words/avg", "words/max", "ns/access*"
        );
    }

    let fixed = CompressedSequence::fixed(&input.letters, input.alphabet_len)
        .map_err(|err| Failure::Usage(err.to_string()))?;
    print_cell(&bench_cell(&fixed, None, probes)?, json);

    let code = trimmed_code(&input.letters, input.alphabet_len)?;
    // Linear scans make per-probe cost O(N); keep this row cheap.
    let tr = CompressedSequence::sigma_tr(&input.letters, code.clone())
        .map_err(|err| Failure::Usage(err.to_string()))?;
    print_cell(&bench_cell(&tr, None, probes.min(64))?, json);

    let bit = CompressedSequence::sigma_bit(&input.letters, code.clone())
        .map_err(|err| Failure::Usage(err.to_string()))?;
    print_cell(&bench_cell(&bit, None, probes)?, json);

    // Block lengths M = N^alpha trade index size against walk length.
    for alpha in [0.25f64, 0.5, 0.75] {
        let block_len = ((n as f64).powf(alpha).round() as usize).clamp(1, n);
        let m = n.div_ceil(block_len);
        let cs = CompressedSequence::blocked(&input.letters, code.clone(), m)
            .map_err(|err| Failure::Usage(err.to_string()))?;
        print_cell(&bench_cell(&cs, Some(m), probes)?, json);
    }

    // Superletters: small fixed block lengths plus M = ceil(log N), the
    // m = N / log N trade-off.
    let mut block_lens: Vec<usize> = [1usize, 2, 4, 8].into_iter().filter(|&m| m <= n).collect();
    let log_n = ((n as f64).log2().ceil() as usize).clamp(1, n);
    if !block_lens.contains(&log_n) {
        block_lens.push(log_n);
    }
    for block_len in block_lens {
        let cs = CompressedSequence::superletter(&input.letters, input.alphabet_len, block_len)
            .map_err(|err| Failure::Usage(err.to_string()))?;
        let m = n.div_ceil(block_len);
        print_cell(&bench_cell(&cs, Some(m), probes)?, json);
    }

    // Concurrent readers against one immutable store.
    let expected = bit
        .decode_all()
        .map_err(|err| Failure::Usage(err.to_string()))?;
    let per_thread = n.min(1000);
    let threads = 4;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let bit = &bit;
                let expected = &expected;
                scope.spawn(move || {
                    let mut rng = StdRng::seed_from_u64(0xc0 + t as u64);
                    for _ in 0..per_thread {
                        let i = rng.random_range(1..=expected.len());
                        assert_eq!(bit.access(i).unwrap(), expected[i - 1]);
                    }
                })
            })
            .collect();
        for handle in handles {
            handle.join().expect("concurrent probe thread");
        }
    });
    if !json {
        println!(
            "concurrent: {threads} threads x {per_thread} probes OK; *ns column is informational"
        );
    }
    Ok(())
}
