//! Storage variants for a letter sequence with direct access to any letter.
//!
//! Every variant keeps the concatenated codeword stream `z` and differs in
//! the auxiliary index used to locate the codeword of letter `i`:
//!
//! - [`Variant::Fixed`]: fixed-width codewords, offset is plain arithmetic.
//! - [`Variant::SigmaTr`]: a flat stream `y` of codeword lengths; the offset
//!   is the sum of the first `i − 1` entries, found by linear scan.
//! - [`Variant::SigmaBit`]: the lengths feed a [`PrefixSumTree`] instead, so
//!   the scan becomes a logarithmic walk.
//! - [`Variant::Blocked`]: the sequence splits into blocks with a table of
//!   block start offsets and one small tree per block.
//! - [`Variant::Superletter`]: `M`-letter blocks become letters of a derived
//!   alphabet and the block sequence is stored as `SigmaBit`; decoding a
//!   letter decodes its block.
//!
//! Length fields store `length − 1`: the largest trimmed codeword length
//! `λ` can be a power of two, in which case `λ` itself does not fit the
//! `σ = ⌈log λ⌉` bits reserved per entry, while `λ − 1` always does. Offsets
//! add the count of skipped letters back.
//!
//! All letter indices at this interface are 1-based; `access(i)` returns the
//! `i`-th letter of the original sequence.

use serde::Serialize;

use crate::bitstore::{bits_to_store, BitSequence, PackedIntArray};
use crate::codes::{Alphabet, CodeBook, DecodeTable, FrequencyTable, TrimmedCodeBook};
use crate::error::{Error, Result};
use crate::prefix_tree::PrefixSumTree;

/// Which storage layout a [`CompressedSequence`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Fixed,
    SigmaTr,
    SigmaBit,
    Blocked,
    Superletter,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Fixed,
        Variant::SigmaTr,
        Variant::SigmaBit,
        Variant::Blocked,
        Variant::Superletter,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Fixed => "fixed",
            Variant::SigmaTr => "sigma-tr",
            Variant::SigmaBit => "sigma-bit",
            Variant::Blocked => "blocked",
            Variant::Superletter => "superletter",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Index-structure reads performed by one `access` call. Word counts, not
/// wall time: one packed-array or table entry read counts as one word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AccessCost {
    pub index_words: usize,
}

pub(crate) enum Body {
    Fixed {
        code: CodeBook,
    },
    SigmaTr {
        code: TrimmedCodeBook,
        table: DecodeTable,
        y: PackedIntArray,
    },
    SigmaBit {
        code: TrimmedCodeBook,
        table: DecodeTable,
        tree: PrefixSumTree,
    },
    Blocked {
        code: TrimmedCodeBook,
        table: DecodeTable,
        block_len: usize,
        offsets: PackedIntArray,
        trees: Vec<PrefixSumTree>,
    },
    Superletter {
        block_len: usize,
        block_letters: Vec<Vec<u32>>,
        block_code: TrimmedCodeBook,
        block_table: DecodeTable,
        tree: PrefixSumTree,
    },
}

/// A letter sequence stored under one of the five variants.
pub struct CompressedSequence {
    n: usize,
    alphabet_len: usize,
    z: BitSequence,
    pub(crate) body: Body,
}

/// Encodes `x` with the trimmed code, returning the stream and per-letter
/// codeword lengths.
fn encode_stream(x: &[u32], code: &TrimmedCodeBook) -> Result<(BitSequence, Vec<u64>)> {
    if x.is_empty() {
        return Err(Error::invalid_input("empty input sequence"));
    }
    let mut z = BitSequence::with_capacity(x.len() * code.lambda() as usize);
    let mut lengths = Vec::with_capacity(x.len());
    for &a in x {
        let (bits, width) = code
            .encode(a as usize)
            .map_err(|_| Error::invalid_input(format!("letter {a} outside alphabet")))?;
        z.append_bits(bits, width as usize)?;
        lengths.push(width as u64);
    }
    Ok((z, lengths))
}

impl CompressedSequence {
    /// Baseline: every letter in `⌈log L⌉` fixed bits, no index.
    pub fn fixed(x: &[u32], alphabet_len: usize) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid_input("empty input sequence"));
        }
        let code = CodeBook::fixed_width(alphabet_len)?;
        let mut z = BitSequence::with_capacity(x.len() * code.lengths()[0] as usize);
        for &a in x {
            if a as usize >= alphabet_len {
                return Err(Error::invalid_input(format!("letter {a} outside alphabet")));
            }
            let (bits, width) = code.codeword(a as usize)?;
            z.append_bits(bits, width as usize)?;
        }
        Ok(Self {
            n: x.len(),
            alphabet_len,
            z,
            body: Body::Fixed { code },
        })
    }

    /// Two-stream layout: trimmed codewords in `z`, codeword lengths
    /// (minus one, in `σ`-bit fields) in `y`.
    pub fn sigma_tr(x: &[u32], code: TrimmedCodeBook) -> Result<Self> {
        let (z, lengths) = encode_stream(x, &code)?;
        let mut y = PackedIntArray::new(code.sigma() as usize, x.len())?;
        for (i, &len) in lengths.iter().enumerate() {
            y.set(i, len - 1)?;
        }
        debug_assert_eq!(
            lengths.iter().sum::<u64>() as usize,
            z.len(),
            "length stream must account for every bit of z"
        );
        let table = DecodeTable::new(&code)?;
        Ok(Self {
            n: x.len(),
            alphabet_len: code.alphabet_len(),
            z,
            body: Body::SigmaTr { code, table, y },
        })
    }

    /// Tree-indexed layout: same `z`, lengths held in a prefix-sum tree.
    pub fn sigma_bit(x: &[u32], code: TrimmedCodeBook) -> Result<Self> {
        let (z, lengths) = encode_stream(x, &code)?;
        let stored: Vec<u64> = lengths.iter().map(|&l| l - 1).collect();
        let tree = PrefixSumTree::build(&stored, code.sigma())?;
        let table = DecodeTable::new(&code)?;
        Ok(Self {
            n: x.len(),
            alphabet_len: code.alphabet_len(),
            z,
            body: Body::SigmaBit { code, table, tree },
        })
    }

    /// Blocked layout: `m` requested blocks of `M = ⌈N/m⌉` letters (the last
    /// may be short), a table of block start offsets, and one prefix-sum
    /// tree per block.
    ///
    /// The table holds `⌈N/M⌉` entries, which is exactly `m` whenever `m`
    /// divides `N` and can be smaller otherwise.
    pub fn blocked(x: &[u32], code: TrimmedCodeBook, m: usize) -> Result<Self> {
        if m == 0 || m > x.len() {
            return Err(Error::invalid_input(format!(
                "block count {m} not in 1..={}",
                x.len()
            )));
        }
        let (z, lengths) = encode_stream(x, &code)?;
        let block_len = x.len().div_ceil(m);
        let n_blocks = x.len().div_ceil(block_len);

        let offset_width = bits_to_store(z.len() as u64) as usize;
        let mut offsets = PackedIntArray::new(offset_width, n_blocks)?;
        let mut trees = Vec::with_capacity(n_blocks);
        let mut bit_pos = 0u64;
        for (b, chunk) in lengths.chunks(block_len).enumerate() {
            offsets.set(b, bit_pos)?;
            let stored: Vec<u64> = chunk.iter().map(|&l| l - 1).collect();
            trees.push(PrefixSumTree::build(&stored, code.sigma())?);
            bit_pos += chunk.iter().sum::<u64>();
        }
        let table = DecodeTable::new(&code)?;
        Ok(Self {
            n: x.len(),
            alphabet_len: code.alphabet_len(),
            z,
            body: Body::Blocked {
                code,
                table,
                block_len,
                offsets,
                trees,
            },
        })
    }

    /// Superletter layout: consecutive `block_len`-letter blocks become
    /// letters of a derived alphabet; a trimmed Huffman code over the block
    /// frequencies is built and the block sequence is stored tree-indexed.
    pub fn superletter(x: &[u32], alphabet_len: usize, block_len: usize) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid_input("empty input sequence"));
        }
        if block_len == 0 || block_len > x.len() {
            return Err(Error::invalid_input(format!(
                "block length {block_len} not in 1..={}",
                x.len()
            )));
        }
        Alphabet::new(alphabet_len)?;
        for &a in x {
            if a as usize >= alphabet_len {
                return Err(Error::invalid_input(format!("letter {a} outside alphabet")));
            }
        }

        // Distinct observed blocks only; a short final block is zero-padded
        // to full width, which cannot be told apart from a full block with
        // the same prefix and never needs to be.
        let mut block_letters: Vec<Vec<u32>> = Vec::new();
        let mut ids: std::collections::HashMap<Vec<u32>, u32> = std::collections::HashMap::new();
        let mut block_seq: Vec<u32> = Vec::with_capacity(x.len().div_ceil(block_len));
        for chunk in x.chunks(block_len) {
            let mut block = chunk.to_vec();
            block.resize(block_len, 0);
            let next = block_letters.len() as u32;
            let id = *ids.entry(block.clone()).or_insert_with(|| {
                block_letters.push(block);
                next
            });
            block_seq.push(id);
        }
        if block_letters.len() < 2 {
            // Keep the derived alphabet at two letters; the dummy gets a
            // smoothed count and is never decoded.
            block_letters.push(vec![0; block_len]);
        }

        let freqs = FrequencyTable::from_sequence(&block_seq, block_letters.len())?;
        let block_code = TrimmedCodeBook::from_frequencies(&freqs)?;
        let (z, lengths) = encode_stream(&block_seq, &block_code)?;
        let stored: Vec<u64> = lengths.iter().map(|&l| l - 1).collect();
        let tree = PrefixSumTree::build(&stored, block_code.sigma())?;
        let block_table = DecodeTable::new(&block_code)?;
        Ok(Self {
            n: x.len(),
            alphabet_len,
            z,
            body: Body::Superletter {
                block_len,
                block_letters,
                block_code,
                block_table,
                tree,
            },
        })
    }

    pub(crate) fn from_parts(n: usize, alphabet_len: usize, z: BitSequence, body: Body) -> Self {
        Self {
            n,
            alphabet_len,
            z,
            body,
        }
    }

    /// Letters stored.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Base alphabet size `L`.
    #[inline]
    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    pub fn variant(&self) -> Variant {
        match &self.body {
            Body::Fixed { .. } => Variant::Fixed,
            Body::SigmaTr { .. } => Variant::SigmaTr,
            Body::SigmaBit { .. } => Variant::SigmaBit,
            Body::Blocked { .. } => Variant::Blocked,
            Body::Superletter { .. } => Variant::Superletter,
        }
    }

    /// The concatenated codeword stream (block codewords for the superletter
    /// variant).
    #[inline]
    pub fn z(&self) -> &BitSequence {
        &self.z
    }

    /// The flat stream of stored codeword lengths (`σ`-bit fields holding
    /// `length − 1`); present in the `SigmaTr` variant only.
    pub fn length_fields(&self) -> Option<&PackedIntArray> {
        match &self.body {
            Body::SigmaTr { y, .. } => Some(y),
            _ => None,
        }
    }

    /// Block length `M` for the blocked and superletter variants.
    pub fn block_len(&self) -> Option<usize> {
        match &self.body {
            Body::Blocked { block_len, .. } | Body::Superletter { block_len, .. } => {
                Some(*block_len)
            }
            _ => None,
        }
    }

    /// Entries in the block-start table (blocked variant).
    pub fn block_count(&self) -> Option<usize> {
        match &self.body {
            Body::Blocked { offsets, .. } => Some(offsets.len()),
            Body::Superletter { block_len, .. } => Some(self.n.div_ceil(*block_len)),
            _ => None,
        }
    }

    /// Returns the `i`-th letter (1-based).
    pub fn access(&self, i: usize) -> Result<u32> {
        self.access_inner(i, &mut AccessCost::default())
    }

    /// Returns the `i`-th letter plus the number of index words the lookup
    /// touched.
    pub fn access_traced(&self, i: usize) -> Result<(u32, AccessCost)> {
        let mut cost = AccessCost::default();
        let letter = self.access_inner(i, &mut cost)?;
        Ok((letter, cost))
    }

    fn access_inner(&self, i: usize, cost: &mut AccessCost) -> Result<u32> {
        if i == 0 || i > self.n {
            return Err(Error::bounds(format!(
                "letter index {i} not in 1..={}",
                self.n
            )));
        }
        match &self.body {
            Body::Fixed { code } => {
                let width = code.lengths()[0] as usize;
                let value = self.z.read_bits((i - 1) * width, width)?;
                if value >= self.alphabet_len as u64 {
                    return Err(Error::corruption(format!(
                        "fixed-width value {value} outside alphabet"
                    )));
                }
                Ok(value as u32)
            }
            Body::SigmaTr { table, y, .. } => {
                // Linear scan: offset is the sum of the earlier codeword
                // lengths, each stored minus one.
                let mut offset = 0u64;
                for k in 0..i - 1 {
                    offset += y.load(k) + 1;
                }
                cost.index_words += i - 1;
                let (letter, _) = table.decode_at(&self.z, offset as usize)?;
                Ok(letter)
            }
            Body::SigmaBit { table, tree, .. } => {
                let mut touched = 0usize;
                let offset = tree.prefix_sum_counted(i - 1, &mut touched)? + (i - 1) as u64;
                cost.index_words += touched;
                let (letter, _) = table.decode_at(&self.z, offset as usize)?;
                Ok(letter)
            }
            Body::Blocked {
                table,
                block_len,
                offsets,
                trees,
                ..
            } => {
                let block = (i - 1) / block_len;
                let within = (i - 1) % block_len;
                cost.index_words += 1;
                let mut touched = 0usize;
                let offset = offsets.load(block)
                    + trees[block].prefix_sum_counted(within, &mut touched)?
                    + within as u64;
                cost.index_words += touched;
                let (letter, _) = table.decode_at(&self.z, offset as usize)?;
                Ok(letter)
            }
            Body::Superletter {
                block_len,
                block_letters,
                block_table,
                tree,
                ..
            } => {
                let block = (i - 1) / block_len;
                let mut touched = 0usize;
                let offset = tree.prefix_sum_counted(block, &mut touched)? + block as u64;
                cost.index_words += touched;
                let (block_letter, _) = block_table.decode_at(&self.z, offset as usize)?;
                let letters = block_letters.get(block_letter as usize).ok_or_else(|| {
                    Error::corruption(format!("block letter {block_letter} has no contents"))
                })?;
                Ok(letters[(i - 1) % block_len])
            }
        }
    }

    /// Decodes the whole sequence front to back.
    pub fn decode_all(&self) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(self.n);
        match &self.body {
            Body::Fixed { code } => {
                let width = code.lengths()[0] as usize;
                for i in 0..self.n {
                    out.push(self.z.read_bits(i * width, width)? as u32);
                }
            }
            Body::SigmaTr { table, .. }
            | Body::SigmaBit { table, .. }
            | Body::Blocked { table, .. } => {
                let mut offset = 0usize;
                for _ in 0..self.n {
                    let (letter, width) = table.decode_at(&self.z, offset)?;
                    out.push(letter);
                    offset += width as usize;
                }
            }
            Body::Superletter {
                block_len,
                block_letters,
                block_table,
                ..
            } => {
                let mut offset = 0usize;
                while out.len() < self.n {
                    let (block_letter, width) = block_table.decode_at(&self.z, offset)?;
                    offset += width as usize;
                    let letters = &block_letters[block_letter as usize];
                    let take = (*block_len).min(self.n - out.len());
                    out.extend_from_slice(&letters[..take]);
                }
            }
        }
        Ok(out)
    }

    /// Decodes the block-letter sequence of a superletter store.
    pub(crate) fn decode_block_sequence(&self) -> Result<Vec<u32>> {
        match &self.body {
            Body::Superletter {
                block_len,
                block_table,
                ..
            } => {
                let n_blocks = self.n.div_ceil(*block_len);
                let mut out = Vec::with_capacity(n_blocks);
                let mut offset = 0usize;
                for _ in 0..n_blocks {
                    let (block_letter, width) = block_table.decode_at(&self.z, offset)?;
                    out.push(block_letter);
                    offset += width as usize;
                }
                Ok(out)
            }
            _ => Err(Error::invalid_input("not a superletter store")),
        }
    }

    /// Bits in the auxiliary index (everything except `z` and the codebook).
    pub fn index_bits(&self) -> usize {
        match &self.body {
            Body::Fixed { .. } => 0,
            Body::SigmaTr { y, .. } => y.payload_bits(),
            Body::SigmaBit { tree, .. } => tree.memory_bits(),
            Body::Blocked { offsets, trees, .. } => {
                offsets.payload_bits() + trees.iter().map(|t| t.memory_bits()).sum::<usize>()
            }
            Body::Superletter { tree, .. } => tree.memory_bits(),
        }
    }

    /// Bits describing the code itself: one byte per letter length, plus the
    /// packed block contents for the superletter variant.
    pub fn codebook_bits(&self) -> usize {
        match &self.body {
            Body::Fixed { .. }
            | Body::SigmaTr { .. }
            | Body::SigmaBit { .. }
            | Body::Blocked { .. } => 8 * self.alphabet_len,
            Body::Superletter {
                block_letters,
                block_len,
                ..
            } => {
                let letter_width = bits_to_store(self.alphabet_len as u64 - 1) as usize;
                8 * block_letters.len() + block_letters.len() * block_len * letter_width
            }
        }
    }

    /// Measured sizes, empirical entropies, the applicable size bound, and
    /// its slack.
    ///
    /// Bounds count `z` plus the index; the codebook is reported separately,
    /// matching a known code distribution. The superletter bound is the
    /// tree-indexed bound applied to the block sequence over its derived
    /// alphabet.
    pub fn stats(&self) -> Result<StorageStats> {
        let letters = self.decode_all()?;
        let freqs = FrequencyTable::from_sequence(&letters, self.alphabet_len)?;
        let h1 = freqs.entropy();
        let n = self.n as f64;
        let l = self.alphabet_len as f64;

        let z_bits = self.z.len();
        let index_bits = self.index_bits();
        let payload_bits = z_bits + index_bits;
        let codebook_bits = self.codebook_bits();

        let mut empirical_hm = None;
        let bound_bits = match &self.body {
            Body::Fixed { .. } => n * l.log2().ceil(),
            Body::SigmaTr { .. } => n * (h1 + (l.log2() + 2.0).log2() + 3.0),
            Body::SigmaBit { .. } => n * (h1 + (l + 2.0).log2().log2() + 4.0),
            Body::Blocked { offsets, code, .. } => {
                let table_width = (n * (code.ell() as f64 + 1.0)).log2().ceil();
                n * (h1 + (l + 2.0).log2().log2() + 4.0) + offsets.len() as f64 * table_width
            }
            Body::Superletter {
                block_len,
                block_letters,
                ..
            } => {
                let blocks = self.decode_block_sequence()?;
                let block_freqs = FrequencyTable::from_sequence(&blocks, block_letters.len())?;
                let hm = block_freqs.entropy() / *block_len as f64;
                empirical_hm = Some(hm);
                let b = blocks.len() as f64;
                let l_blocks = block_letters.len() as f64;
                b * (*block_len as f64 * hm + (l_blocks + 2.0).log2().log2() + 4.0)
            }
        };

        Ok(StorageStats {
            variant: self.variant(),
            n: self.n,
            alphabet_len: self.alphabet_len,
            block_count: self.block_count(),
            block_len: self.block_len(),
            z_bits,
            index_bits,
            codebook_bits,
            payload_bits,
            total_bits: payload_bits + codebook_bits,
            bits_per_letter: payload_bits as f64 / n,
            empirical_h1: h1,
            empirical_hm,
            bound_bits,
            slack_bits: bound_bits - payload_bits as f64,
        })
    }
}

/// Measured sizes and bound slack for one built sequence.
///
/// `bits_per_letter` and `slack_bits` count `z + index` (the paper-style
/// accounting with a known code); `total_bits` adds the codebook.
#[derive(Debug, Clone, Serialize)]
pub struct StorageStats {
    pub variant: Variant,
    pub n: usize,
    pub alphabet_len: usize,
    pub block_count: Option<usize>,
    pub block_len: Option<usize>,
    pub z_bits: usize,
    pub index_bits: usize,
    pub codebook_bits: usize,
    pub payload_bits: usize,
    pub total_bits: usize,
    pub bits_per_letter: f64,
    pub empirical_h1: f64,
    pub empirical_hm: Option<f64>,
    pub bound_bits: f64,
    pub slack_bits: f64,
}
