//! Prefix-free codes: canonical Huffman construction, the trimming transform
//! that caps codeword length at `⌈log L⌉ + 1`, and constant-time decoding at
//! an arbitrary bit offset.
//!
//! A trimmed codeword is either `0·C(a)` when the base codeword `C(a)` is at
//! most `⌈log L⌉` bits, or `1·bin(i)` where `bin(i)` is the letter index in
//! `⌈log L⌉` fixed bits. Long codewords get shorter, short ones pay one flag
//! bit, and the maximum length drops to `λ = ⌈log L⌉ + 1` bits, which is what
//! makes single-window table decoding possible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitstore::{ceil_log2, BitSequence};
use crate::error::{Error, Result};

/// An indexed alphabet of `L >= 2` letters. Letters are dense indices
/// `0..L-1`; any external symbol mapping (bytes, tokens) is kept alongside by
/// the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    len: usize,
}

impl Alphabet {
    pub fn new(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::invalid_input(format!(
                "alphabet needs at least 2 letters, got {len}"
            )));
        }
        if len > u32::MAX as usize {
            return Err(Error::range(format!("alphabet of {len} letters too large")));
        }
        Ok(Self { len })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Width of a fixed-width letter code: `⌈log L⌉`.
    #[inline]
    pub fn code_width(&self) -> u32 {
        ceil_log2(self.len as u64)
    }

    /// Maximum trimmed codeword length: `⌈log L⌉ + 1`.
    #[inline]
    pub fn lambda(&self) -> u32 {
        self.code_width() + 1
    }
}

/// Per-letter occurrence counts with their total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        Alphabet::new(counts.len())?;
        let mut total: u64 = 0;
        for &c in &counts {
            total = total
                .checked_add(c)
                .ok_or_else(|| Error::range("total count overflows u64"))?;
        }
        if total == 0 {
            return Err(Error::invalid_input("all letter counts are zero"));
        }
        Ok(Self { counts, total })
    }

    /// Counts letter occurrences in `letters` over an alphabet of `len`
    /// letters.
    pub fn from_sequence(letters: &[u32], len: usize) -> Result<Self> {
        Alphabet::new(len)?;
        let mut counts = vec![0u64; len];
        for &a in letters {
            let slot = counts.get_mut(a as usize).ok_or_else(|| {
                Error::invalid_input(format!("letter {a} outside alphabet of {len}"))
            })?;
            *slot += 1;
        }
        Self::from_counts(counts)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn probability(&self, letter: usize) -> f64 {
        self.counts[letter] as f64 / self.total as f64
    }

    /// Empirical first-order entropy in bits per letter.
    pub fn entropy(&self) -> f64 {
        let total = self.total as f64;
        self.counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / total;
                -p * p.log2()
            })
            .sum()
    }

    /// Average codeword length under `lengths`, in bits per letter.
    pub fn average_length(&self, lengths: &[u8]) -> f64 {
        debug_assert_eq!(lengths.len(), self.counts.len());
        let total = self.total as f64;
        self.counts
            .iter()
            .zip(lengths)
            .map(|(&c, &l)| c as f64 * l as f64)
            .sum::<f64>()
            / total
    }
}

/// A canonical prefix-free code: per-letter lengths plus the codewords the
/// canonical numbering rule assigns to them.
///
/// Canonical codewords are fully determined by the lengths (sort letters by
/// `(length, index)`, assign increasing binary values), so a codebook
/// serializes as lengths only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBook {
    lengths: Vec<u8>,
    codewords: Vec<u64>,
}

impl CodeBook {
    /// Builds Huffman lengths for `freqs` and assigns canonical codewords.
    ///
    /// Letters with zero count are given count 1 first, so every letter of
    /// the alphabet stays encodable. Merge ties break on
    /// `(weight, smallest contained letter)`, making the result deterministic.
    pub fn huffman(freqs: &FrequencyTable) -> Result<Self> {
        if freqs.counts.iter().all(|&c| c == 0) {
            return Err(Error::invalid_input("all letter counts are zero"));
        }
        let weights: Vec<u64> = freqs.counts.iter().map(|&c| c.max(1)).collect();
        let lengths = huffman_lengths(&weights)?;
        Self::from_lengths(lengths)
    }

    /// The fixed-width baseline: every letter coded as its index in
    /// `⌈log L⌉` bits.
    pub fn fixed_width(len: usize) -> Result<Self> {
        let width = Alphabet::new(len)?.code_width();
        Self::from_lengths(vec![width as u8; len])
    }

    /// Reconstructs the canonical codebook from stored lengths.
    pub fn from_lengths(lengths: Vec<u8>) -> Result<Self> {
        Alphabet::new(lengths.len())?;
        let codewords = canonical_codewords(&lengths)?;
        Ok(Self { lengths, codewords })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    /// The codeword of `letter` as `(bits, width)`.
    pub fn codeword(&self, letter: usize) -> Result<(u64, u8)> {
        if letter >= self.lengths.len() {
            return Err(Error::bounds(format!(
                "letter {letter} outside alphabet of {}",
                self.lengths.len()
            )));
        }
        Ok((self.codewords[letter], self.lengths[letter]))
    }

    /// `Σ 2^-length`, at most 1 for a prefix-free code.
    pub fn kraft_sum(&self) -> f64 {
        self.lengths.iter().map(|&l| (-(l as f64)).exp2()).sum()
    }
}

/// Optimal prefix-code lengths for `weights` (all nonzero) by pairwise
/// merging.
fn huffman_lengths(weights: &[u64]) -> Result<Vec<u8>> {
    let n = weights.len();
    debug_assert!(n >= 2);

    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct Item {
        weight: u64,
        min_letter: u32,
        node: u32,
    }

    // Nodes 0..n are leaves; merges append parents behind them.
    let mut parent: Vec<u32> = Vec::with_capacity(2 * n - 1);
    parent.resize(n, u32::MAX);
    let mut heap: BinaryHeap<Reverse<Item>> = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            Reverse(Item {
                weight: w,
                min_letter: i as u32,
                node: i as u32,
            })
        })
        .collect();

    while heap.len() > 1 {
        let Reverse(a) = heap.pop().unwrap();
        let Reverse(b) = heap.pop().unwrap();
        let merged = parent.len() as u32;
        parent[a.node as usize] = merged;
        parent[b.node as usize] = merged;
        parent.push(u32::MAX);
        let weight = a
            .weight
            .checked_add(b.weight)
            .ok_or_else(|| Error::range("merged weight overflows u64"))?;
        heap.push(Reverse(Item {
            weight,
            min_letter: a.min_letter.min(b.min_letter),
            node: merged,
        }));
    }

    let mut lengths = vec![0u8; n];
    for (leaf, length) in lengths.iter_mut().enumerate() {
        let mut depth = 0u32;
        let mut node = leaf as u32;
        while parent[node as usize] != u32::MAX {
            node = parent[node as usize];
            depth += 1;
        }
        if depth > 64 {
            return Err(Error::range(format!(
                "codeword length {depth} exceeds 64 bits"
            )));
        }
        *length = depth as u8;
    }
    Ok(lengths)
}

/// Assigns canonical codewords: letters ordered by `(length, index)` receive
/// consecutive binary values, left-shifted when the length increases.
fn canonical_codewords(lengths: &[u8]) -> Result<Vec<u64>> {
    if lengths.iter().any(|&l| l == 0 || l > 64) {
        return Err(Error::corruption("codeword length outside 1..=64"));
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));

    let mut codewords = vec![0u64; lengths.len()];
    let mut code: u64 = 0;
    let mut prev_len = lengths[order[0]];
    for (rank, &letter) in order.iter().enumerate() {
        let len = lengths[letter];
        if rank > 0 {
            code = (code + 1) << (len - prev_len);
        }
        // The code space at this length is 2^len; running out means the
        // lengths violate the Kraft inequality.
        if len < 64 && code >> len != 0 {
            return Err(Error::corruption(
                "codeword lengths violate the Kraft inequality",
            ));
        }
        codewords[letter] = code;
        prev_len = len;
    }
    Ok(codewords)
}

/// The trimming transform of a base codebook: every codeword capped at
/// `λ = ⌈log L⌉ + 1` bits including the flag bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedCodeBook {
    base: CodeBook,
    ell: u32,
    words: Vec<(u64, u8)>,
}

impl TrimmedCodeBook {
    /// Applies the trimming rule to `base`: letters whose base codeword fits
    /// `⌈log L⌉` bits become `0·C(a)`, all others become `1·bin(index)`.
    pub fn trim(base: CodeBook) -> Result<Self> {
        let len = base.len();
        let ell = Alphabet::new(len)?.code_width();
        let words = (0..len)
            .map(|i| {
                let (bits, width) = (base.codewords[i], base.lengths[i]);
                if (width as u32) <= ell {
                    // 0-branch keeps the base bits; the flag 0 is implicit in
                    // the widened field.
                    (bits, width + 1)
                } else {
                    ((1u64 << ell) | i as u64, ell as u8 + 1)
                }
            })
            .collect();
        Ok(Self { base, ell, words })
    }

    /// Convenience: Huffman code over `freqs`, then trim.
    pub fn from_frequencies(freqs: &FrequencyTable) -> Result<Self> {
        Self::trim(CodeBook::huffman(freqs)?)
    }

    #[inline]
    pub fn alphabet_len(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn base(&self) -> &CodeBook {
        &self.base
    }

    /// `⌈log L⌉`.
    #[inline]
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Maximum trimmed codeword length `λ = ⌈log L⌉ + 1`.
    #[inline]
    pub fn lambda(&self) -> u32 {
        self.ell + 1
    }

    /// Bits needed for one stored length field: `σ = ⌈log λ⌉`.
    #[inline]
    pub fn sigma(&self) -> u32 {
        ceil_log2(self.lambda() as u64)
    }

    /// The trimmed codeword of `letter` as `(bits, width)`.
    pub fn encode(&self, letter: usize) -> Result<(u64, u8)> {
        self.words.get(letter).copied().ok_or_else(|| {
            Error::bounds(format!(
                "letter {letter} outside alphabet of {}",
                self.alphabet_len()
            ))
        })
    }

    /// Trimmed codeword length of `letter` in bits.
    #[inline]
    pub fn length(&self, letter: usize) -> u8 {
        self.words[letter].1
    }

    pub fn average_length(&self, freqs: &FrequencyTable) -> f64 {
        let lengths: Vec<u8> = self.words.iter().map(|&(_, w)| w).collect();
        freqs.average_length(&lengths)
    }
}

// Valid trimmed widths are >= 2, so 0 can mark empty table slots.
const NO_ENTRY: u32 = 0;

/// A `2^λ`-entry lookup table decoding any trimmed codeword with a single
/// read of a λ-bit window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTable {
    lambda: u32,
    // letter << 8 | width
    entries: Vec<u32>,
}

impl DecodeTable {
    /// Largest supported window; bounds the table at 2^24 entries.
    pub const MAX_LAMBDA: u32 = 24;

    pub fn new(code: &TrimmedCodeBook) -> Result<Self> {
        let lambda = code.lambda();
        if lambda > Self::MAX_LAMBDA {
            return Err(Error::range(format!(
                "alphabet of {} letters needs a {lambda}-bit decode window, max {}",
                code.alphabet_len(),
                Self::MAX_LAMBDA
            )));
        }
        let mut entries = vec![NO_ENTRY; 1usize << lambda];
        for letter in 0..code.alphabet_len() {
            let (bits, width) = code.encode(letter)?;
            // Every window whose prefix is this codeword maps to it.
            let pad = lambda - width as u32;
            let first = (bits << pad) as usize;
            let entry = (letter as u32) << 8 | width as u32;
            for slot in &mut entries[first..first + (1usize << pad)] {
                debug_assert_eq!(*slot, NO_ENTRY, "trimmed code is not prefix-free");
                *slot = entry;
            }
        }
        Ok(Self { lambda, entries })
    }

    #[inline]
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Decodes the trimmed codeword starting at bit `offset` of `z`,
    /// returning `(letter, width)`. Reads one λ-bit window (fewer bits near
    /// the end of the stream).
    pub fn decode_at(&self, z: &BitSequence, offset: usize) -> Result<(u32, u8)> {
        if offset >= z.len() {
            return Err(Error::bounds(format!(
                "decode offset {offset} at or past stream end {}",
                z.len()
            )));
        }
        let window = z.peek_window(offset, self.lambda as usize) as usize;
        let entry = self.entries[window];
        let width = (entry & 0xff) as u8;
        if entry == NO_ENTRY || offset + width as usize > z.len() {
            return Err(Error::corruption(format!(
                "no valid codeword at bit offset {offset}"
            )));
        }
        Ok((entry >> 8, width))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn bits(word: u64, width: u8) -> String {
        (0..width)
            .rev()
            .map(|b| if word >> b & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// The 15-letter dyadic source: p(a_i) = 2^-(i+1), last letter doubled.
    pub(crate) fn dyadic_fifteen() -> FrequencyTable {
        let mut counts: Vec<u64> = (0..14).map(|i| 1u64 << (13 - i)).collect();
        counts.push(1);
        FrequencyTable::from_counts(counts).unwrap()
    }

    /// Minimum average length over all Kraft-feasible monotone length
    /// vectors, found by exhaustive search. Independent of the Huffman path.
    fn brute_force_optimum(counts: &[u64]) -> f64 {
        fn search(
            sorted: &[u64],
            pos: usize,
            min_len: u8,
            kraft_left: f64,
            cost: u64,
            best: &mut u64,
        ) {
            if pos == sorted.len() {
                *best = (*best).min(cost);
                return;
            }
            let max_len = sorted.len() as u8 - 1;
            for len in min_len..=max_len {
                let need = (-(len as f64)).exp2();
                // Remaining letters need at least one slot each at max depth.
                let reserve = (sorted.len() - pos - 1) as f64 * (-(max_len as f64)).exp2();
                if need + reserve > kraft_left + 1e-12 {
                    continue;
                }
                let next_cost = cost + sorted[pos] * len as u64;
                if next_cost >= *best {
                    continue;
                }
                search(sorted, pos + 1, len, kraft_left - need, next_cost, best);
            }
        }
        let mut sorted = counts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut best = u64::MAX;
        search(&sorted, 0, 1, 1.0, 0, &mut best);
        best as f64 / counts.iter().sum::<u64>() as f64
    }

    #[test]
    fn huffman_dyadic_four_letters() {
        let freqs = FrequencyTable::from_counts(vec![4, 2, 1, 1]).unwrap();
        let book = CodeBook::huffman(&freqs).unwrap();
        assert_eq!(book.lengths(), &[1, 2, 3, 3]);
        let brute = brute_force_optimum(freqs.counts());
        assert!((freqs.average_length(book.lengths()) - brute).abs() < 1e-12);
    }

    #[test]
    fn huffman_dyadic_fifteen_letters() {
        let book = CodeBook::huffman(&dyadic_fifteen()).unwrap();
        let expected: Vec<u8> = (1..=14).chain([14]).collect();
        assert_eq!(book.lengths(), &expected[..]);
        // First codewords match the classic unary-shaped tree.
        assert_eq!(book.codeword(0).unwrap(), (0b0, 1));
        assert_eq!(book.codeword(1).unwrap(), (0b10, 2));
        assert_eq!(book.codeword(2).unwrap(), (0b110, 3));
    }

    #[test]
    fn huffman_uniform_four_letters() {
        let freqs = FrequencyTable::from_counts(vec![7, 7, 7, 7]).unwrap();
        let book = CodeBook::huffman(&freqs).unwrap();
        assert_eq!(book.lengths(), &[2, 2, 2, 2]);
    }

    #[test]
    fn all_zero_counts_rejected() {
        assert!(matches!(
            FrequencyTable::from_counts(vec![0, 0, 0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn single_letter_alphabet_rejected() {
        assert!(matches!(
            FrequencyTable::from_counts(vec![5]),
            Err(Error::InvalidInput(_))
        ));
        assert!(Alphabet::new(1).is_err());
    }

    #[test]
    fn trim_reproduces_the_fifteen_letter_codebook() {
        let trimmed = TrimmedCodeBook::from_frequencies(&dyadic_fifteen()).unwrap();
        let expect = [
            (0, "00"),
            (1, "010"),
            (2, "0110"),
            (3, "01110"),
            (13, "11101"),
            (14, "11110"),
        ];
        for (letter, word) in expect {
            let (bits_, width) = trimmed.encode(letter).unwrap();
            assert_eq!(bits(bits_, width), word, "letter {letter}");
        }
        assert_eq!(trimmed.lambda(), 5);
        assert_eq!(trimmed.sigma(), 3);
    }

    #[test]
    fn trim_four_letter_codebook_by_hand() {
        let base = CodeBook::from_lengths(vec![1, 2, 3, 3]).unwrap();
        let trimmed = TrimmedCodeBook::trim(base).unwrap();
        let widths: Vec<u8> = (0..4).map(|a| trimmed.encode(a).unwrap().1).collect();
        assert_eq!(widths, vec![2, 3, 3, 3]);
        // a_2 and a_3 exceed ⌈log 4⌉ = 2 and escape to 1·bin_2(i).
        assert_eq!(trimmed.encode(2).unwrap(), (0b110, 3));
        assert_eq!(trimmed.encode(3).unwrap(), (0b111, 3));
        // a_0, a_1 keep their base bits behind the 0 flag.
        assert_eq!(trimmed.encode(0).unwrap(), (0b00, 2));
        assert_eq!(trimmed.encode(1).unwrap(), (0b010, 3));
    }

    #[test]
    fn trim_with_no_long_codewords_adds_one_bit_everywhere() {
        let freqs = FrequencyTable::from_counts(vec![1, 1, 1, 1]).unwrap();
        let base = CodeBook::huffman(&freqs).unwrap();
        let trimmed = TrimmedCodeBook::trim(base.clone()).unwrap();
        for a in 0..4 {
            let (base_bits, base_width) = base.codeword(a).unwrap();
            assert_eq!(trimmed.encode(a).unwrap(), (base_bits, base_width + 1));
        }
    }

    #[test]
    fn encode_matches_the_worked_stream_letters() {
        let trimmed = TrimmedCodeBook::from_frequencies(&dyadic_fifteen()).unwrap();
        assert_eq!(trimmed.encode(5).unwrap(), (0b10101, 5));
        assert_eq!(trimmed.encode(0).unwrap(), (0b00, 2));
        assert_eq!(trimmed.encode(10).unwrap(), (0b11010, 5));
    }

    #[test]
    fn decode_at_walks_the_worked_stream() {
        let trimmed = TrimmedCodeBook::from_frequencies(&dyadic_fifteen()).unwrap();
        let table = DecodeTable::new(&trimmed).unwrap();
        let mut z = BitSequence::new();
        for letter in [5usize, 0, 0, 10] {
            let (bits_, width) = trimmed.encode(letter).unwrap();
            z.append_bits(bits_, width as usize).unwrap();
        }
        assert_eq!(z.to_bit_string(), "10101 00 00 11010".replace(' ', ""));
        assert_eq!(table.decode_at(&z, 0).unwrap(), (5, 5));
        assert_eq!(table.decode_at(&z, 5).unwrap(), (0, 2));
        assert_eq!(table.decode_at(&z, 7).unwrap(), (0, 2));
        assert_eq!(table.decode_at(&z, 9).unwrap(), (10, 5));
    }

    #[test]
    fn decode_rejects_invalid_windows() {
        let trimmed = TrimmedCodeBook::from_frequencies(&dyadic_fifteen()).unwrap();
        let table = DecodeTable::new(&trimmed).unwrap();
        // "01111" is not a codeword of the trimmed book: the 0-branch stops
        // at a_3 = 01110 and 1111x belongs to no letter either.
        let mut z = BitSequence::new();
        z.append_bits(0b01111, 5).unwrap();
        assert!(matches!(table.decode_at(&z, 0), Err(Error::Corruption(_))));
        assert!(matches!(table.decode_at(&z, 5), Err(Error::Bounds(_))));
    }

    #[test]
    fn fixed_width_codes_are_plain_indices() {
        let book = CodeBook::fixed_width(15).unwrap();
        assert_eq!(book.codeword(2).unwrap(), (0b0010, 4));
        let book = CodeBook::fixed_width(4).unwrap();
        assert_eq!(book.codeword(3).unwrap(), (0b11, 2));
        let book = CodeBook::fixed_width(2).unwrap();
        assert_eq!(book.codeword(1).unwrap(), (0b1, 1));
    }

    #[test]
    fn kraft_violating_lengths_rejected() {
        assert!(matches!(
            CodeBook::from_lengths(vec![1, 1, 2]),
            Err(Error::Corruption(_))
        ));
        assert!(CodeBook::from_lengths(vec![1, 2, 2]).is_ok());
    }

    fn assert_prefix_free(words: &[(u64, u8)]) {
        for (i, &(wa, la)) in words.iter().enumerate() {
            for (j, &(wb, lb)) in words.iter().enumerate() {
                if i == j {
                    continue;
                }
                if la <= lb {
                    assert_ne!(wb >> (lb - la), wa, "codeword {i} prefixes {j}");
                }
            }
        }
    }

    #[test]
    fn trimmed_codes_stay_prefix_free_up_to_4096_letters() {
        let mut rng = StdRng::seed_from_u64(0x1d2f);
        for len in [2usize, 3, 9, 100, 1 << 12] {
            let counts: Vec<u64> = (0..len).map(|_| rng.random_range(0..1000)).collect();
            let counts = if counts.iter().all(|&c| c == 0) {
                vec![1; len]
            } else {
                counts
            };
            let freqs = FrequencyTable::from_counts(counts).unwrap();
            let trimmed = TrimmedCodeBook::from_frequencies(&freqs).unwrap();
            let words: Vec<(u64, u8)> = (0..len).map(|a| trimmed.encode(a).unwrap()).collect();
            assert_prefix_free(&words);
            DecodeTable::new(&trimmed).unwrap();
            for a in 0..len {
                let (_, width) = trimmed.encode(a).unwrap();
                let (_, base_width) = trimmed.base().codeword(a).unwrap();
                assert!(width as u32 <= trimmed.lambda());
                assert!(width <= base_width + 1);
            }
        }
    }

    #[test]
    fn huffman_is_optimal_on_small_alphabets() {
        let mut rng = StdRng::seed_from_u64(0xbead);
        for _ in 0..60 {
            let len = rng.random_range(2usize..=8);
            let counts: Vec<u64> = (0..len).map(|_| rng.random_range(1..100)).collect();
            let freqs = FrequencyTable::from_counts(counts.clone()).unwrap();
            let book = CodeBook::huffman(&freqs).unwrap();
            let avg = freqs.average_length(book.lengths());
            let brute = brute_force_optimum(&counts);
            assert!(
                (avg - brute).abs() < 1e-9,
                "huffman {avg} vs optimum {brute} on {counts:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn average_length_chain(counts in proptest::collection::vec(1u64..500, 2..40)) {
            let freqs = FrequencyTable::from_counts(counts).unwrap();
            let book = CodeBook::huffman(&freqs).unwrap();
            let trimmed = TrimmedCodeBook::trim(book.clone()).unwrap();
            let h1 = freqs.entropy();
            let e_huff = freqs.average_length(book.lengths());
            let e_trim = trimmed.average_length(&freqs);
            prop_assert!(h1 <= e_huff + 1e-9);
            prop_assert!(e_huff < h1 + 1.0);
            prop_assert!(e_trim < e_huff + 1.0 + 1e-9);
        }

        #[test]
        fn decode_inverts_encode(counts in proptest::collection::vec(0u64..50, 2..300)) {
            let counts = if counts.iter().all(|&c| c == 0) { vec![1; 4] } else { counts };
            let freqs = FrequencyTable::from_counts(counts).unwrap();
            let trimmed = TrimmedCodeBook::from_frequencies(&freqs).unwrap();
            let table = DecodeTable::new(&trimmed).unwrap();
            for a in 0..trimmed.alphabet_len() {
                let (bits_, width) = trimmed.encode(a).unwrap();
                let mut z = BitSequence::new();
                z.append_bits(bits_, width as usize).unwrap();
                prop_assert_eq!(table.decode_at(&z, 0).unwrap(), (a as u32, width));
            }
        }
    }
}
