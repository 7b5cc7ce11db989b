//! The `.vla` container: one file holding a [`CompressedSequence`] and the
//! symbol mapping of its alphabet, byte-exact and deterministic.
//!
//! Layout (see `FORMAT.md` for the bit-exact description):
//!
//! ```text
//! magic "VLA1" | variant u8 | L u32 | N u64 | sigma u8 | m u32 | M u32
//! | codebook_len u64 | z_len_bits u64 | index_len_bits u64
//! | codebook section | z section | index section
//! ```
//!
//! Header integers are little-endian; the bit sections pack MSB-first within
//! each byte and zero-pad to a byte boundary, so the worked codeword streams
//! are readable straight off a hex dump. Codebooks store lengths only and
//! are rebuilt canonically on load, which makes
//! `serialize ∘ deserialize ∘ serialize` the identity on bytes.

use crate::bitstore::{bits_to_store, BitSequence, PackedIntArray};
use crate::codes::{CodeBook, DecodeTable, TrimmedCodeBook};
use crate::error::{Error, Result};
use crate::prefix_tree::{level_count, level_entry_count, PrefixSumTree};
use crate::storage::{Body, CompressedSequence, Variant};

pub const MAGIC: [u8; 4] = *b"VLA1";
const HEADER_LEN: usize = 50;

/// How container letters map back to user-visible symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolTable {
    /// Letters are raw byte values (`L = 256`).
    Bytes,
    /// Letters index this token list.
    Tokens(Vec<String>),
}

fn variant_tag(variant: Variant) -> u8 {
    match variant {
        Variant::Fixed => 0,
        Variant::SigmaTr => 1,
        Variant::SigmaBit => 2,
        Variant::Blocked => 3,
        Variant::Superletter => 4,
    }
}

fn tag_variant(tag: u8) -> Result<Variant> {
    Ok(match tag {
        0 => Variant::Fixed,
        1 => Variant::SigmaTr,
        2 => Variant::SigmaBit,
        3 => Variant::Blocked,
        4 => Variant::Superletter,
        _ => return Err(Error::corruption(format!("unknown variant tag {tag}"))),
    })
}

/// Appends every entry of `arr`, keeping the index section bit-contiguous.
fn append_packed(bits: &mut BitSequence, arr: &PackedIntArray) {
    for v in arr.iter() {
        bits.append_bits(v, arr.width())
            .expect("packed entry fits its own width");
    }
}

fn append_tree(bits: &mut BitSequence, tree: &PrefixSumTree) {
    for k in 1..=tree.num_levels() {
        append_packed(bits, tree.level(k));
    }
}

fn codebook_section(cs: &CompressedSequence, symbols: &SymbolTable) -> Vec<u8> {
    let mut out = Vec::new();
    match symbols {
        SymbolTable::Bytes => out.push(0u8),
        SymbolTable::Tokens(tokens) => {
            out.push(1u8);
            out.extend_from_slice(&(tokens.len() as u32).to_le_bytes());
            for token in tokens {
                out.extend_from_slice(&(token.len() as u32).to_le_bytes());
                out.extend_from_slice(token.as_bytes());
            }
        }
    }
    match &cs.body {
        Body::Fixed { code } => out.extend_from_slice(code.lengths()),
        Body::SigmaTr { code, .. } | Body::SigmaBit { code, .. } | Body::Blocked { code, .. } => {
            out.extend_from_slice(code.base().lengths())
        }
        Body::Superletter {
            block_code,
            block_letters,
            block_len,
            ..
        } => {
            out.extend_from_slice(block_code.base().lengths());
            let width = bits_to_store(cs.alphabet_len() as u64 - 1) as usize;
            let mut packed = BitSequence::with_capacity(block_letters.len() * block_len * width);
            for block in block_letters {
                for &letter in block {
                    packed
                        .append_bits(letter as u64, width)
                        .expect("letter fits alphabet width");
                }
            }
            out.extend_from_slice(&packed.to_bytes());
        }
    }
    out
}

fn index_section(cs: &CompressedSequence) -> BitSequence {
    let mut bits = BitSequence::new();
    match &cs.body {
        Body::Fixed { .. } => {}
        Body::SigmaTr { y, .. } => append_packed(&mut bits, y),
        Body::SigmaBit { tree, .. } => append_tree(&mut bits, tree),
        Body::Blocked { offsets, trees, .. } => {
            append_packed(&mut bits, offsets);
            for tree in trees {
                append_tree(&mut bits, tree);
            }
        }
        Body::Superletter { tree, .. } => append_tree(&mut bits, tree),
    }
    bits
}

/// Serializes with letters standing for themselves (byte alphabet).
pub fn serialize(cs: &CompressedSequence) -> Vec<u8> {
    serialize_with_symbols(cs, &SymbolTable::Bytes)
}

/// Serializes `cs` together with its symbol mapping. Deterministic: equal
/// inputs give byte-identical output.
pub fn serialize_with_symbols(cs: &CompressedSequence, symbols: &SymbolTable) -> Vec<u8> {
    let (sigma, m, big_m) = match &cs.body {
        Body::Fixed { .. } => (0u8, 0u32, 0u32),
        Body::SigmaTr { code, .. } | Body::SigmaBit { code, .. } => (code.sigma() as u8, 0, 0),
        Body::Blocked {
            code,
            offsets,
            block_len,
            ..
        } => (code.sigma() as u8, offsets.len() as u32, *block_len as u32),
        Body::Superletter {
            block_code,
            block_letters,
            block_len,
            ..
        } => (
            block_code.sigma() as u8,
            block_letters.len() as u32,
            *block_len as u32,
        ),
    };

    let codebook = codebook_section(cs, symbols);
    let index = index_section(cs);

    let mut out = Vec::with_capacity(HEADER_LEN + codebook.len() + cs.z().len() / 8 + 16);
    out.extend_from_slice(&MAGIC);
    out.push(variant_tag(cs.variant()));
    out.extend_from_slice(&(cs.alphabet_len() as u32).to_le_bytes());
    out.extend_from_slice(&(cs.len() as u64).to_le_bytes());
    out.push(sigma);
    out.extend_from_slice(&m.to_le_bytes());
    out.extend_from_slice(&big_m.to_le_bytes());
    out.extend_from_slice(&(codebook.len() as u64).to_le_bytes());
    out.extend_from_slice(&(cs.z().len() as u64).to_le_bytes());
    out.extend_from_slice(&(index.len() as u64).to_le_bytes());
    debug_assert_eq!(out.len(), HEADER_LEN);
    out.extend_from_slice(&codebook);
    out.extend_from_slice(&cs.z().to_bytes());
    out.extend_from_slice(&index.to_bytes());
    out
}

struct ByteCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteCursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::corruption("section truncated"));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn take_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

struct BitCursor {
    bits: BitSequence,
    pos: usize,
}

impl BitCursor {
    fn take(&mut self, width: usize) -> Result<u64> {
        let v = self.bits.read_bits(self.pos, width)?;
        self.pos += width;
        Ok(v)
    }

    fn take_packed(&mut self, width: usize, len: usize) -> Result<PackedIntArray> {
        let mut arr = PackedIntArray::new(width, len)?;
        for i in 0..len {
            arr.set(i, self.take(width)?)?;
        }
        Ok(arr)
    }

    fn take_tree(&mut self, n: usize, sigma: u32) -> Result<PrefixSumTree> {
        let mut levels = Vec::new();
        for k in 1..=level_count(n) {
            levels.push(self.take_packed((sigma + k - 1) as usize, level_entry_count(n, k))?);
        }
        PrefixSumTree::from_parts(n, sigma, levels)
    }
}

fn trimmed_from_lengths(lengths: &[u8]) -> Result<(TrimmedCodeBook, DecodeTable)> {
    let base = CodeBook::from_lengths(lengths.to_vec())?;
    let code = TrimmedCodeBook::trim(base)?;
    let table = DecodeTable::new(&code)?;
    Ok((code, table))
}

/// Parses a container, returning the sequence and its symbol mapping.
pub fn deserialize(bytes: &[u8]) -> Result<(CompressedSequence, SymbolTable)> {
    if bytes.len() < 4 || bytes[..3] != MAGIC[..3] {
        return Err(Error::format("missing VLA magic"));
    }
    if bytes[3] != MAGIC[3] {
        return Err(Error::UnsupportedVersion(bytes[3]));
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::corruption("header truncated"));
    }
    let variant = tag_variant(bytes[4])?;
    let alphabet_len = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let n = u64::from_le_bytes(bytes[9..17].try_into().unwrap());
    let sigma = bytes[17] as u32;
    let m = u32::from_le_bytes(bytes[18..22].try_into().unwrap()) as usize;
    let big_m = u32::from_le_bytes(bytes[22..26].try_into().unwrap()) as usize;
    let codebook_len = u64::from_le_bytes(bytes[26..34].try_into().unwrap()) as usize;
    let z_len_bits = u64::from_le_bytes(bytes[34..42].try_into().unwrap()) as usize;
    let index_len_bits = u64::from_le_bytes(bytes[42..50].try_into().unwrap()) as usize;

    if n == 0 || alphabet_len < 2 {
        return Err(Error::corruption("header declares an empty sequence"));
    }
    let n = n as usize;

    let z_bytes = z_len_bits.div_ceil(8);
    let index_bytes = index_len_bits.div_ceil(8);
    let expected = HEADER_LEN + codebook_len + z_bytes + index_bytes;
    if bytes.len() < expected {
        return Err(Error::corruption(format!(
            "container holds {} bytes, header declares {expected}",
            bytes.len()
        )));
    }
    if bytes.len() > expected {
        return Err(Error::corruption(format!(
            "{} trailing bytes after declared sections",
            bytes.len() - expected
        )));
    }

    let mut codebook = ByteCursor {
        bytes: &bytes[HEADER_LEN..HEADER_LEN + codebook_len],
        pos: 0,
    };
    let z = BitSequence::from_bytes(
        &bytes[HEADER_LEN + codebook_len..HEADER_LEN + codebook_len + z_bytes],
        z_len_bits,
    )?;
    let mut index = BitCursor {
        bits: BitSequence::from_bytes(
            &bytes[HEADER_LEN + codebook_len + z_bytes..],
            index_len_bits,
        )?,
        pos: 0,
    };

    let symbols = match codebook.take(1)?[0] {
        0 => SymbolTable::Bytes,
        1 => {
            let count = codebook.take_u32()? as usize;
            if count != alphabet_len {
                return Err(Error::corruption(format!(
                    "token table holds {count} entries for alphabet of {alphabet_len}"
                )));
            }
            let mut tokens = Vec::with_capacity(count);
            for _ in 0..count {
                let len = codebook.take_u32()? as usize;
                let raw = codebook.take(len)?;
                tokens.push(
                    std::str::from_utf8(raw)
                        .map_err(|_| Error::corruption("token is not valid UTF-8"))?
                        .to_string(),
                );
            }
            SymbolTable::Tokens(tokens)
        }
        mode => return Err(Error::corruption(format!("unknown alphabet mode {mode}"))),
    };

    let body = match variant {
        Variant::Fixed => {
            let lengths = codebook.take(alphabet_len)?;
            let code = CodeBook::from_lengths(lengths.to_vec())?;
            Body::Fixed { code }
        }
        Variant::SigmaTr => {
            let (code, table) = trimmed_from_lengths(codebook.take(alphabet_len)?)?;
            check_sigma(&code, sigma)?;
            let y = index.take_packed(sigma as usize, n)?;
            Body::SigmaTr { code, table, y }
        }
        Variant::SigmaBit => {
            let (code, table) = trimmed_from_lengths(codebook.take(alphabet_len)?)?;
            check_sigma(&code, sigma)?;
            let tree = index.take_tree(n, sigma)?;
            Body::SigmaBit { code, table, tree }
        }
        Variant::Blocked => {
            let (code, table) = trimmed_from_lengths(codebook.take(alphabet_len)?)?;
            check_sigma(&code, sigma)?;
            if big_m == 0 || m != n.div_ceil(big_m) {
                return Err(Error::corruption("block table shape mismatch"));
            }
            let offsets = index.take_packed(bits_to_store(z_len_bits as u64) as usize, m)?;
            let mut previous = None;
            for off in offsets.iter() {
                if off as usize >= z_len_bits.max(1) || previous.is_some_and(|p| off <= p) {
                    return Err(Error::corruption("block offsets not strictly increasing"));
                }
                previous = Some(off);
            }
            let mut trees = Vec::with_capacity(m);
            for b in 0..m {
                let len = if b + 1 < m {
                    big_m
                } else {
                    n - (m - 1) * big_m
                };
                trees.push(index.take_tree(len, sigma)?);
            }
            Body::Blocked {
                code,
                table,
                block_len: big_m,
                offsets,
                trees,
            }
        }
        Variant::Superletter => {
            if big_m == 0 || big_m > n || m < 2 {
                return Err(Error::corruption("superletter shape mismatch"));
            }
            let (block_code, block_table) = trimmed_from_lengths(codebook.take(m)?)?;
            check_sigma(&block_code, sigma)?;
            let width = bits_to_store(alphabet_len as u64 - 1) as usize;
            let packed_bits = m * big_m * width;
            let raw = codebook.take(packed_bits.div_ceil(8))?;
            let packed = BitSequence::from_bytes(raw, packed_bits)?;
            let mut block_letters = Vec::with_capacity(m);
            let mut pos = 0;
            for _ in 0..m {
                let mut block = Vec::with_capacity(big_m);
                for _ in 0..big_m {
                    let letter = packed.read_bits(pos, width)?;
                    if letter >= alphabet_len as u64 {
                        return Err(Error::corruption(format!(
                            "block letter {letter} outside alphabet"
                        )));
                    }
                    block.push(letter as u32);
                    pos += width;
                }
                block_letters.push(block);
            }
            let tree = index.take_tree(n.div_ceil(big_m), sigma)?;
            Body::Superletter {
                block_len: big_m,
                block_letters,
                block_code,
                block_table,
                tree,
            }
        }
    };

    if codebook.pos != codebook_len {
        return Err(Error::corruption(format!(
            "codebook section declares {codebook_len} bytes, parsed {}",
            codebook.pos
        )));
    }
    if index.pos != index_len_bits {
        return Err(Error::corruption(format!(
            "index section declares {index_len_bits} bits, parsed {}",
            index.pos
        )));
    }

    Ok((
        CompressedSequence::from_parts(n, alphabet_len, z, body),
        symbols,
    ))
}

fn check_sigma(code: &TrimmedCodeBook, sigma: u32) -> Result<()> {
    if code.sigma() != sigma {
        return Err(Error::corruption(format!(
            "header sigma {sigma} does not match codebook sigma {}",
            code.sigma()
        )));
    }
    Ok(())
}
