//! Bit-level primitives: append-only bit sequences and fixed-width packed
//! integer arrays.
//!
//! Both containers use the same bit order: within every appended field the
//! most significant bit comes first, and fields are packed back to back with
//! no padding. Byte dumps therefore read left to right exactly like the
//! binary strings printed by [`BitSequence::to_bit_string`].

use crate::error::{Error, Result};

/// Smallest `t` with `2^t >= x`. Requires `x >= 1`; `ceil_log2(1) == 0`.
#[inline]
pub fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

/// Number of bits needed to store any value in `0..=max_value`, at least 1.
/// Equals `ceil(log2(max_value + 1))` for positive `max_value`.
#[inline]
pub fn bits_to_store(max_value: u64) -> u32 {
    (64 - max_value.leading_zeros()).max(1)
}

// Field helpers over a word buffer. Stream bit `i` lives in `words[i / 64]`
// at shift `63 - i % 64`, so words serialize big-endian byte for byte.

#[inline]
fn read_field(words: &[u64], pos: usize, width: usize) -> u64 {
    debug_assert!((1..=64).contains(&width));
    let wi = pos / 64;
    let off = pos % 64;
    let mut v = (words[wi] << off) >> (64 - width);
    let taken = width.min(64 - off);
    if taken < width {
        v |= words[wi + 1] >> (64 - (width - taken));
    }
    v
}

#[inline]
fn write_field(words: &mut [u64], pos: usize, width: usize, value: u64) {
    debug_assert!((1..=64).contains(&width));
    let wi = pos / 64;
    let off = pos % 64;
    let aligned = value << (64 - width);
    let taken = width.min(64 - off);
    let mask = (!0u64 << (64 - taken)) >> off;
    words[wi] = (words[wi] & !mask) | (aligned >> off);
    if taken < width {
        let rest = width - taken;
        let mask = !0u64 << (64 - rest);
        words[wi + 1] = (words[wi + 1] & !mask) | (aligned << taken);
    }
}

/// An append-only sequence of bits.
///
/// Holds the concatenated codeword stream of a compressed sequence; grows at
/// the tail only and is immutable once built.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// Number of bits appended so far.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Appends the `width`-bit big-endian representation of `value`.
    pub fn append_bits(&mut self, value: u64, width: usize) -> Result<()> {
        if width == 0 || width > 64 {
            return Err(Error::range(format!("append width {width} not in 1..=64")));
        }
        if width < 64 && value >> width != 0 {
            return Err(Error::range(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        let end = self.len + width;
        while self.words.len() * 64 < end {
            self.words.push(0);
        }
        write_field(&mut self.words, self.len, width, value);
        self.len = end;
        Ok(())
    }

    /// Reads `width` bits starting at bit `offset` as a big-endian integer.
    /// A zero-width read returns 0.
    pub fn read_bits(&self, offset: usize, width: usize) -> Result<u64> {
        if width == 0 {
            return Ok(0);
        }
        if width > 64 {
            return Err(Error::range(format!("read width {width} not in 0..=64")));
        }
        if offset + width > self.len {
            return Err(Error::bounds(format!(
                "read of {width} bits at offset {offset} exceeds length {}",
                self.len
            )));
        }
        Ok(read_field(&self.words, offset, width))
    }

    /// Reads up to `width` bits at `offset`, zero-padding on the right when
    /// fewer bits remain. Used for fixed-size decode windows near the end of
    /// the stream.
    pub fn peek_window(&self, offset: usize, width: usize) -> u64 {
        debug_assert!((1..=64).contains(&width));
        if offset >= self.len {
            return 0;
        }
        let avail = width.min(self.len - offset);
        read_field(&self.words, offset, avail) << (width - avail)
    }

    /// The bits as `0`/`1` characters, most significant first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| {
                if self.words[i / 64] >> (63 - i % 64) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Packs the bits into bytes, MSB first, zero-padded to a byte boundary.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n_bytes = self.len.div_ceil(8);
        (0..n_bytes)
            .map(|i| (self.words[i / 8] >> (56 - 8 * (i % 8))) as u8)
            .collect()
    }

    /// Rebuilds a sequence from `to_bytes` output. `bytes` must hold exactly
    /// `ceil(len / 8)` bytes; padding bits are ignored.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::corruption(format!(
                "bit section holds {} bytes, expected {} for {len} bits",
                bytes.len(),
                len.div_ceil(8)
            )));
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= (b as u64) << (56 - 8 * (i % 8));
        }
        // Zero the padding so byte output is a pure function of the content.
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= !0u64 << (64 - len % 64);
            }
        }
        Ok(Self { words, len })
    }
}

/// A fixed-width array of unsigned integers packed without per-entry padding.
///
/// An array of `len` entries at `width` bits occupies exactly `len * width`
/// payload bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedIntArray {
    width: usize,
    len: usize,
    words: Vec<u64>,
}

impl PackedIntArray {
    /// Zero-filled array of `len` entries, `width` bits each.
    pub fn new(width: usize, len: usize) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::range(format!("entry width {width} not in 1..=64")));
        }
        Ok(Self {
            width,
            len,
            words: vec![0u64; (len * width).div_ceil(64)],
        })
    }

    /// Builds an array sized and filled from `values`.
    pub fn from_values(width: usize, values: &[u64]) -> Result<Self> {
        let mut arr = Self::new(width, values.len())?;
        for (i, &v) in values.iter().enumerate() {
            arr.set(i, v)?;
        }
        Ok(arr)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bits per entry.
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    /// Largest value an entry can hold.
    #[inline]
    pub fn max_value(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Exact payload size: `len * width` bits.
    #[inline]
    pub fn payload_bits(&self) -> usize {
        self.len * self.width
    }

    pub fn get(&self, i: usize) -> Result<u64> {
        if i >= self.len {
            return Err(Error::bounds(format!(
                "index {i} out of range for {} entries",
                self.len
            )));
        }
        Ok(self.load(i))
    }

    pub fn set(&mut self, i: usize, value: u64) -> Result<()> {
        if i >= self.len {
            return Err(Error::bounds(format!(
                "index {i} out of range for {} entries",
                self.len
            )));
        }
        if value > self.max_value() {
            return Err(Error::range(format!(
                "value {value} does not fit in {} bits",
                self.width
            )));
        }
        write_field(&mut self.words, i * self.width, self.width, value);
        Ok(())
    }

    /// Unchecked read for hot paths; `i` must be in range.
    #[inline]
    pub(crate) fn load(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        read_field(&self.words, i * self.width, self.width)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(|i| self.load(i))
    }
}
