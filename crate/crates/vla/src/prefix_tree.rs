//! A static binary-indexed prefix-sum tree over a sequence of positive
//! integers, packed so that level `k` entries occupy `σ + k − 1` bits each.
//!
//! Conceptually the structure keeps, for every position whose index has
//! lowest set bit `2^(k−1)`, the sum of the `2^(k−1)` values ending there —
//! the odd-indexed survivors after dropping every even-indexed range sum.
//! A prefix sum then touches one stored entry per set bit of the query
//! index.
//!
//! A raw level-`k` sum of values up to `2^σ` can reach `2^(σ+k−1)`, one too
//! large for its field, so each entry stores `sum − 2^(k−1)` instead; every
//! summand is at least 1, which keeps the stored value non-negative, and
//! queries add the count back. With that offset the whole structure fits in
//! `N(σ + 1)` bits for power-of-two `N`.

use crate::bitstore::{bits_to_store, PackedIntArray};
use crate::error::{Error, Result};

/// One stored entry touched by a query: level `k` covers `2^(k−1)` values,
/// `index` is the odd position of the entry within the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TouchedNode {
    pub level: u32,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSumTree {
    n: usize,
    sigma: u32,
    levels: Vec<PackedIntArray>,
}

/// Entries on level `k` of a tree over `n` values: odd `j` with
/// `j · 2^(k−1) <= n`.
pub(crate) fn level_entry_count(n: usize, k: u32) -> usize {
    (n >> (k - 1)).div_ceil(2)
}

/// Number of levels for `n` values: `floor(log2 n) + 1`.
pub(crate) fn level_count(n: usize) -> u32 {
    bits_to_store(n as u64)
}

impl PrefixSumTree {
    /// Builds the tree over `values`, each in `1..=2^sigma`.
    pub fn build(values: &[u64], sigma: u32) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid_input("prefix-sum tree over empty sequence"));
        }
        if sigma == 0 || sigma > 57 {
            return Err(Error::range(format!("base width {sigma} not in 1..=57")));
        }
        let max = 1u64 << sigma;
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > max {
                return Err(Error::range(format!(
                    "value {v} at position {i} outside 1..=2^{sigma}"
                )));
            }
        }
        let n = values.len();
        let top = level_count(n);
        if sigma + top - 1 > 64 {
            return Err(Error::range(format!(
                "level width {} exceeds 64 bits",
                sigma + top - 1
            )));
        }

        let mut prefix = vec![0u64; n + 1];
        for (i, &v) in values.iter().enumerate() {
            prefix[i + 1] = prefix[i] + v;
        }

        let mut levels = Vec::with_capacity(top as usize);
        for k in 1..=top {
            let span = 1usize << (k - 1);
            let count = level_entry_count(n, k);
            let mut level = PackedIntArray::new((sigma + k - 1) as usize, count)?;
            for slot in 0..count {
                let j = 2 * slot + 1;
                let sum = prefix[j * span] - prefix[(j - 1) * span];
                let stored = sum - span as u64;
                debug_assert!(stored <= level.max_value(), "level {k} entry overflows");
                level.set(slot, stored)?;
            }
            levels.push(level);
        }
        Ok(Self { n, sigma, levels })
    }

    /// Number of leaves.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Base entry width σ in bits.
    #[inline]
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    #[inline]
    pub fn num_levels(&self) -> u32 {
        self.levels.len() as u32
    }

    /// The packed entries of level `k` (1-based).
    pub fn level(&self, k: u32) -> &PackedIntArray {
        &self.levels[k as usize - 1]
    }

    /// The raw range sum held by the entry at `(level, odd index)`, i.e. the
    /// sum of the `2^(level−1)` values ending at position `index ·
    /// 2^(level−1)`.
    pub fn node(&self, level: u32, index: u64) -> Result<u64> {
        let span = 1u64 << (level - 1);
        if level == 0
            || level > self.num_levels()
            || index.is_multiple_of(2)
            || index * span > self.n as u64
        {
            return Err(Error::bounds(format!(
                "no entry at level {level}, index {index}"
            )));
        }
        let stored = self.levels[level as usize - 1].load(((index - 1) / 2) as usize);
        Ok(stored + span)
    }

    #[inline]
    fn walk<F: FnMut(TouchedNode)>(&self, j: usize, mut visit: F) -> u64 {
        // Binary-expansion descent: scan the bits of j from the most
        // significant down, keeping in `t` the value of the bits seen so
        // far. After consuming a set bit at weight 2^b, `t` is odd and the
        // level-(b+1) entry at odd index `t` covers exactly the next 2^b
        // values of the prefix.
        let mut t: u64 = 0;
        let mut sum: u64 = 0;
        for b in (0..level_count(self.n)).rev() {
            let bit = (j as u64 >> b) & 1;
            t = 2 * t + bit;
            if bit == 1 {
                let level = &self.levels[b as usize];
                sum += level.load(((t - 1) / 2) as usize);
                visit(TouchedNode {
                    level: b + 1,
                    index: t,
                });
            }
        }
        // Each touched entry stored its sum minus its span; the spans of the
        // touched entries add up to j exactly.
        sum + j as u64
    }

    /// The exact prefix sum of the first `j` values, `0 <= j <= n`.
    pub fn prefix_sum(&self, j: usize) -> Result<u64> {
        if j > self.n {
            return Err(Error::bounds(format!(
                "prefix index {j} exceeds length {}",
                self.n
            )));
        }
        Ok(self.walk(j, |_| {}))
    }

    /// Prefix sum that adds the number of stored entries read to `touched`.
    pub(crate) fn prefix_sum_counted(&self, j: usize, touched: &mut usize) -> Result<u64> {
        if j > self.n {
            return Err(Error::bounds(format!(
                "prefix index {j} exceeds length {}",
                self.n
            )));
        }
        Ok(self.walk(j, |_| *touched += 1))
    }

    /// Like [`prefix_sum`](Self::prefix_sum), also reporting which stored
    /// entries the walk touched, in visit order.
    pub fn prefix_sum_traced(&self, j: usize) -> Result<(u64, Vec<TouchedNode>)> {
        if j > self.n {
            return Err(Error::bounds(format!(
                "prefix index {j} exceeds length {}",
                self.n
            )));
        }
        let mut touched = Vec::new();
        let sum = self.walk(j, |node| touched.push(node));
        Ok((sum, touched))
    }

    /// Total payload bits across all levels.
    pub fn memory_bits(&self) -> usize {
        self.levels.iter().map(|l| l.payload_bits()).sum()
    }

    /// Reassembles a tree from deserialized levels.
    pub(crate) fn from_parts(n: usize, sigma: u32, levels: Vec<PackedIntArray>) -> Result<Self> {
        if n == 0 || levels.len() != level_count(n) as usize {
            return Err(Error::corruption("prefix-sum tree level count mismatch"));
        }
        for (i, level) in levels.iter().enumerate() {
            let k = i as u32 + 1;
            if level.width() != (sigma + k - 1) as usize || level.len() != level_entry_count(n, k) {
                return Err(Error::corruption("prefix-sum tree level shape mismatch"));
            }
        }
        Ok(Self { n, sigma, levels })
    }
}
