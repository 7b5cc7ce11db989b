//! Compressed storage of letter sequences with fast direct access.
//!
//! A sequence encoded with a variable-length prefix code saves space, but
//! finding the `i`-th letter normally means decoding everything before it.
//! This crate stores such sequences so that any single letter is decodable
//! in time polylogarithmic in the sequence length, with measured size bounds
//! for every structure it builds.
//!
//! The pieces:
//!
//! - [`codes`]: canonical Huffman codes, a *trimming* transform capping every
//!   codeword at `⌈log L⌉ + 1` bits, and single-lookup decoding at any bit
//!   offset.
//! - [`prefix_tree`]: a bit-packed binary-indexed tree over the codeword
//!   lengths, answering prefix sums (hence codeword offsets) by touching one
//!   entry per set bit of the index.
//! - [`storage`]: five storage variants with different time/memory
//!   trade-offs behind one [`storage::CompressedSequence::access`] interface:
//!
//!   | Variant | Index | Access cost (index reads) |
//!   | --- | --- | --- |
//!   | `Fixed` | none | 0 |
//!   | `SigmaTr` | flat length stream | `O(i)` |
//!   | `SigmaBit` | prefix-sum tree | `≤ ⌈log N⌉ + 1` |
//!   | `Blocked` | block table + per-block trees | `≤ ⌈log M⌉ + 2` |
//!   | `Superletter` | tree over `M`-letter blocks | `≤ ⌈log(N/M)⌉ + 1` |
//!
//! - [`container`]: a deterministic single-file format for any built
//!   sequence.
//! - [`cli`]: the `vla` command-line tool (`build`, `get`, `stats`,
//!   `verify`, `bench`).
//!
//! ```
//! use vla::codes::{FrequencyTable, TrimmedCodeBook};
//! use vla::storage::CompressedSequence;
//!
//! let text: Vec<u32> = b"abracadabra".iter().map(|&b| b as u32).collect();
//! let freqs = FrequencyTable::from_sequence(&text, 256).unwrap();
//! let code = TrimmedCodeBook::from_frequencies(&freqs).unwrap();
//! let stored = CompressedSequence::sigma_bit(&text, code).unwrap();
//! assert_eq!(stored.access(1).unwrap(), b'a' as u32); // 1-based
//! assert_eq!(stored.access(11).unwrap(), b'a' as u32);
//! ```
//!
//! Every structure is immutable once built and safe to query from any number
//! of threads.

pub mod bitstore;
pub mod cli;
pub mod codes;
pub mod container;
pub mod error;
pub mod prefix_tree;
pub mod storage;

pub use error::{Error, Result};
