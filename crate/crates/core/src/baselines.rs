//! Classical comparison measures: Shannon entropy, block entropy and the
//! length of an LZW code stream.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::bdm::{decompose, Boundary};
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

/// Entropy in bits per symbol of the empirical symbol distribution.
pub fn entropy<T: Hash + Eq>(symbols: &[T]) -> Result<f64> {
    if symbols.is_empty() {
        return Err(Error::invalid("entropy of an empty sequence"));
    }
    Ok(entropy_of_counts(frequencies(symbols.iter())))
}

fn frequencies<T: Hash + Eq>(items: impl Iterator<Item = T>) -> Vec<u64> {
    let mut counts: FxHashMap<T, u64> = FxHashMap::default();
    for item in items {
        *counts.entry(item).or_insert(0) += 1;
    }
    counts.into_values().collect()
}

/// Entropy of a distribution given by raw counts. Counts are summed in
/// sorted order so the result does not depend on hash iteration order.
fn entropy_of_counts(mut counts: Vec<u64>) -> f64 {
    counts.sort_unstable();
    let total: u64 = counts.iter().sum();
    let total = total as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // -0.0 for single-symbol inputs
    h.max(0.0)
}

/// Entropy in bits per block over non-overlapping length-`b` blocks; a
/// trailing remainder shorter than `b` is dropped.
pub fn block_entropy<T: Hash + Eq>(symbols: &[T], b: usize) -> Result<f64> {
    if b < 1 {
        return Err(Error::invalid("block length must be at least 1"));
    }
    if symbols.len() < b {
        return Err(Error::invalid(format!(
            "sequence of length {} is shorter than block length {b}",
            symbols.len()
        )));
    }
    Ok(entropy_of_counts(frequencies(symbols.chunks_exact(b))))
}

/// Total bits: number of block occurrences times the entropy of the block
/// distribution of the decomposition.
pub fn matrix_block_entropy(m: &BinaryMatrix, d: usize, boundary: Boundary) -> Result<f64> {
    let dec = decompose(m, d, boundary)?;
    let occurrences = dec.occurrences();
    if occurrences == 0 {
        return Ok(0.0);
    }
    let counts = dec.parts.iter().map(|(_, n)| *n).collect();
    Ok(occurrences as f64 * entropy_of_counts(counts))
}

const FIRST_WIDTH: u32 = 9;
const MAX_WIDTH: u32 = 16;
const MAX_ENTRIES: usize = 1 << MAX_WIDTH;

/// Code width used for the `i`-th emitted code. The encoder holds
/// `256 + i` entries at that point (until the dictionary freezes).
fn code_width(i: usize) -> u32 {
    let size = (256 + i).min(MAX_ENTRIES);
    (usize::BITS - size.leading_zeros()).clamp(FIRST_WIDTH, MAX_WIDTH)
}

/// An LZW code stream packed MSB-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LzwStream {
    pub bytes: Vec<u8>,
    pub bit_len: u64,
}

struct BitWriter {
    bytes: Vec<u8>,
    bit_len: u64,
}

impl BitWriter {
    fn push(&mut self, value: u32, width: u32) {
        for i in (0..width).rev() {
            if self.bit_len.is_multiple_of(8) {
                self.bytes.push(0);
            }
            let bit = ((value >> i) & 1) as u8;
            let last = self.bytes.last_mut().unwrap();
            *last |= bit << (7 - (self.bit_len % 8));
            self.bit_len += 1;
        }
    }
}

pub fn lzw_compress(input: &[u8]) -> LzwStream {
    let mut out = BitWriter {
        bytes: Vec::new(),
        bit_len: 0,
    };
    let Some((&first, rest)) = input.split_first() else {
        return LzwStream {
            bytes: out.bytes,
            bit_len: 0,
        };
    };
    let mut dict: FxHashMap<(u32, u8), u32> = FxHashMap::default();
    let mut next_code = 256usize;
    let mut emitted = 0usize;
    let mut current = first as u32;
    for &byte in rest {
        if let Some(&code) = dict.get(&(current, byte)) {
            current = code;
            continue;
        }
        out.push(current, code_width(emitted));
        emitted += 1;
        if next_code < MAX_ENTRIES {
            dict.insert((current, byte), next_code as u32);
            next_code += 1;
        }
        current = byte as u32;
    }
    out.push(current, code_width(emitted));
    LzwStream {
        bytes: out.bytes,
        bit_len: out.bit_len,
    }
}

pub fn lzw_decompress(stream: &LzwStream) -> Result<Vec<u8>> {
    let read = |pos: u64, width: u32| -> u32 {
        (0..width as u64).fold(0u32, |acc, j| {
            let bit = pos + j;
            let b = (stream.bytes[(bit / 8) as usize] >> (7 - bit % 8)) & 1;
            (acc << 1) | b as u32
        })
    };
    if stream.bytes.len() as u64 * 8 < stream.bit_len {
        return Err(Error::invalid("bit length exceeds stream size"));
    }
    let mut dict: Vec<Vec<u8>> = (0..=255u8).map(|b| vec![b]).collect();
    let mut out = Vec::new();
    let mut prev: Option<Vec<u8>> = None;
    let mut pos = 0u64;
    let mut i = 0usize;
    while pos < stream.bit_len {
        let width = code_width(i);
        if pos + width as u64 > stream.bit_len {
            return Err(Error::invalid("truncated LZW code"));
        }
        let code = read(pos, width) as usize;
        pos += width as u64;
        i += 1;
        let entry = match (code < dict.len(), &prev) {
            (true, _) => dict[code].clone(),
            (false, Some(p)) if code == dict.len() => {
                let mut e = p.clone();
                e.push(p[0]);
                e
            }
            _ => return Err(Error::invalid(format!("invalid LZW code {code}"))),
        };
        if let Some(p) = prev.take() {
            if dict.len() < MAX_ENTRIES {
                let mut e = p;
                e.push(entry[0]);
                dict.push(e);
            }
        }
        out.extend_from_slice(&entry);
        prev = Some(entry);
    }
    Ok(out)
}

/// Length in bits of the LZW code stream for `input`.
pub fn lzw_compressed_length(input: &[u8]) -> u64 {
    lzw_compress(input).bit_len
}

/// Byte serialization used for compressing matrices: rows and cols as
/// big-endian `u32`, then the row-major cells packed 8 per byte MSB-first
/// with the final byte zero-padded.
pub fn matrix_bytes(m: &BinaryMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + m.cells().div_ceil(8));
    out.extend_from_slice(&(m.rows() as u32).to_be_bytes());
    out.extend_from_slice(&(m.cols() as u32).to_be_bytes());
    for chunk in m.bits().chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= b << (7 - i);
        }
        out.push(byte);
    }
    out
}

pub fn compress_matrix(m: &BinaryMatrix) -> u64 {
    lzw_compressed_length(&matrix_bytes(m))
}
