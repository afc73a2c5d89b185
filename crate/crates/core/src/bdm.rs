//! Block Decomposition Method.
//!
//! A matrix is cut into non-overlapping `d×d` blocks; the estimate is the
//! sum over distinct blocks of `CTM(block) + log2(multiplicity)`.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;

use crate::ctm::CtmTable;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

pub const DEFAULT_BLOCK: usize = 4;

/// What to do with the strips left over when the matrix size is not a
/// multiple of the block size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Extend with zeros to the next multiple of `d`.
    PadZero,
    /// Emit the smaller boundary rectangles as blocks of their own.
    #[default]
    KeepPartial,
    /// Drop the boundary strips.
    Discard,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::PadZero => "pad-zero",
            Boundary::KeepPartial => "keep-partial",
            Boundary::Discard => "discard",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pad-zero" => Ok(Boundary::PadZero),
            "keep-partial" => Ok(Boundary::KeepPartial),
            "discard" => Ok(Boundary::Discard),
            other => Err(Error::invalid(format!(
                "unknown boundary policy {other:?} (pad-zero, keep-partial, discard)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// Distinct blocks with their multiplicities, in order of first
    /// appearance (left to right, top to bottom).
    pub parts: Vec<(BinaryMatrix, u64)>,
    pub boundary: Boundary,
    /// Source cells not covered by any block (nonzero only for `Discard`).
    pub discarded_cells: usize,
}

impl Decomposition {
    pub fn occurrences(&self) -> u64 {
        self.parts.iter().map(|(_, n)| n).sum()
    }
}

pub fn decompose(m: &BinaryMatrix, d: usize, boundary: Boundary) -> Result<Decomposition> {
    if d < 1 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    let padded;
    let source = match boundary {
        Boundary::PadZero => {
            padded = m.padded(m.rows().div_ceil(d) * d, m.cols().div_ceil(d) * d);
            &padded
        }
        _ => m,
    };
    let (rows, cols) = source.shape();
    let mut parts: IndexMap<BinaryMatrix, u64> = IndexMap::new();
    let mut covered = 0;
    for r0 in (0..rows).step_by(d) {
        let h = d.min(rows - r0);
        for c0 in (0..cols).step_by(d) {
            let w = d.min(cols - c0);
            if boundary == Boundary::Discard && (h < d || w < d) {
                continue;
            }
            covered += h * w;
            *parts.entry(source.submatrix(r0, c0, h, w)).or_insert(0) += 1;
        }
    }
    let discarded_cells = match boundary {
        Boundary::Discard => rows * cols - covered,
        _ => 0,
    };
    Ok(Decomposition {
        parts: parts.into_iter().collect(),
        boundary,
        discarded_cells,
    })
}

/// Sum over distinct parts of `CTM(block) + log2(n)`.
pub fn bdm_of(decomposition: &Decomposition, table: &CtmTable) -> f64 {
    decomposition
        .parts
        .iter()
        .map(|(block, n)| table.lookup(block) + (*n as f64).log2())
        .sum()
}

pub fn bdm(m: &BinaryMatrix, d: usize, table: &CtmTable, boundary: Boundary) -> Result<f64> {
    Ok(bdm_of(&decompose(m, d, boundary)?, table))
}
