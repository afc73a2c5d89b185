//! Rectangular 0/1 arrays.
//!
//! `BinaryMatrix` carries turmite outputs, CTM table keys, decomposition
//! blocks, polyomino bitmaps and graph adjacency matrices alike.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u8>,
}

impl BinaryMatrix {
    pub fn new(rows: usize, cols: usize, bits: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if bits.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} cells, got {}",
                rows * cols,
                bits.len()
            )));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::invalid(format!("cell value {b} is not 0 or 1")));
        }
        Ok(BinaryMatrix { rows, cols, bits })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        BinaryMatrix {
            rows,
            cols,
            bits: vec![0; rows * cols],
        }
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.bits.fill(value & 1);
        m
    }

    /// Builds a matrix from rows of `0`/`1` characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::invalid(format!(
                    "row {i} has {} cells, expected {cols}",
                    r.len()
                )));
            }
            for ch in r.chars() {
                bits.push(match ch {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::invalid(format!("bad cell character {other:?}"))),
                });
            }
        }
        Self::new(rows.len(), cols, bits)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.bits[r * cols + c] = f(r, c) as u8;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn cells(&self) -> usize {
        self.bits.len()
    }

    /// Row-major cell values, each 0 or 1.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.bits[r * self.cols + c] = v & 1;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        BinaryMatrix {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| 1 - b).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r) == 1)
    }

    /// Quarter turn clockwise.
    pub fn rotate90(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| {
            self.get(self.rows - 1 - c, r) == 1
        })
    }

    /// Mirror left to right.
    pub fn flip_horizontal(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, self.cols - 1 - c) == 1
        })
    }

    /// The eight images under the dihedral group of the square (four
    /// rotations, each with and without a mirror). Non-square shapes swap
    /// between `r×c` and `c×r`. Duplicates are kept.
    pub fn dihedral_images(&self) -> [BinaryMatrix; 8] {
        let r0 = self.clone();
        let r1 = r0.rotate90();
        let r2 = r1.rotate90();
        let r3 = r2.rotate90();
        let f0 = r0.flip_horizontal();
        let f1 = r1.flip_horizontal();
        let f2 = r2.flip_horizontal();
        let f3 = r3.flip_horizontal();
        [r0, r1, r2, r3, f0, f1, f2, f3]
    }

    /// Copy of the `h×w` window starting at (`r0`, `c0`).
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(
            r0 + h <= self.rows && c0 + w <= self.cols,
            "window out of range"
        );
        let mut bits = Vec::with_capacity(h * w);
        for r in r0..r0 + h {
            let start = r * self.cols + c0;
            bits.extend_from_slice(&self.bits[start..start + w]);
        }
        BinaryMatrix {
            rows: h,
            cols: w,
            bits,
        }
    }

    /// Extends the matrix with zeros on the bottom and right.
    pub fn padded(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols);
        Self::from_fn(rows, cols, |r, c| {
            r < self.rows && c < self.cols && self.get(r, c) == 1
        })
    }

    /// Row-major bits packed MSB-first into hex digits. The final digit is
    /// zero-padded on the right.
    pub fn to_hex(&self) -> String {
        const DIGITS: &[u8; 16] = b"0123456789abcdef";
        self.bits
            .chunks(4)
            .map(|chunk| {
                let mut v = 0usize;
                for i in 0..4 {
                    v = (v << 1) | *chunk.get(i).unwrap_or(&0) as usize;
                }
                DIGITS[v] as char
            })
            .collect()
    }

    pub fn from_hex(rows: usize, cols: usize, hex: &str) -> Result<Self> {
        let cells = rows * cols;
        let expected = cells.div_ceil(4);
        if hex.len() != expected {
            return Err(Error::invalid(format!(
                "{rows}x{cols} block needs {expected} hex digits, got {}",
                hex.len()
            )));
        }
        let mut bits = Vec::with_capacity(expected * 4);
        for ch in hex.chars() {
            let v = ch
                .to_digit(16)
                .filter(|_| !ch.is_ascii_uppercase())
                .ok_or_else(|| Error::invalid(format!("bad hex digit {ch:?}")))?;
            for i in (0..4).rev() {
                bits.push(((v >> i) & 1) as u8);
            }
        }
        if bits[cells..].iter().any(|&b| b != 0) {
            return Err(Error::invalid("nonzero padding bits in hex block"));
        }
        bits.truncate(cells);
        Self::new(rows, cols, bits)
    }

    /// Text form: `rows cols` header, then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| Error::parse(hline, format!("bad dimension: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(hline, "header must be `rows cols`"));
        };
        if rows == 0 || cols == 0 {
            return Err(Error::parse(hline, "dimensions must be positive"));
        }
        let mut bits = Vec::with_capacity(rows * cols);
        let mut seen = 0;
        for (lineno, line) in lines {
            if seen == rows {
                return Err(Error::parse(lineno, "more rows than declared"));
            }
            if line.len() != cols {
                return Err(Error::parse(
                    lineno,
                    format!("expected {cols} cells, found {}", line.len()),
                ));
            }
            for ch in line.chars() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    other => return Err(Error::parse(lineno, format!("bad cell {other:?}"))),
                }
            }
            seen += 1;
        }
        if seen != rows {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {rows} rows, found {seen}"),
            ));
        }
        Self::new(rows, cols, bits)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_text(&text)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            f.write_str(" ")?;
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(BinaryMatrix::new(0, 3, vec![]).is_err());
        assert!(BinaryMatrix::new(2, 2, vec![0, 1, 1]).is_err());
        assert!(BinaryMatrix::new(1, 2, vec![0, 2]).is_err());
    }

    #[test]
    fn rotation_has_order_four() {
        let m = BinaryMatrix::from_rows(&["110", "001"]).unwrap();
        let r = m.rotate90();
        assert_eq!(r.shape(), (3, 2));
        assert_eq!(r, BinaryMatrix::from_rows(&["01", "01", "10"]).unwrap());
        assert_eq!(r.rotate90().rotate90().rotate90(), m);
    }

    #[test]
    fn transpose_is_a_dihedral_image() {
        let m = BinaryMatrix::from_rows(&["1101", "0010", "1000"]).unwrap();
        assert!(m.dihedral_images().contains(&m.transpose()));
    }

    #[test]
    fn hex_packs_msb_first() {
        let m = BinaryMatrix::from_rows(&["10", "11", "1"]);
        assert!(m.is_err());
        let m = BinaryMatrix::from_rows(&["101", "100"]).unwrap();
        // 1011 00(00)
        assert_eq!(m.to_hex(), "b0");
        assert_eq!(BinaryMatrix::from_hex(2, 3, "b0").unwrap(), m);
        assert!(BinaryMatrix::from_hex(2, 3, "b5").is_err());
        assert!(BinaryMatrix::from_hex(2, 3, "B0").is_err());
    }

    #[test]
    fn text_format_roundtrip_and_errors() {
        let m = BinaryMatrix::from_rows(&["0110", "1001"]).unwrap();
        assert_eq!(m.to_text(), "2 4\n0110\n1001\n");
        assert_eq!(BinaryMatrix::parse_text(&m.to_text()).unwrap(), m);
        match BinaryMatrix::parse_text("2 2\n01\n0x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(BinaryMatrix::parse_text("2 2\n01\n").is_err());
        assert!(BinaryMatrix::parse_text("1 2\n01\n11\n").is_err());
    }

    #[test]
    fn submatrix_and_padding() {
        let m = BinaryMatrix::from_rows(&["101", "010", "111"]).unwrap();
        assert_eq!(
            m.submatrix(1, 1, 2, 2),
            BinaryMatrix::from_rows(&["10", "11"]).unwrap()
        );
        let p = m.padded(4, 4);
        assert_eq!(p.count_ones(), m.count_ones());
        assert_eq!(p.submatrix(0, 0, 3, 3), m);
    }
}
