//! Coding-theorem complexity tables.
//!
//! A table maps every halting output `s` of an enumerated machine space to
//! `-log2(count(s) / total_halting)` bits. One normalization is shared by
//! all output shapes. Lookups of unseen blocks fall back to a declared
//! policy (see [`CtmTable::lookup`]).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rustc_hash::FxHashMap;

use crate::baselines::entropy;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::turmite::OutputCounts;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CtmMeta {
    pub k: u32,
    pub budget: u32,
    pub total_halting: u64,
    pub total_run: u64,
    pub symmetrized: bool,
}

#[derive(Clone, Debug)]
pub struct CtmTable {
    meta: CtmMeta,
    counts: FxHashMap<BinaryMatrix, u64>,
    bits: FxHashMap<BinaryMatrix, f64>,
    shape_max: FxHashMap<(usize, usize), f64>,
}

impl PartialEq for CtmTable {
    fn eq(&self, other: &Self) -> bool {
        self.meta == other.meta && self.counts == other.counts
    }
}

/// How a lookup was resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LookupSource {
    Stored,
    ShapeFallback,
    EntropyFallback,
}

impl CtmTable {
    /// Builds a table from raw output counts.
    pub fn build(counts: OutputCounts, k: u32, budget: u32) -> Result<Self> {
        let meta = CtmMeta {
            k,
            budget,
            total_halting: counts.total_halting,
            total_run: counts.total_run,
            symmetrized: false,
        };
        Self::from_counts(counts.counts, meta)
    }

    pub fn from_counts(counts: FxHashMap<BinaryMatrix, u64>, meta: CtmMeta) -> Result<Self> {
        if meta.total_halting == 0 {
            return Err(Error::EmptyDistribution);
        }
        let total = meta.total_halting as f64;
        let mut bits = FxHashMap::default();
        let mut shape_max: FxHashMap<(usize, usize), f64> = FxHashMap::default();
        for (m, &c) in &counts {
            if c == 0 || c > meta.total_halting {
                return Err(Error::invalid(format!(
                    "count {c} for {m:?} outside 1..={}",
                    meta.total_halting
                )));
            }
            let v = -(c as f64 / total).log2();
            bits.insert(m.clone(), v);
            let e = shape_max.entry(m.shape()).or_insert(v);
            *e = e.max(v);
        }
        Ok(CtmTable {
            meta,
            counts,
            bits,
            shape_max,
        })
    }

    pub fn meta(&self) -> &CtmMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, block: &BinaryMatrix) -> u64 {
        self.counts.get(block).copied().unwrap_or(0)
    }

    /// Stored `(block, count, ctm_bits)` triples in no particular order.
    pub fn entries(&self) -> impl Iterator<Item = (&BinaryMatrix, u64, f64)> + '_ {
        self.counts.iter().map(move |(m, &c)| (m, c, self.bits[m]))
    }

    pub fn shapes(&self) -> BTreeSet<(usize, usize)> {
        self.shape_max.keys().copied().collect()
    }

    /// Largest stored value among blocks of the given shape.
    pub fn shape_max(&self, shape: (usize, usize)) -> Option<f64> {
        self.shape_max.get(&shape).copied()
    }

    pub fn lookup(&self, block: &BinaryMatrix) -> f64 {
        self.lookup_with_source(block).0
    }

    /// Stored value if present; otherwise one bit more than the largest
    /// stored value of the same shape; otherwise, for shapes the table never
    /// saw, `n·H1 + log2 n + 1` with `n` cells and per-bit entropy `H1`.
    pub fn lookup_with_source(&self, block: &BinaryMatrix) -> (f64, LookupSource) {
        if let Some(&v) = self.bits.get(block) {
            return (v, LookupSource::Stored);
        }
        if let Some(&max) = self.shape_max.get(&block.shape()) {
            return (max + 1.0, LookupSource::ShapeFallback);
        }
        (entropy_fallback(block), LookupSource::EntropyFallback)
    }

    /// Pools counts over each class of blocks related by the dihedral group
    /// and 0/1 complement. Every member of a class, seen or not, receives
    /// the class total.
    pub fn symmetrize(&self) -> CtmTable {
        if self.meta.symmetrized {
            return self.clone();
        }
        let mut pooled: FxHashMap<BinaryMatrix, u64> = FxHashMap::default();
        for m in self.counts.keys() {
            if pooled.contains_key(m) {
                continue;
            }
            let class = symmetry_class(m);
            let total: u64 = class.iter().map(|b| self.count(b)).sum();
            for b in class {
                pooled.insert(b, total);
            }
        }
        let meta = CtmMeta {
            symmetrized: true,
            ..self.meta
        };
        Self::from_counts(pooled, meta).expect("pooled counts stay within total")
    }

    /// Serializes into the `ctm v1` text format. Entries are sorted by
    /// shape, then by hex string.
    pub fn to_text(&self) -> String {
        let m = &self.meta;
        let mut out = format!(
            "ctm v1 k={} budget={} halting={} run={} sym={}\n",
            m.k, m.budget, m.total_halting, m.total_run, m.symmetrized as u8
        );
        let mut rows: Vec<(usize, usize, String, u64)> = self
            .counts
            .iter()
            .map(|(b, &c)| (b.rows(), b.cols(), b.to_hex(), c))
            .collect();
        rows.sort();
        for (r, c, hex, count) in rows {
            let _ = writeln!(out, "{r} {c} {hex} {count}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let meta = parse_header(header)?;
        let mut counts = FxHashMap::default();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [rows, cols, hex, count] = fields[..] else {
                return Err(Error::parse(lineno, "expected `rows cols hexbits count`"));
            };
            let dim = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::parse(lineno, format!("bad dimension {s:?}")))
            };
            let (rows, cols) = (dim(rows)?, dim(cols)?);
            if count.starts_with('-') {
                return Err(Error::parse(lineno, format!("negative count {count}")));
            }
            let count: u64 = count
                .parse()
                .map_err(|e| Error::parse(lineno, format!("bad count {count:?}: {e}")))?;
            if count == 0 || count > meta.total_halting {
                return Err(Error::parse(
                    lineno,
                    format!("count {count} outside 1..={}", meta.total_halting),
                ));
            }
            let block = BinaryMatrix::from_hex(rows, cols, hex)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            if counts.insert(block, count).is_some() {
                return Err(Error::parse(lineno, "duplicate entry"));
            }
        }
        Self::from_counts(counts, meta).map_err(|e| match e {
            Error::EmptyDistribution => Error::parse(1, "halting total must be positive"),
            other => other,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_text(&text)
    }
}

fn parse_header(line: &str) -> Result<CtmMeta> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("ctm") || tokens.next() != Some("v1") {
        return Err(Error::parse(1, "header must start with `ctm v1`"));
    }
    let mut fields: FxHashMap<&str, &str> = FxHashMap::default();
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(1, format!("bad header field {tok:?}")))?;
        fields.insert(key, value);
    }
    let get = |key: &str| -> Result<u64> {
        let raw = fields
            .get(key)
            .ok_or_else(|| Error::parse(1, format!("missing header field `{key}`")))?;
        raw.parse()
            .map_err(|e| Error::parse(1, format!("bad value for `{key}`: {e}")))
    };
    let sym = match get("sym")? {
        0 => false,
        1 => true,
        v => return Err(Error::parse(1, format!("sym must be 0 or 1, got {v}"))),
    };
    let narrow = |key: &str| -> Result<u32> {
        u32::try_from(get(key)?).map_err(|_| Error::parse(1, format!("`{key}` out of range")))
    };
    Ok(CtmMeta {
        k: narrow("k")?,
        budget: narrow("budget")?,
        total_halting: get("halting")?,
        total_run: get("run")?,
        symmetrized: sym,
    })
}

/// Distinct members of the dihedral × complement class of `m`.
pub fn symmetry_class(m: &BinaryMatrix) -> Vec<BinaryMatrix> {
    let mut class: Vec<BinaryMatrix> = m
        .dihedral_images()
        .into_iter()
        .flat_map(|b| {
            let c = b.complement();
            [b, c]
        })
        .collect();
    class.sort();
    class.dedup();
    class
}

fn entropy_fallback(block: &BinaryMatrix) -> f64 {
    let n = block.cells() as f64;
    let h1 = entropy(block.bits()).expect("blocks are never empty");
    n * h1 + n.log2() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turmite::enumerate_counts;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_rows(rows).unwrap()
    }

    fn table(entries: &[(&[&str], u64)], total: u64) -> CtmTable {
        let counts = entries.iter().map(|(r, c)| (m(r), *c)).collect();
        let meta = CtmMeta {
            k: 2,
            budget: 500,
            total_halting: total,
            total_run: total * 2,
            symmetrized: false,
        };
        CtmTable::from_counts(counts, meta).unwrap()
    }

    #[test]
    fn half_frequency_is_one_bit() {
        let t = table(&[(&["0"], 50), (&["1"], 30), (&["01"], 20)], 100);
        assert_eq!(t.lookup(&m(&["0"])), 1.0);
        assert!(t.lookup(&m(&["0"])) < t.lookup(&m(&["1"])));
        assert!(t.lookup(&m(&["1"])) < t.lookup(&m(&["01"])));
    }

    #[test]
    fn empty_distribution_is_an_error() {
        let counts = OutputCounts::default();
        assert!(matches!(
            CtmTable::build(counts, 1, 10),
            Err(Error::EmptyDistribution)
        ));
    }

    #[test]
    fn fallbacks() {
        let t = table(&[(&["00", "00"], 8), (&["01", "10"], 1)], 16);
        let stored = t.lookup(&m(&["01", "10"]));
        assert_eq!(stored, 4.0);
        let (v, src) = t.lookup_with_source(&m(&["11", "10"]));
        assert_eq!(src, LookupSource::ShapeFallback);
        assert_eq!(v, 5.0);

        let (v, src) = t.lookup_with_source(&m(&["111", "100"]));
        assert_eq!(src, LookupSource::EntropyFallback);
        // 6·H1(4/6) + log2 6 + 1
        let h = -(2.0f64 / 3.0) * (2.0f64 / 3.0).log2() - (1.0f64 / 3.0) * (1.0f64 / 3.0).log2();
        assert!((h - 0.918_295_834).abs() < 1e-9);
        assert!((v - (6.0 * h + 6f64.log2() + 1.0)).abs() < 1e-12);
        assert!((v - 9.0947).abs() < 1e-4);
    }

    #[test]
    fn shape_fallback_rule_application() {
        // A 4x4 shape whose largest stored value is 17.3 bits.
        let mut counts = FxHashMap::default();
        counts.insert(BinaryMatrix::zeros(4, 4), 1u64);
        let total = 2f64.powf(17.3);
        let meta = CtmMeta {
            k: 2,
            budget: 500,
            total_halting: total.round() as u64,
            total_run: total.round() as u64,
            symmetrized: false,
        };
        let t = CtmTable::from_counts(counts, meta).unwrap();
        let max = t.shape_max((4, 4)).unwrap();
        assert!((max - 17.3).abs() < 1e-4);
        assert_eq!(t.lookup(&BinaryMatrix::filled(4, 4, 1)), max + 1.0);
    }

    #[test]
    fn symmetrization_pools_classes() {
        let raw = table(
            &[
                (&["10", "00"], 3),
                (&["00", "01"], 2),
                (&["01", "11"], 4),
                (&["00", "00"], 7),
            ],
            20,
        );
        let sym = raw.symmetrize();
        assert!(sym.meta().symmetrized);
        // All corners, both polarities: 8 members pooled to 3+2+4.
        let corner = m(&["10", "00"]);
        let class = symmetry_class(&corner);
        assert_eq!(class.len(), 8);
        for b in &class {
            assert_eq!(sym.count(b), 9);
            assert_eq!(sym.lookup(b), sym.lookup(&corner));
        }
        assert_eq!(sym.count(&m(&["11", "11"])), 7);
        assert_eq!(sym.symmetrize(), sym);
    }

    #[test]
    fn symmetrized_k1_table_is_complement_invariant() {
        let t = CtmTable::build(enumerate_counts(1, 100, 0..256).unwrap(), 1, 100).unwrap();
        let s = t.symmetrize();
        assert_eq!(s.lookup(&m(&["0"])), s.lookup(&m(&["1"])));
    }

    #[test]
    fn text_roundtrip() {
        let t = CtmTable::build(enumerate_counts(1, 100, 0..256).unwrap(), 1, 100).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("ctm v1 k=1 budget=100 halting=128 run=256 sym=0\n"));
        assert_eq!(CtmTable::parse_text(&text).unwrap(), t);
        let s = t.symmetrize();
        assert_eq!(CtmTable::parse_text(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "ctm v1 k=1 budget=10 halting=4 run=8 sym=0\n1 1 0 2\n1 1 8 -2\n";
        match CtmTable::parse_text(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let dup = "ctm v1 k=1 budget=10 halting=4 run=8 sym=0\n1 1 0 2\n1 1 0 2\n";
        assert!(matches!(
            CtmTable::parse_text(dup),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            CtmTable::parse_text("ctm v2 k=1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let short = "ctm v1 k=1 budget=10 halting=4 run=8 sym=0\n2 2 00 1\n";
        assert!(matches!(
            CtmTable::parse_text(short),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
