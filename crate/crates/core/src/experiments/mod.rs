//! End-to-end studies: symmetry breaking of complete graphs, polyomino
//! robustness across representations, Platonic and Archimedean polyhedra,
//! and hypercubes of growing dimension.
//!
//! Every runner is a pure function of the configuration and the CTM table.
//! Randomness comes from [`seed::derive`] keyed by experiment, size and
//! trial, so any subset of a run can be repeated on its own.

mod hypercube;
pub mod plot;
mod polyhedra;
mod polyominoes;
mod symmetry;

use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{compress_matrix, matrix_block_entropy};
use crate::bdm::{bdm, Boundary, DEFAULT_BLOCK};
use crate::ctm::CtmTable;
use crate::error::{Error, Result};
use crate::graphs::{graph_bdm, graph_block_entropy, graph_compress, Graph, LabellingMode};
use crate::matrix::BinaryMatrix;
use crate::seed;
use crate::stats::average_ranks;

pub use hypercube::{run_hypercube, HypercubeReport};
pub use polyhedra::{run_polyhedra, DualRow, PolyhedraReport, SolidMeans};
pub use polyominoes::run_polyominoes;
pub use symmetry::{run_symmetry_breaking, CurvePoint, SignTest, SymmetryReport};

/// Labelling samples per graph in sampled mode.
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    Bdm,
    Entropy,
    Compress,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Bdm, Measure::Entropy, Measure::Compress];
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Bdm => "bdm",
            Measure::Entropy => "entropy",
            Measure::Compress => "compress",
        })
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bdm" => Ok(Measure::Bdm),
            "entropy" => Ok(Measure::Entropy),
            "compress" => Ok(Measure::Compress),
            other => Err(Error::UnknownName {
                name: other.to_string(),
                valid: Measure::ALL.iter().map(|m| m.to_string()).collect(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Experiment {
    SymmetryBreaking,
    Polyominoes,
    Polyhedra,
    Hypercube,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::SymmetryBreaking,
        Experiment::Polyominoes,
        Experiment::Polyhedra,
        Experiment::Hypercube,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::SymmetryBreaking => "symmetry-breaking",
            Experiment::Polyominoes => "polyominoes",
            Experiment::Polyhedra => "polyhedra",
            Experiment::Hypercube => "hypercube",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::UnknownName {
                name: s.to_string(),
                valid: Experiment::ALL
                    .iter()
                    .map(|e| e.name().to_string())
                    .collect(),
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub table_path: PathBuf,
    pub seed: u64,
    /// Complete-graph sizes for symmetry breaking.
    pub sizes: RangeInclusive<usize>,
    /// Random trials per size for symmetry breaking.
    pub trials: usize,
    /// Hypercube dimensions.
    pub dims: RangeInclusive<u32>,
    /// Random labellings per graph (plus the canonical one).
    pub samples: usize,
    pub block: usize,
    pub boundary: Boundary,
    pub measures: Vec<Measure>,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(table_path: impl Into<PathBuf>, seed: u64, out_dir: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            table_path: table_path.into(),
            seed,
            sizes: 5..=20,
            trials: DEFAULT_TRIALS,
            dims: 2..=7,
            samples: DEFAULT_SAMPLES,
            block: DEFAULT_BLOCK,
            boundary: Boundary::default(),
            measures: Measure::ALL.to_vec(),
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.sizes.is_empty() || *self.sizes.start() < 3 {
            return fail(format!(
                "sizes {:?} must be non-empty and start at 3 or more",
                self.sizes
            ));
        }
        if self.dims.is_empty() || *self.dims.start() < 1 || *self.dims.end() > 10 {
            return fail(format!("dims {:?} must lie within 1..=10", self.dims));
        }
        if self.trials == 0 {
            return fail("trials must be positive".into());
        }
        if self.samples == 0 {
            return fail("samples must be positive".into());
        }
        if self.block == 0 {
            return fail("block size must be positive".into());
        }
        if self.measures.is_empty() {
            return fail("measure set is empty".into());
        }
        let mut sorted = self.measures.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.measures.len() {
            return fail("measure set has duplicates".into());
        }
        Ok(())
    }

    /// Validates the configuration and loads the referenced table.
    pub fn load_table(&self) -> Result<CtmTable> {
        self.validate()?;
        CtmTable::load(&self.table_path)
    }

    pub(crate) fn derive(&self, experiment: &str, parts: &[u64]) -> u64 {
        let mut all = vec![seed::tag(experiment)];
        all.extend_from_slice(parts);
        seed::derive(self.seed, &all)
    }
}

/// One measurement. `rank` is set for experiments that rank objects; it
/// is the average rank within the (representation, measure) group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub object: String,
    pub representation: String,
    pub measure: Measure,
    pub size: usize,
    pub trial: Option<usize>,
    pub value: f64,
    pub rank: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correlation {
    pub measure: Measure,
    pub first: String,
    pub second: String,
    pub n: usize,
    pub rho: f64,
    pub p: f64,
}

/// Per-object measurements with ranks and the rank correlations between
/// representations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rows: Vec<Record>,
    pub correlations: Vec<Correlation>,
}

impl RankReport {
    pub fn correlation(&self, measure: Measure) -> Option<&Correlation> {
        self.correlations.iter().find(|c| c.measure == measure)
    }
}

/// What a run produces: CSV records, a JSON report, SVG plots, and the
/// matrices each record was measured on.
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub experiment: Experiment,
    pub records: Vec<Record>,
    pub report: serde_json::Value,
    pub plots: Vec<(String, String)>,
    pub matrices: Vec<BinaryMatrix>,
}

impl ExperimentOutput {
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r)
                .map_err(|e| Error::Config(format!("csv: {e}")))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Config(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Writes `results.csv`, `report.json` and the plots into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let put = |name: &str, body: &str| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))
        };
        put("results.csv", &self.csv()?)?;
        let json = serde_json::to_string_pretty(&self.report)
            .map_err(|e| Error::Config(format!("json: {e}")))?;
        put("report.json", &(json + "\n"))?;
        for (name, svg) in &self.plots {
            put(name, svg)?;
        }
        Ok(())
    }
}

/// Runs one experiment and returns its output without touching disk.
pub fn run(
    experiment: Experiment,
    cfg: &ExperimentConfig,
    table: &CtmTable,
) -> Result<ExperimentOutput> {
    cfg.validate()?;
    log::info!("running {experiment}");
    match experiment {
        Experiment::SymmetryBreaking => run_symmetry_breaking(cfg, table).map(|(o, _)| o),
        Experiment::Polyominoes => run_polyominoes(cfg, table).map(|(o, _)| o),
        Experiment::Polyhedra => run_polyhedra(cfg, table).map(|(o, _)| o),
        Experiment::Hypercube => run_hypercube(cfg, table).map(|(o, _)| o),
    }
}

pub(crate) struct Meter<'a> {
    pub cfg: &'a ExperimentConfig,
    pub table: &'a CtmTable,
}

impl Meter<'_> {
    pub fn matrix(&self, m: &BinaryMatrix, measure: Measure) -> f64 {
        let (d, b) = (self.cfg.block, self.cfg.boundary);
        match measure {
            Measure::Bdm => bdm(m, d, self.table, b).expect("block size validated"),
            Measure::Entropy => matrix_block_entropy(m, d, b).expect("block size validated"),
            Measure::Compress => compress_matrix(m) as f64,
        }
    }

    /// Labelling-minimized value and the adjacency matrix attaining it.
    pub fn graph(
        &self,
        g: &Graph,
        measure: Measure,
        mode: LabellingMode,
    ) -> Result<(f64, BinaryMatrix)> {
        let (d, b) = (self.cfg.block, self.cfg.boundary);
        let min = match measure {
            Measure::Bdm => graph_bdm(g, d, b, self.table, mode)?,
            Measure::Entropy => graph_block_entropy(g, d, b, mode)?,
            Measure::Compress => graph_compress(g, mode)?,
        };
        Ok((min.value, g.adjacency(&min.labelling)))
    }
}

/// Fills `rank` for every record, ranking within each
/// (representation, measure) group.
pub(crate) fn assign_ranks(records: &mut [Record]) {
    let mut groups: Vec<(String, Measure)> = Vec::new();
    for r in records.iter() {
        let key = (r.representation.clone(), r.measure);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    for (rep, measure) in groups {
        let idx: Vec<usize> = (0..records.len())
            .filter(|&i| records[i].representation == rep && records[i].measure == measure)
            .collect();
        let values: Vec<f64> = idx.iter().map(|&i| records[i].value).collect();
        for (&i, rank) in idx.iter().zip(average_ranks(&values)) {
            records[i].rank = Some(rank);
        }
    }
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        for m in Measure::ALL {
            assert_eq!(m.to_string().parse::<Measure>().unwrap(), m);
        }
        assert!("fig1".parse::<Experiment>().is_err());
        assert!("gzip".parse::<Measure>().is_err());
    }

    #[test]
    fn config_validation() {
        let ok = ExperimentConfig::new("t.ctm", 1, "out");
        assert!(ok.validate().is_ok());
        let mut bad = ok.clone();
        bad.measures = vec![Measure::Bdm, Measure::Bdm];
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
        let mut bad = ok.clone();
        bad.sizes = 2..=5;
        assert!(bad.validate().is_err());
        let mut bad = ok;
        bad.samples = 0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn missing_table_is_an_error() {
        let cfg = ExperimentConfig::new("/nonexistent/table.ctm", 1, "out");
        assert!(matches!(cfg.load_table(), Err(Error::Io { .. })));
    }

    #[test]
    fn ranks_are_grouped() {
        let rec = |rep: &str, m, v| Record {
            object: "x".into(),
            representation: rep.into(),
            measure: m,
            size: 1,
            trial: None,
            value: v,
            rank: None,
        };
        let mut rs = vec![
            rec("a", Measure::Bdm, 3.0),
            rec("a", Measure::Bdm, 1.0),
            rec("b", Measure::Bdm, 1.0),
            rec("a", Measure::Compress, 9.0),
            rec("a", Measure::Bdm, 3.0),
        ];
        assign_ranks(&mut rs);
        let ranks: Vec<f64> = rs.iter().map(|r| r.rank.unwrap()).collect();
        assert_eq!(ranks, vec![2.5, 1.0, 1.0, 1.0, 2.5]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&[]).is_nan());
    }
}
