//! Complete graphs under single-edge and single-node removal, against
//! Erdős–Rényi controls.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::plot::{self, Series, Style};
use super::{median, Experiment, ExperimentConfig, ExperimentOutput, Measure, Meter, Record};
use crate::ctm::CtmTable;
use crate::error::Result;
use crate::graphs::{complete, erdos_renyi, Graph, LabellingMode};
use crate::matrix::BinaryMatrix;
use crate::stats::{sign_test_greater, sign_test_two_sided};

const NAME: &str = "symmetry-breaking";
pub const COMPLETE: &str = "complete";
pub const MINUS_EDGE: &str = "complete-minus-edge";
pub const MINUS_NODE: &str = "complete-minus-node";
pub const RANDOM: &str = "random";
pub const RANDOM_MINUS_EDGE: &str = "random-minus-edge";
/// Edge probability of the random controls.
pub const CONTROL_P: f64 = 0.5;

/// Per-size medians over trials for one measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub measure: Measure,
    pub n: usize,
    pub complete: f64,
    pub minus_edge: f64,
    pub minus_node: f64,
    pub random: f64,
    pub random_minus_edge: f64,
    /// Median over trials of `(K(G − e) − K(G)) / K(G)` for the random
    /// controls.
    pub random_relative_change: f64,
}

/// Sign test on the direction of the random controls' relative change.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignTest {
    pub measure: Measure,
    /// `trials` pools every trial; `medians` uses one value per size.
    pub scope: &'static str,
    pub positives: u64,
    pub negatives: u64,
    pub p_greater: f64,
    pub p_two_sided: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub curves: Vec<CurvePoint>,
    pub sign_tests: Vec<SignTest>,
}

impl SymmetryReport {
    pub fn curve(&self, measure: Measure) -> impl Iterator<Item = &CurvePoint> {
        self.curves.iter().filter(move |c| c.measure == measure)
    }

    pub fn sign_test(&self, measure: Measure, scope: &str) -> Option<&SignTest> {
        self.sign_tests
            .iter()
            .find(|s| s.measure == measure && s.scope == scope)
    }
}

struct Trial {
    records: Vec<Record>,
    matrices: Vec<BinaryMatrix>,
}

fn measure_all(
    meter: &Meter,
    g: &Graph,
    mode: LabellingMode,
    object: &str,
    n: usize,
    trial: Option<usize>,
    out: &mut Trial,
) -> Result<()> {
    for &m in &meter.cfg.measures {
        let (value, matrix) = meter.graph(g, m, mode)?;
        out.records.push(Record {
            object: object.to_string(),
            representation: "adjacency".to_string(),
            measure: m,
            size: n,
            trial,
            value,
            rank: None,
        });
        out.matrices.push(matrix);
    }
    Ok(())
}

fn run_trial(meter: &Meter, n: usize, t: usize) -> Result<Trial> {
    let cfg = meter.cfg;
    let s = cfg.derive(NAME, &[n as u64, t as u64]);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let mode = LabellingMode::sampled(cfg.samples, crate::seed::derive(s, &[1]));
    let mut out = Trial {
        records: Vec::new(),
        matrices: Vec::new(),
    };

    let kn = complete(n);
    let (u, v) = kn.edges()[rng.gen_range(0..kn.edge_count())];
    measure_all(
        meter,
        &kn.remove_edge(u, v)?,
        mode,
        MINUS_EDGE,
        n,
        Some(t),
        &mut out,
    )?;
    let node = rng.gen_range(0..n);
    measure_all(
        meter,
        &kn.remove_node(node)?,
        mode,
        MINUS_NODE,
        n,
        Some(t),
        &mut out,
    )?;

    // resample until the control has an edge to remove
    let mut attempt = 0u64;
    let er = loop {
        let g = erdos_renyi(n, CONTROL_P, crate::seed::derive(s, &[2, attempt]))?;
        if g.edge_count() > 0 {
            break g;
        }
        attempt += 1;
    };
    measure_all(meter, &er, mode, RANDOM, n, Some(t), &mut out)?;
    let (u, v) = er.edges()[rng.gen_range(0..er.edge_count())];
    measure_all(
        meter,
        &er.remove_edge(u, v)?,
        mode,
        RANDOM_MINUS_EDGE,
        n,
        Some(t),
        &mut out,
    )?;
    Ok(out)
}

/// For each size and trial: the complete graph, the complete graph minus a
/// random edge, minus a random node, and an Erdős–Rényi control before and
/// after removing a random edge. All graphs in a trial share one candidate
/// labelling set; each measure is minimized over it independently.
pub fn run_symmetry_breaking(
    cfg: &ExperimentConfig,
    table: &CtmTable,
) -> Result<(ExperimentOutput, SymmetryReport)> {
    cfg.validate()?;
    let meter = Meter { cfg, table };
    let sizes: Vec<usize> = cfg.sizes.clone().collect();

    let complete_rows: Vec<Trial> = sizes
        .par_iter()
        .map(|&n| {
            let mut out = Trial {
                records: Vec::new(),
                matrices: Vec::new(),
            };
            let mode = LabellingMode::sampled(cfg.samples, cfg.derive(NAME, &[n as u64]));
            measure_all(&meter, &complete(n), mode, COMPLETE, n, None, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let trials: Vec<Trial> = jobs
        .par_iter()
        .map(|&(n, t)| run_trial(&meter, n, t))
        .collect::<Result<_>>()?;

    let mut records = Vec::new();
    let mut matrices = Vec::new();
    for part in complete_rows.into_iter().chain(trials) {
        records.extend(part.records);
        matrices.extend(part.matrices);
    }

    let report = summarize(cfg, &records);
    let plots = cfg
        .measures
        .iter()
        .map(|&m| {
            let pick = |f: fn(&CurvePoint) -> f64| -> Vec<(f64, f64)> {
                report.curve(m).map(|c| (c.n as f64, f(c))).collect()
            };
            let series = [
                Series::new(COMPLETE, pick(|c| c.complete)),
                Series::new(MINUS_EDGE, pick(|c| c.minus_edge)),
                Series::new(MINUS_NODE, pick(|c| c.minus_node)),
                Series::new(RANDOM, pick(|c| c.random)),
                Series::new(RANDOM_MINUS_EDGE, pick(|c| c.random_minus_edge)),
            ];
            let title = format!("Symmetry breaking: median {m}");
            (
                format!("plot_symmetry_breaking_{m}.svg"),
                plot::render(&title, "nodes", &m.to_string(), &series, Style::Lines),
            )
        })
        .collect();

    let output = ExperimentOutput {
        experiment: Experiment::SymmetryBreaking,
        records,
        report: serde_json::to_value(&report).expect("report serializes"),
        plots,
        matrices,
    };
    Ok((output, report))
}

fn summarize(cfg: &ExperimentConfig, records: &[Record]) -> SymmetryReport {
    let mut curves = Vec::new();
    let mut sign_tests = Vec::new();
    for &m in &cfg.measures {
        let mut all_changes = Vec::new();
        let mut median_changes = Vec::new();
        for n in cfg.sizes.clone() {
            let values = |object: &str| -> Vec<f64> {
                records
                    .iter()
                    .filter(|r| r.measure == m && r.size == n && r.object == object)
                    .map(|r| r.value)
                    .collect()
            };
            let before = values(RANDOM);
            let after = values(RANDOM_MINUS_EDGE);
            let changes: Vec<f64> = before
                .iter()
                .zip(&after)
                .map(|(b, a)| if *b == 0.0 { 0.0 } else { (a - b) / b })
                .collect();
            let point = CurvePoint {
                measure: m,
                n,
                complete: median(&values(COMPLETE)),
                minus_edge: median(&values(MINUS_EDGE)),
                minus_node: median(&values(MINUS_NODE)),
                random: median(&before),
                random_minus_edge: median(&after),
                random_relative_change: median(&changes),
            };
            median_changes.push(point.random_relative_change);
            all_changes.extend(changes);
            curves.push(point);
        }
        for (scope, changes) in [("trials", &all_changes), ("medians", &median_changes)] {
            let positives = changes.iter().filter(|&&c| c > 0.0).count() as u64;
            let negatives = changes.iter().filter(|&&c| c < 0.0).count() as u64;
            sign_tests.push(SignTest {
                measure: m,
                scope,
                positives,
                negatives,
                p_greater: sign_test_greater(positives, positives + negatives),
                p_two_sided: sign_test_two_sided(positives, positives + negatives),
            });
        }
    }
    SymmetryReport { curves, sign_tests }
}
