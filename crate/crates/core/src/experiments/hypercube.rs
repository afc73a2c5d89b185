//! Hypercube graphs of growing dimension.

use serde::Serialize;

use super::plot::{self, Series, Style};
use super::{Experiment, ExperimentConfig, ExperimentOutput, Measure, Meter, Record};
use crate::ctm::CtmTable;
use crate::error::Result;
use crate::graphs::{hypercube, LabellingMode};

const NAME: &str = "hypercube";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypercubeReport {
    /// `(measure, [(dim, value)])` in configuration order.
    pub curves: Vec<(Measure, Vec<(u32, f64)>)>,
    /// Whether each curve strictly increases with the dimension.
    pub increasing: Vec<(Measure, bool)>,
}

impl HypercubeReport {
    pub fn curve(&self, measure: Measure) -> Option<&[(u32, f64)]> {
        self.curves
            .iter()
            .find(|(m, _)| *m == measure)
            .map(|(_, c)| c.as_slice())
    }

    pub fn is_increasing(&self, measure: Measure) -> Option<bool> {
        self.increasing
            .iter()
            .find(|(m, _)| *m == measure)
            .map(|&(_, b)| b)
    }
}

/// Sampled-mode measures of `Q_dim` for each configured dimension.
pub fn run_hypercube(
    cfg: &ExperimentConfig,
    table: &CtmTable,
) -> Result<(ExperimentOutput, HypercubeReport)> {
    cfg.validate()?;
    let meter = Meter { cfg, table };
    let mut records = Vec::new();
    let mut matrices = Vec::new();
    for dim in cfg.dims.clone() {
        let g = hypercube(dim);
        let mode = LabellingMode::sampled(cfg.samples, cfg.derive(NAME, &[dim as u64]));
        for &m in &cfg.measures {
            let (value, adjacency) = meter.graph(&g, m, mode)?;
            records.push(Record {
                object: format!("q{dim}"),
                representation: "adjacency".to_string(),
                measure: m,
                size: dim as usize,
                trial: None,
                value,
                rank: None,
            });
            matrices.push(adjacency);
        }
    }

    let mut curves = Vec::new();
    let mut increasing = Vec::new();
    for &m in &cfg.measures {
        let curve: Vec<(u32, f64)> = records
            .iter()
            .filter(|r| r.measure == m)
            .map(|r| (r.size as u32, r.value))
            .collect();
        increasing.push((m, curve.windows(2).all(|w| w[1].1 > w[0].1)));
        curves.push((m, curve));
    }
    let report = HypercubeReport { curves, increasing };

    let plots = report
        .curves
        .iter()
        .map(|(m, c)| {
            let points = c.iter().map(|&(d, v)| (d as f64, v)).collect();
            (
                format!("plot_hypercube_{m}.svg"),
                plot::render(
                    &format!("Hypercube by {m}"),
                    "dimension",
                    &m.to_string(),
                    &[Series::new(m.to_string(), points)],
                    Style::Lines,
                ),
            )
        })
        .collect();

    let output = ExperimentOutput {
        experiment: Experiment::Hypercube,
        records,
        report: serde_json::to_value(&report).expect("report serializes"),
        plots,
        matrices,
    };
    Ok((output, report))
}
