//! Platonic and Archimedean solids, and the Platonic solids against their
//! duals.

use rayon::prelude::*;
use serde::Serialize;

use super::plot::{self, Series, Style};
use super::{
    assign_ranks, mean, Correlation, Experiment, ExperimentConfig, ExperimentOutput, Measure,
    Meter, RankReport, Record,
};
use crate::ctm::CtmTable;
use crate::error::Result;
use crate::graphs::{
    archimedean, archimedean_names, dual, isomorphic, platonic, platonic_names, Graph,
    LabellingMode, ISOMORPHISM_LIMIT,
};
use crate::matrix::BinaryMatrix;
use crate::seed;
use crate::stats::{spearman, RankedList};

const NAME: &str = "polyhedra";
pub const GRAPH: &str = "graph";
pub const DUAL: &str = "dual";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualRow {
    pub measure: Measure,
    pub solid: String,
    /// Platonic solid the dual is isomorphic to, when the checker can
    /// decide it within its size limit.
    pub dual_is: Option<String>,
    pub value: f64,
    pub dual_value: f64,
    pub absolute_difference: f64,
    /// `|K(g) − K(dual g)| / max(K(g), K(dual g))`.
    pub relative_difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolidMeans {
    pub measure: Measure,
    pub platonic: f64,
    pub archimedean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyhedraReport {
    pub ranks: RankReport,
    pub duals: Vec<DualRow>,
    pub means: Vec<SolidMeans>,
}

impl PolyhedraReport {
    pub fn value(&self, solid: &str, representation: &str, measure: Measure) -> Option<f64> {
        self.ranks
            .rows
            .iter()
            .find(|r| {
                r.object == solid && r.representation == representation && r.measure == measure
            })
            .map(|r| r.value)
    }
}

fn dual_identity(d: &Graph) -> Result<Option<String>> {
    if d.node_count() > ISOMORPHISM_LIMIT {
        return Ok(None);
    }
    for name in platonic_names() {
        let p = platonic(name)?;
        if p.node_count() == d.node_count() && isomorphic(&p, d)? {
            return Ok(Some(name.to_string()));
        }
    }
    Ok(None)
}

/// Measures all 18 solids and the duals of the five Platonic ones.
pub fn run_polyhedra(
    cfg: &ExperimentConfig,
    table: &CtmTable,
) -> Result<(ExperimentOutput, PolyhedraReport)> {
    cfg.validate()?;
    let meter = Meter { cfg, table };
    let mut jobs: Vec<(String, &str, Graph)> = Vec::new();
    for name in platonic_names() {
        jobs.push((name.to_string(), GRAPH, platonic(name)?));
    }
    for name in archimedean_names() {
        jobs.push((name.to_string(), GRAPH, archimedean(name)?));
    }
    for name in platonic_names() {
        jobs.push((name.to_string(), DUAL, dual(&platonic(name)?)?));
    }

    let measured: Vec<(Vec<Record>, Vec<BinaryMatrix>)> = jobs
        .par_iter()
        .map(|(name, rep, g)| {
            let mode = LabellingMode::sampled(
                cfg.samples,
                cfg.derive(NAME, &[seed::tag(rep), seed::tag(name)]),
            );
            let mut records = Vec::new();
            let mut matrices = Vec::new();
            for &m in &cfg.measures {
                let (value, adjacency) = meter.graph(g, m, mode)?;
                records.push(Record {
                    object: name.clone(),
                    representation: rep.to_string(),
                    measure: m,
                    size: g.node_count(),
                    trial: None,
                    value,
                    rank: None,
                });
                matrices.push(adjacency);
            }
            Ok((records, matrices))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut matrices = Vec::new();
    for (r, m) in measured {
        rows.extend(r);
        matrices.extend(m);
    }
    assign_ranks(&mut rows);

    let identities: Vec<Option<String>> = jobs
        .iter()
        .filter(|(_, rep, _)| *rep == DUAL)
        .map(|(_, _, g)| dual_identity(g))
        .collect::<Result<_>>()?;

    let lookup = |name: &str, rep: &str, m: Measure| {
        rows.iter()
            .find(|r| r.object == name && r.representation == rep && r.measure == m)
            .map(|r| r.value)
            .expect("every job was measured")
    };
    let mut duals = Vec::new();
    let mut correlations = Vec::new();
    let mut means = Vec::new();
    let mut plots = Vec::new();
    for &m in &cfg.measures {
        for (name, dual_is) in platonic_names().into_iter().zip(&identities) {
            let (a, b) = (lookup(name, GRAPH, m), lookup(name, DUAL, m));
            let diff = (a - b).abs();
            duals.push(DualRow {
                measure: m,
                solid: name.to_string(),
                dual_is: dual_is.clone(),
                value: a,
                dual_value: b,
                absolute_difference: diff,
                relative_difference: if diff == 0.0 { 0.0 } else { diff / a.max(b) },
            });
        }
        let list = |rep: &str| {
            RankedList::new(platonic_names().into_iter().map(|n| (n, lookup(n, rep, m))))
        };
        let s = spearman(&list(GRAPH), &list(DUAL))?;
        correlations.push(Correlation {
            measure: m,
            first: GRAPH.to_string(),
            second: DUAL.to_string(),
            n: platonic_names().len(),
            rho: s.rho,
            p: s.p,
        });
        let avg = |names: Vec<&str>| {
            mean(
                &names
                    .iter()
                    .map(|n| lookup(n, GRAPH, m))
                    .collect::<Vec<_>>(),
            )
        };
        means.push(SolidMeans {
            measure: m,
            platonic: avg(platonic_names()),
            archimedean: avg(archimedean_names()),
        });

        let by_size = |names: Vec<&str>| -> Vec<(f64, f64)> {
            names
                .into_iter()
                .map(|n| {
                    let size = rows.iter().find(|r| r.object == n).map_or(0, |r| r.size);
                    (size as f64, lookup(n, GRAPH, m))
                })
                .collect()
        };
        let series = [
            Series::new("platonic", by_size(platonic_names())),
            Series::new("archimedean", by_size(archimedean_names())),
        ];
        plots.push((
            format!("plot_polyhedra_{m}.svg"),
            plot::render(
                &format!("Polyhedra by {m}"),
                "nodes",
                &m.to_string(),
                &series,
                Style::Points,
            ),
        ));
        let pairs = platonic_names()
            .into_iter()
            .map(|n| (lookup(n, GRAPH, m), lookup(n, DUAL, m)))
            .collect();
        plots.push((
            format!("plot_polyhedra_duals_{m}.svg"),
            plot::render(
                &format!("Platonic solids against their duals ({m})"),
                "solid",
                "dual",
                &[Series::new("platonic", pairs)],
                Style::Points,
            ),
        ));
    }

    let report = PolyhedraReport {
        ranks: RankReport { rows, correlations },
        duals,
        means,
    };
    let output = ExperimentOutput {
        experiment: Experiment::Polyhedra,
        records: report.ranks.rows.clone(),
        report: serde_json::json!({
            "correlations": report.ranks.correlations,
            "duals": report.duals,
            "means": report.means,
        }),
        plots,
        matrices,
    };
    Ok((output, report))
}
