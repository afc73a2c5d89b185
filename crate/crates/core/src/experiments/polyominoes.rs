//! Free tetrominoes and pentominoes measured as bitmaps and as corner
//! graphs.

use rayon::prelude::*;

use super::plot::{self, Series, Style};
use super::{
    assign_ranks, Correlation, Experiment, ExperimentConfig, ExperimentOutput, Meter, RankReport,
    Record,
};
use crate::ctm::CtmTable;
use crate::error::Result;
use crate::graphs::LabellingMode;
use crate::matrix::BinaryMatrix;
use crate::polyomino::{enumerate_free, Polyomino};
use crate::stats::{spearman, RankedList};

const NAME: &str = "polyominoes";
pub const BITMAP: &str = "bitmap";
pub const CORNER_GRAPH: &str = "corner-graph";

/// The 17 free polyominoes of sizes 4 and 5 with their identifiers.
pub fn objects() -> Result<Vec<(String, Polyomino)>> {
    let mut out = Vec::new();
    for size in [4, 5] {
        for (i, p) in enumerate_free(size)?.into_iter().enumerate() {
            out.push((format!("p{size}-{i:02}"), p));
        }
    }
    Ok(out)
}

/// Ranks the 17 objects by each measure in both representations and
/// correlates the two rankings.
pub fn run_polyominoes(
    cfg: &ExperimentConfig,
    table: &CtmTable,
) -> Result<(ExperimentOutput, RankReport)> {
    cfg.validate()?;
    let meter = Meter { cfg, table };
    let objects = objects()?;

    let measured: Vec<(Vec<Record>, Vec<BinaryMatrix>)> = objects
        .par_iter()
        .enumerate()
        .map(|(i, (id, p))| {
            let bitmap = p.bitmap();
            let graph = p.corner_graph()?;
            let mode = LabellingMode::sampled(cfg.samples, cfg.derive(NAME, &[i as u64]));
            let mut records = Vec::new();
            let mut matrices = Vec::new();
            let rec = |rep: &str, measure, value| Record {
                object: id.clone(),
                representation: rep.to_string(),
                measure,
                size: p.size(),
                trial: None,
                value,
                rank: None,
            };
            for &m in &cfg.measures {
                records.push(rec(BITMAP, m, meter.matrix(&bitmap, m)));
                matrices.push(bitmap.clone());
                let (value, adjacency) = meter.graph(&graph, m, mode)?;
                records.push(rec(CORNER_GRAPH, m, value));
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

    let mut correlations = Vec::new();
    let mut plots = Vec::new();
    for &m in &cfg.measures {
        let list = |rep: &str| {
            RankedList::new(
                rows.iter()
                    .filter(|r| r.measure == m && r.representation == rep)
                    .map(|r| (r.object.clone(), r.value)),
            )
        };
        let s = spearman(&list(BITMAP), &list(CORNER_GRAPH))?;
        correlations.push(Correlation {
            measure: m,
            first: BITMAP.to_string(),
            second: CORNER_GRAPH.to_string(),
            n: objects.len(),
            rho: s.rho,
            p: s.p,
        });

        let rank_of = |id: &str, rep: &str| {
            rows.iter()
                .find(|r| r.measure == m && r.representation == rep && r.object == id)
                .and_then(|r| r.rank)
                .unwrap_or(f64::NAN)
        };
        let points = objects
            .iter()
            .map(|(id, _)| (rank_of(id, BITMAP), rank_of(id, CORNER_GRAPH)))
            .collect();
        let title = format!("Polyominoes by {m}: rho = {:.3}", s.rho);
        plots.push((
            format!("plot_polyominoes_{m}.svg"),
            plot::render(
                &title,
                "bitmap rank",
                "corner-graph rank",
                &[Series::new(m.to_string(), points)],
                Style::Points,
            ),
        ));
    }

    let report = RankReport { rows, correlations };
    let output = ExperimentOutput {
        experiment: Experiment::Polyominoes,
        records: report.rows.clone(),
        report: serde_json::json!({
            "objects": objects.iter().map(|(id, p)| (id.clone(), p.to_line())).collect::<Vec<_>>(),
            "correlations": report.correlations,
        }),
        plots,
        matrices,
    };
    Ok((output, report))
}
