use super::embedding::Embedding;
use super::Graph;
use crate::error::{Error, Result};

/// Dual of an embedded graph: one node per face, one edge per original
/// edge joining the two faces on either side of it. The dual's faces are
/// the cycles of faces around each original node.
pub fn dual(g: &Graph) -> Result<Graph> {
    let faces = g
        .faces()
        .ok_or_else(|| Error::invalid("dual needs a graph with faces"))?;
    let emb = Embedding::new(g.node_count(), faces)?;
    let mut edges = Vec::with_capacity(g.edge_count());
    for (a, b) in emb.edges() {
        let (f, h) = (emb.face_of(a, b), emb.face_of(b, a));
        if f == h {
            return Err(Error::invalid(format!(
                "edge ({a}, {b}) borders a single face"
            )));
        }
        edges.push((f, h));
    }
    let dual_faces = (0..g.node_count())
        .map(|v| emb.rotation(v).into_iter().map(|(_, f)| f).collect())
        .collect();
    Graph::new(emb.faces.len(), edges)
        .map_err(|e| Error::invalid(format!("dual is not a simple graph: {e}")))?
        .with_faces(dual_faces)
}
