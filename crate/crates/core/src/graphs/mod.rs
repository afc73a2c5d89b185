//! Undirected simple graphs, optionally carrying a face list for
//! polyhedral embeddings.

mod catalog;
mod dual;
mod embedding;
mod generators;
mod iso;
mod measure;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

pub use catalog::{archimedean, archimedean_names, conway, platonic, platonic_names, polyhedron};
pub use dual::dual;
pub use generators::{complete, cycle, erdos_renyi, hypercube, path};
pub use iso::{automorphism_count, isomorphic, AUTOMORPHISM_LIMIT, ISOMORPHISM_LIMIT};
pub use measure::{
    canonical_labelling, graph_bdm, graph_block_entropy, graph_compress, minimize, LabellingMode,
    Minimum, EXACT_LIMIT, EXACT_OVERRIDE_LIMIT,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    faces: Option<Vec<Vec<usize>>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at node {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            faces: None,
        })
    }

    /// Attaches a face list. Every face must be a cycle of at least three
    /// distinct nodes along existing edges, and every edge must lie on
    /// exactly two faces.
    pub fn with_faces(self, faces: Vec<Vec<usize>>) -> Result<Self> {
        let mut incidence = vec![0u8; self.edges.len()];
        for (i, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::invalid(format!("face {i} has fewer than 3 nodes")));
            }
            let distinct: BTreeSet<_> = face.iter().collect();
            if distinct.len() != face.len() {
                return Err(Error::invalid(format!("face {i} repeats a node")));
            }
            for j in 0..face.len() {
                let (a, b) = (face[j], face[(j + 1) % face.len()]);
                let idx = self.edge_index(a, b).ok_or_else(|| {
                    Error::invalid(format!("face {i} side ({a}, {b}) is not an edge"))
                })?;
                incidence[idx] += 1;
            }
        }
        if let Some(i) = incidence.iter().position(|&c| c != 2) {
            let (u, v) = self.edges[i];
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) lies on {} faces, expected 2",
                incidence[i]
            )));
        }
        Ok(Graph {
            faces: Some(faces),
            ..self
        })
    }

    /// Graph whose edges are exactly the sides of the given faces.
    pub fn from_faces(n: usize, faces: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for face in &faces {
            for j in 0..face.len() {
                let (a, b) = (face[j], face[(j + 1) % face.len()]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Graph::new(n, edges)?.with_faces(faces)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> Option<&[Vec<usize>]> {
        self.faces.as_deref()
    }

    fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Dense adjacency as a boolean table.
    pub(crate) fn adjacency_table(&self) -> Vec<Vec<bool>> {
        let mut t = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            t[u][v] = true;
            t[v][u] = true;
        }
        t
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Drops one edge. Faces are dropped too since the embedding no longer
    /// holds.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let idx = self
            .edge_index(u, v)
            .ok_or_else(|| Error::invalid(format!("edge ({u}, {v}) not in graph")))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Graph {
            n: self.n,
            edges,
            faces: None,
        })
    }

    /// Drops node `v` and its edges; nodes above `v` shift down by one.
    pub fn remove_node(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::invalid(format!(
                "node {v} not in graph of {} nodes",
                self.n
            )));
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        Ok(Graph {
            n: self.n - 1,
            edges,
            faces: None,
        })
    }

    /// Renames node `i` to `l.image(i)`. Faces are carried along.
    pub fn relabel(&self, l: &Labelling) -> Result<Graph> {
        if l.len() != self.n {
            return Err(Error::invalid("labelling size does not match graph"));
        }
        let g = Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (l.image(a), l.image(b))),
        )?;
        match &self.faces {
            Some(faces) => g.with_faces(
                faces
                    .iter()
                    .map(|f| f.iter().map(|&x| l.image(x)).collect())
                    .collect(),
            ),
            None => Ok(g),
        }
    }

    /// `n·n` symmetric 0/1 matrix with zero diagonal; entry
    /// `(l(i), l(j))` is set iff `{i, j}` is an edge.
    pub fn adjacency(&self, l: &Labelling) -> BinaryMatrix {
        assert_eq!(l.len(), self.n, "labelling size does not match graph");
        let n = self.n.max(1);
        let mut m = BinaryMatrix::zeros(n, n);
        for &(u, v) in &self.edges {
            let (a, b) = (l.image(u), l.image(v));
            m.set(a, b, 1);
            m.set(b, a, 1);
        }
        m
    }

    /// Edge-list text: `n`, one `u v` per line, then an optional `F` line
    /// followed by one face cycle per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        if let Some(faces) = &self.faces {
            out.push_str("F\n");
            for face in faces {
                let line: Vec<String> = face.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing node count"))?;
        let n: usize = header
            .parse()
            .map_err(|e| Error::parse(first, format!("bad node count {header:?}: {e}")))?;
        let mut edges = Vec::new();
        let mut faces: Option<Vec<Vec<usize>>> = None;
        for (lineno, line) in lines {
            if line == "F" {
                if faces.is_some() {
                    return Err(Error::parse(lineno, "second `F` section"));
                }
                faces = Some(Vec::new());
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::parse(lineno, format!("bad node id: {e}")))?;
            if let Some(&bad) = nums.iter().find(|&&x| x >= n) {
                return Err(Error::parse(lineno, format!("node {bad} out of range")));
            }
            match faces.as_mut() {
                Some(fs) => fs.push(nums),
                None => match nums[..] {
                    [u, v] => edges.push((u, v)),
                    _ => return Err(Error::parse(lineno, "edge line must be `u v`")),
                },
            }
        }
        let g = Graph::new(n, edges).map_err(|e| Error::parse(first, e.to_string()))?;
        match faces {
            Some(fs) => g.with_faces(fs),
            None => Ok(g),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Graph::parse_text(&text)
    }
}

/// A bijection on `0..n`: node `i` receives label `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labelling {
    perm: Vec<usize>,
}

impl Labelling {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("labelling is not a permutation"));
            }
        }
        Ok(Labelling { perm })
    }

    pub fn identity(n: usize) -> Self {
        Labelling {
            perm: (0..n).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        Labelling { perm }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }
}
