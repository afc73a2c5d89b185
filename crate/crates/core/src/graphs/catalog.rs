//! Embedded catalog of the 5 Platonic and 13 Archimedean solids as graphs
//! with faces.
//!
//! The shipped edge-list files were produced by [`conway::construct`],
//! which derives every solid combinatorially from a tetrahedron and a cube
//! using Conway operators; a unit test keeps the files and the
//! construction in sync.

use super::Graph;
use crate::error::{Error, Result};

const PLATONIC: [(&str, &str); 5] = [
    (
        "tetrahedron",
        include_str!("../../data/catalog/tetrahedron.edges"),
    ),
    ("cube", include_str!("../../data/catalog/cube.edges")),
    (
        "octahedron",
        include_str!("../../data/catalog/octahedron.edges"),
    ),
    (
        "dodecahedron",
        include_str!("../../data/catalog/dodecahedron.edges"),
    ),
    (
        "icosahedron",
        include_str!("../../data/catalog/icosahedron.edges"),
    ),
];

const ARCHIMEDEAN: [(&str, &str); 13] = [
    (
        "truncated-tetrahedron",
        include_str!("../../data/catalog/truncated-tetrahedron.edges"),
    ),
    (
        "cuboctahedron",
        include_str!("../../data/catalog/cuboctahedron.edges"),
    ),
    (
        "truncated-cube",
        include_str!("../../data/catalog/truncated-cube.edges"),
    ),
    (
        "truncated-octahedron",
        include_str!("../../data/catalog/truncated-octahedron.edges"),
    ),
    (
        "rhombicuboctahedron",
        include_str!("../../data/catalog/rhombicuboctahedron.edges"),
    ),
    (
        "truncated-cuboctahedron",
        include_str!("../../data/catalog/truncated-cuboctahedron.edges"),
    ),
    (
        "snub-cube",
        include_str!("../../data/catalog/snub-cube.edges"),
    ),
    (
        "icosidodecahedron",
        include_str!("../../data/catalog/icosidodecahedron.edges"),
    ),
    (
        "truncated-dodecahedron",
        include_str!("../../data/catalog/truncated-dodecahedron.edges"),
    ),
    (
        "truncated-icosahedron",
        include_str!("../../data/catalog/truncated-icosahedron.edges"),
    ),
    (
        "rhombicosidodecahedron",
        include_str!("../../data/catalog/rhombicosidodecahedron.edges"),
    ),
    (
        "truncated-icosidodecahedron",
        include_str!("../../data/catalog/truncated-icosidodecahedron.edges"),
    ),
    (
        "snub-dodecahedron",
        include_str!("../../data/catalog/snub-dodecahedron.edges"),
    ),
];

pub fn platonic_names() -> Vec<&'static str> {
    PLATONIC.iter().map(|(n, _)| *n).collect()
}

pub fn archimedean_names() -> Vec<&'static str> {
    ARCHIMEDEAN.iter().map(|(n, _)| *n).collect()
}

fn load_entry(entries: &[(&str, &str)], name: &str) -> Result<Graph> {
    let (_, text) = entries
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
            valid: entries.iter().map(|(n, _)| n.to_string()).collect(),
        })?;
    let g = Graph::parse_text(text)?;
    check_polyhedron(&g).map_err(|e| Error::invalid(format!("catalog entry {name}: {e}")))?;
    Ok(g)
}

/// Euler characteristic 2, faces present, every node on at least three
/// faces. Edge-face incidence is checked when faces are attached.
fn check_polyhedron(g: &Graph) -> Result<()> {
    let faces = g.faces().ok_or_else(|| Error::invalid("missing faces"))?;
    let euler = g.node_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::invalid(format!("V - E + F = {euler}, expected 2")));
    }
    let mut incidence = vec![0usize; g.node_count()];
    for f in faces {
        for &v in f {
            incidence[v] += 1;
        }
    }
    if incidence.iter().any(|&c| c < 3) {
        return Err(Error::invalid("a vertex lies on fewer than 3 faces"));
    }
    Ok(())
}

pub fn platonic(name: &str) -> Result<Graph> {
    load_entry(&PLATONIC, name)
}

pub fn archimedean(name: &str) -> Result<Graph> {
    load_entry(&ARCHIMEDEAN, name)
}

/// Any catalog solid by name.
pub fn polyhedron(name: &str) -> Result<Graph> {
    platonic(name)
        .or_else(|_| archimedean(name))
        .map_err(|_| Error::UnknownName {
            name: name.to_string(),
            valid: platonic_names()
                .into_iter()
                .chain(archimedean_names())
                .map(String::from)
                .collect(),
        })
}

/// Conway operators on graphs with faces.
pub mod conway {
    use std::collections::HashMap;
    use std::hash::Hash;

    use super::super::embedding::Embedding;
    use super::super::{dual, Graph};
    use crate::error::{Error, Result};

    /// Hands out consecutive node ids in first-request order.
    struct Ids<K> {
        map: HashMap<K, usize>,
    }

    impl<K: Hash + Eq> Ids<K> {
        fn new() -> Self {
            Ids {
                map: HashMap::new(),
            }
        }

        fn id(&mut self, key: K) -> usize {
            let next = self.map.len();
            *self.map.entry(key).or_insert(next)
        }

        fn len(&self) -> usize {
            self.map.len()
        }
    }

    fn embed(g: &Graph) -> Result<Embedding> {
        let faces = g
            .faces()
            .ok_or_else(|| Error::invalid("operator needs a graph with faces"))?;
        Embedding::new(g.node_count(), faces)
    }

    pub fn tetrahedron() -> Graph {
        Graph::from_faces(
            4,
            vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
        )
        .expect("tetrahedron")
    }

    /// Nodes are the 3-bit corner coordinates.
    pub fn cube() -> Graph {
        Graph::from_faces(
            8,
            vec![
                vec![0, 1, 3, 2],
                vec![4, 6, 7, 5],
                vec![0, 4, 5, 1],
                vec![2, 3, 7, 6],
                vec![0, 2, 6, 4],
                vec![1, 5, 7, 3],
            ],
        )
        .expect("cube")
    }

    /// Cuts every vertex: a new node near each end of every edge.
    pub fn truncate(g: &Graph) -> Result<Graph> {
        let emb = embed(g)?;
        let mut ids = Ids::new();
        let mut faces = Vec::new();
        for face in &emb.faces {
            let mut f = Vec::with_capacity(2 * face.len());
            for i in 0..face.len() {
                let (a, b) = (face[i], face[(i + 1) % face.len()]);
                f.push(ids.id((a, b)));
                f.push(ids.id((b, a)));
            }
            faces.push(f);
        }
        for v in 0..emb.n {
            faces.push(
                emb.rotation(v)
                    .into_iter()
                    .map(|(w, _)| ids.id((v, w)))
                    .collect(),
            );
        }
        Graph::from_faces(ids.len(), faces)
    }

    /// Rectification: one node per edge.
    pub fn ambo(g: &Graph) -> Result<Graph> {
        let emb = embed(g)?;
        let mut ids = Ids::new();
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut faces = Vec::new();
        for face in &emb.faces {
            let f = (0..face.len())
                .map(|i| ids.id(key(face[i], face[(i + 1) % face.len()])))
                .collect();
            faces.push(f);
        }
        for v in 0..emb.n {
            faces.push(
                emb.rotation(v)
                    .into_iter()
                    .map(|(w, _)| ids.id(key(v, w)))
                    .collect(),
            );
        }
        Graph::from_faces(ids.len(), faces)
    }

    /// Cantellation: one node per face corner, a square per edge.
    pub fn expand(g: &Graph) -> Result<Graph> {
        let emb = embed(g)?;
        let mut ids = Ids::new();
        let mut faces = Vec::new();
        for (fi, face) in emb.faces.iter().enumerate() {
            faces.push(face.iter().map(|&v| ids.id((fi, v))).collect());
        }
        for v in 0..emb.n {
            faces.push(
                emb.rotation(v)
                    .into_iter()
                    .map(|(_, f)| ids.id((f, v)))
                    .collect(),
            );
        }
        for (a, b) in emb.edges() {
            let (f, h) = (emb.face_of(a, b), emb.face_of(b, a));
            faces.push(vec![
                ids.id((f, a)),
                ids.id((f, b)),
                ids.id((h, b)),
                ids.id((h, a)),
            ]);
        }
        Graph::from_faces(ids.len(), faces)
    }

    /// Truncated rectification.
    pub fn bevel(g: &Graph) -> Result<Graph> {
        truncate(&ambo(g)?)
    }

    /// Like [`expand`], with each edge square split into two triangles
    /// along a consistently handed diagonal.
    pub fn snub(g: &Graph) -> Result<Graph> {
        let emb = embed(g)?;
        let mut ids = Ids::new();
        let mut faces = Vec::new();
        for (fi, face) in emb.faces.iter().enumerate() {
            faces.push(face.iter().map(|&v| ids.id((fi, v))).collect());
        }
        for v in 0..emb.n {
            faces.push(
                emb.rotation(v)
                    .into_iter()
                    .map(|(_, f)| ids.id((f, v)))
                    .collect(),
            );
        }
        for (a, b) in emb.edges() {
            let (f, h) = (emb.face_of(a, b), emb.face_of(b, a));
            let (fa, fb, hb, ha) = (
                ids.id((f, a)),
                ids.id((f, b)),
                ids.id((h, b)),
                ids.id((h, a)),
            );
            faces.push(vec![fa, fb, hb]);
            faces.push(vec![fa, hb, ha]);
        }
        Graph::from_faces(ids.len(), faces)
    }

    /// Builds a catalog solid from the tetrahedron and cube seeds.
    pub fn construct(name: &str) -> Result<Graph> {
        let icosahedron = || snub(&tetrahedron());
        let dodecahedron = || dual(&icosahedron()?);
        match name {
            "tetrahedron" => Ok(tetrahedron()),
            "cube" => Ok(cube()),
            "octahedron" => dual(&cube()),
            "icosahedron" => icosahedron(),
            "dodecahedron" => dodecahedron(),
            "truncated-tetrahedron" => truncate(&tetrahedron()),
            "cuboctahedron" => ambo(&cube()),
            "truncated-cube" => truncate(&cube()),
            "truncated-octahedron" => truncate(&dual(&cube())?),
            "rhombicuboctahedron" => expand(&cube()),
            "truncated-cuboctahedron" => bevel(&cube()),
            "snub-cube" => snub(&cube()),
            "icosidodecahedron" => ambo(&dodecahedron()?),
            "truncated-dodecahedron" => truncate(&dodecahedron()?),
            "truncated-icosahedron" => truncate(&icosahedron()?),
            "rhombicosidodecahedron" => expand(&dodecahedron()?),
            "truncated-icosidodecahedron" => bevel(&dodecahedron()?),
            "snub-dodecahedron" => snub(&dodecahedron()?),
            other => Err(Error::UnknownName {
                name: other.to_string(),
                valid: super::platonic_names()
                    .into_iter()
                    .chain(super::archimedean_names())
                    .map(String::from)
                    .collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (V, E, F, sorted face sizes around each vertex)
    const EXPECTED: [(&str, usize, usize, usize, &[usize]); 18] = [
        ("tetrahedron", 4, 6, 4, &[3, 3, 3]),
        ("cube", 8, 12, 6, &[4, 4, 4]),
        ("octahedron", 6, 12, 8, &[3, 3, 3, 3]),
        ("dodecahedron", 20, 30, 12, &[5, 5, 5]),
        ("icosahedron", 12, 30, 20, &[3, 3, 3, 3, 3]),
        ("truncated-tetrahedron", 12, 18, 8, &[3, 6, 6]),
        ("cuboctahedron", 12, 24, 14, &[3, 3, 4, 4]),
        ("truncated-cube", 24, 36, 14, &[3, 8, 8]),
        ("truncated-octahedron", 24, 36, 14, &[4, 6, 6]),
        ("rhombicuboctahedron", 24, 48, 26, &[3, 4, 4, 4]),
        ("truncated-cuboctahedron", 48, 72, 26, &[4, 6, 8]),
        ("snub-cube", 24, 60, 38, &[3, 3, 3, 3, 4]),
        ("icosidodecahedron", 30, 60, 32, &[3, 3, 5, 5]),
        ("truncated-dodecahedron", 60, 90, 32, &[3, 10, 10]),
        ("truncated-icosahedron", 60, 90, 32, &[5, 6, 6]),
        ("rhombicosidodecahedron", 60, 120, 62, &[3, 4, 4, 5]),
        ("truncated-icosidodecahedron", 120, 180, 62, &[4, 6, 10]),
        ("snub-dodecahedron", 60, 150, 92, &[3, 3, 3, 3, 5]),
    ];

    #[test]
    fn catalog_sizes() {
        assert_eq!(platonic_names().len(), 5);
        assert_eq!(archimedean_names().len(), 13);
    }

    #[test]
    fn counts_and_vertex_configurations() {
        for (name, v, e, f, config) in EXPECTED {
            let g = polyhedron(name).unwrap();
            assert_eq!(g.node_count(), v, "{name}");
            assert_eq!(g.edge_count(), e, "{name}");
            let faces = g.faces().unwrap();
            assert_eq!(faces.len(), f, "{name}");
            let mut around = vec![Vec::new(); v];
            for face in faces {
                for &x in face {
                    around[x].push(face.len());
                }
            }
            for sizes in &mut around {
                sizes.sort_unstable();
                assert_eq!(sizes.as_slice(), config, "{name}");
            }
            assert!(g.is_connected());
        }
    }

    #[test]
    fn embedded_files_match_construction() {
        for name in platonic_names().into_iter().chain(archimedean_names()) {
            let built = conway::construct(name).unwrap();
            assert_eq!(polyhedron(name).unwrap(), built, "{name}");
        }
    }

    #[test]
    fn unknown_names_list_alternatives() {
        match platonic("pyramid") {
            Err(Error::UnknownName { valid, .. }) => assert_eq!(valid.len(), 5),
            other => panic!("unexpected {other:?}"),
        }
        match polyhedron("prism") {
            Err(Error::UnknownName { valid, .. }) => assert_eq!(valid.len(), 18),
            other => panic!("unexpected {other:?}"),
        }
    }
}
