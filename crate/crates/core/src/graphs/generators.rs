use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
}

/// Cycle on `n ≥ 3` nodes.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
}

/// G(n, p): each pair `u < v`, visited in lexicographic order, is kept with
/// probability `p` drawn from a ChaCha8 stream seeded by `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// `dim`-dimensional hypercube: nodes are bit strings, adjacent when they
/// differ in one bit.
pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|u| {
        (0..dim)
            .map(move |b| u ^ (1 << b))
            .filter(move |&v| u < v)
            .map(move |v| (u, v))
    });
    Graph::new(n, edges).expect("hypercube is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{automorphism_count, isomorphic, platonic};

    #[test]
    fn hypercube_counts() {
        for dim in 2..=7u32 {
            let q = hypercube(dim);
            assert_eq!(q.node_count(), 1 << dim);
            assert_eq!(q.edge_count(), dim as usize * (1 << (dim - 1)));
        }
    }

    #[test]
    fn small_hypercubes() {
        assert!(isomorphic(&hypercube(3), &platonic("cube").unwrap()).unwrap());
        assert!(isomorphic(&hypercube(2), &cycle(4)).unwrap());
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let a = erdos_renyi(12, 0.5, 42).unwrap();
        assert_eq!(a, erdos_renyi(12, 0.5, 42).unwrap());
        assert_ne!(a, erdos_renyi(12, 0.5, 43).unwrap());
        assert_eq!(erdos_renyi(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(6, 1.0, 1).unwrap(), complete(6));
        assert!(erdos_renyi(6, 1.5, 1).is_err());
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_count(&complete(4)).unwrap(), 24);
        assert_eq!(automorphism_count(&cycle(5)).unwrap(), 10);
        assert_eq!(automorphism_count(&path(3)).unwrap(), 2);
    }
}
