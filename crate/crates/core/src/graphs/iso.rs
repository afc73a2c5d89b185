//! Brute-force isomorphism and automorphism counting for small graphs.
//! The search assigns nodes one at a time and prunes on degree and on
//! adjacency to already-assigned nodes.

use super::Graph;
use crate::error::{Error, Result};

pub const ISOMORPHISM_LIMIT: usize = 12;
pub const AUTOMORPHISM_LIMIT: usize = 10;

struct Search<'a> {
    a: Vec<Vec<bool>>,
    b: Vec<Vec<bool>>,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Number of complete edge-preserving bijections extending the current
    /// partial map, stopping early after `limit`.
    fn count(&mut self, depth: usize, limit: u64) -> u64 {
        if depth == self.order.len() {
            return 1;
        }
        let u = self.order[depth];
        let mut found = 0;
        for w in 0..self.b.len() {
            if self.used[w] || self.deg_a[u] != self.deg_b[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&x| self.a[u][x] == self.b[w][self.map[x]]);
            if !consistent {
                continue;
            }
            self.map[u] = w;
            self.used[w] = true;
            found += self.count(depth + 1, limit - found);
            self.used[w] = false;
            if found >= limit {
                break;
            }
        }
        found
    }
}

/// Breadth-first order starting at a highest-degree node, so each new
/// node is usually adjacent to one already placed.
fn search_order(g: &Graph) -> Vec<usize> {
    let adj = g.neighbors();
    let deg = g.degrees();
    let mut seen = vec![false; g.node_count()];
    let mut order = Vec::with_capacity(g.node_count());
    while order.len() < g.node_count() {
        let root = (0..g.node_count())
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
            .unwrap();
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

fn count_maps(g1: &Graph, g2: &Graph, limit: u64) -> u64 {
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return 0;
    }
    let (mut d1, mut d2) = (g1.degrees(), g2.degrees());
    let deg_a = d1.clone();
    let deg_b = d2.clone();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return 0;
    }
    let order = search_order(g1);
    let mut s = Search {
        a: g1.adjacency_table(),
        b: g2.adjacency_table(),
        deg_a,
        deg_b,
        order: &order,
        map: vec![0; g1.node_count()],
        used: vec![false; g2.node_count()],
    };
    s.count(0, limit)
}

/// True iff an edge-preserving bijection exists. Refuses graphs above
/// [`ISOMORPHISM_LIMIT`] nodes.
pub fn isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    let size = g1.node_count().max(g2.node_count());
    if size > ISOMORPHISM_LIMIT {
        return Err(Error::SizeGuard {
            what: "isomorphism check",
            size,
            limit: ISOMORPHISM_LIMIT,
        });
    }
    Ok(count_maps(g1, g2, 1) == 1)
}

/// Number of node permutations mapping the edge set onto itself. Refuses
/// graphs above [`AUTOMORPHISM_LIMIT`] nodes.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    if g.node_count() > AUTOMORPHISM_LIMIT {
        return Err(Error::SizeGuard {
            what: "automorphism count",
            size: g.node_count(),
            limit: AUTOMORPHISM_LIMIT,
        });
    }
    Ok(count_maps(g, g, u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle, erdos_renyi, path, Labelling};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    /// Plain enumeration of all n! permutations.
    fn naive_automorphisms(g: &Graph) -> u64 {
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            let l = Labelling::new(perm.clone()).unwrap();
            if g.relabel(&l).unwrap().edges() == g.edges() {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
                return count;
            };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn examples() {
        assert!(isomorphic(
            &cycle(4),
            &complete(4)
                .remove_edge(0, 1)
                .unwrap()
                .remove_edge(2, 3)
                .unwrap()
        )
        .unwrap());
        assert!(!isomorphic(&complete(3), &path(3)).unwrap());
        assert!(!isomorphic(&path(4), &Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()).unwrap());
    }

    #[test]
    fn size_guards() {
        assert!(matches!(
            isomorphic(&complete(13), &complete(13)),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            automorphism_count(&complete(11)),
            Err(Error::SizeGuard { .. })
        ));
        assert_eq!(automorphism_count(&complete(10)).unwrap(), 3_628_800);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn relabelled_graph_is_isomorphic(seed: u64, n in 1usize..12, p in 0.1f64..0.9) {
            let g = erdos_renyi(n, p, seed).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabc));
            let h = g.relabel(&Labelling::new(perm).unwrap()).unwrap();
            prop_assert!(isomorphic(&g, &h).unwrap());
            if n <= 7 {
                let a = automorphism_count(&g).unwrap();
                prop_assert_eq!(a, automorphism_count(&h).unwrap());
                prop_assert_eq!(a, naive_automorphisms(&g));
            }
        }
    }
}
