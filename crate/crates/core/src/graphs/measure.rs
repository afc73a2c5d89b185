//! Labelling-minimized graph measures.
//!
//! An adjacency matrix depends on how the nodes are numbered, so each
//! graph measure is the minimum of a matrix measure over a set of
//! labellings: all of them (exact mode) or a seeded sample plus a
//! deterministic canonical labelling (sampled mode).

use std::cmp::Reverse;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Graph, Labelling};
use crate::baselines::{compress_matrix, matrix_block_entropy};
use crate::bdm::{bdm, Boundary};
use crate::ctm::CtmTable;
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

/// Largest graph exact mode accepts by default.
pub const EXACT_LIMIT: usize = 8;
/// Largest graph exact mode accepts with the override flag.
pub const EXACT_OVERRIDE_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabellingMode {
    /// Every one of the `n!` labellings.
    Exact { allow_large: bool },
    /// The canonical labelling plus `samples` seeded random permutations.
    /// When `samples ≥ n!` all labellings are enumerated instead.
    Sampled { samples: usize, seed: u64 },
}

impl LabellingMode {
    pub fn exact() -> Self {
        LabellingMode::Exact { allow_large: false }
    }

    pub fn sampled(samples: usize, seed: u64) -> Self {
        LabellingMode::Sampled { samples, seed }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub value: f64,
    /// First labelling (in candidate order) attaining the minimum.
    pub labelling: Labelling,
}

enum Candidates {
    All(usize),
    List(Vec<Labelling>),
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// The `index`-th permutation of `0..n` in lexicographic order.
fn unrank(mut index: usize, n: usize) -> Labelling {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i).unwrap();
        perm.push(pool.remove(index / f));
        index %= f;
    }
    Labelling::from_vec_unchecked(perm)
}

fn candidates(g: &Graph, mode: LabellingMode) -> Result<Candidates> {
    let n = g.node_count();
    match mode {
        LabellingMode::Exact { allow_large } => {
            let limit = if allow_large {
                EXACT_OVERRIDE_LIMIT
            } else {
                EXACT_LIMIT
            };
            if n > limit {
                return Err(Error::SizeGuard {
                    what: "exact labelling search",
                    size: n,
                    limit,
                });
            }
            Ok(Candidates::All(n))
        }
        LabellingMode::Sampled { samples, seed } => {
            if factorial(n).is_some_and(|f| f <= samples) {
                return Ok(Candidates::All(n));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut list = Vec::with_capacity(samples + 1);
            list.push(canonical_labelling(g));
            for _ in 0..samples {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                list.push(Labelling::from_vec_unchecked(perm));
            }
            Ok(Candidates::List(list))
        }
    }
}

/// Minimum of `measure(adjacency(g, l))` over the candidate labellings.
/// Ties go to the earliest candidate, so the result does not depend on
/// thread scheduling.
pub fn minimize<F>(g: &Graph, mode: LabellingMode, measure: F) -> Result<Minimum>
where
    F: Fn(&BinaryMatrix) -> f64 + Sync,
{
    let better = |a: (f64, usize), b: (f64, usize)| {
        if a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_le() {
            a
        } else {
            b
        }
    };
    let init = || (f64::INFINITY, usize::MAX);
    match candidates(g, mode)? {
        Candidates::All(n) => {
            let total = factorial(n).expect("guarded above");
            let (value, idx) = (0..total)
                .into_par_iter()
                .map(|i| (measure(&g.adjacency(&unrank(i, n))), i))
                .reduce(init, better);
            Ok(Minimum {
                value,
                labelling: unrank(idx, n),
            })
        }
        Candidates::List(list) => {
            let (value, idx) = list
                .par_iter()
                .enumerate()
                .map(|(i, l)| (measure(&g.adjacency(l)), i))
                .reduce(init, better);
            Ok(Minimum {
                value,
                labelling: list[idx].clone(),
            })
        }
    }
}

pub fn graph_bdm(
    g: &Graph,
    d: usize,
    boundary: Boundary,
    table: &CtmTable,
    mode: LabellingMode,
) -> Result<Minimum> {
    if d < 1 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    minimize(g, mode, |m| {
        bdm(m, d, table, boundary).expect("block size checked")
    })
}

pub fn graph_block_entropy(
    g: &Graph,
    d: usize,
    boundary: Boundary,
    mode: LabellingMode,
) -> Result<Minimum> {
    if d < 1 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    minimize(g, mode, |m| {
        matrix_block_entropy(m, d, boundary).expect("block size checked")
    })
}

/// Smallest LZW code length (bits) over the candidate labellings.
pub fn graph_compress(g: &Graph, mode: LabellingMode) -> Result<Minimum> {
    minimize(g, mode, |m| compress_matrix(m) as f64)
}

/// Deterministic heuristic labelling: nodes ordered by descending degree,
/// ties broken by breadth-first discovery order. The search starts at a
/// highest-degree node and visits neighbours by descending degree, then by
/// descending sorted neighbour-degree sequence, then by index.
pub fn canonical_labelling(g: &Graph) -> Labelling {
    let n = g.node_count();
    let adj = g.neighbors();
    let deg = g.degrees();
    let signature: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut s: Vec<usize> = adj[v].iter().map(|&w| deg[w]).collect();
            s.sort_unstable_by(|a, b| b.cmp(a));
            s
        })
        .collect();
    let rank_key = |v: usize| (Reverse(deg[v]), Reverse(signature[v].clone()), v);

    let mut discovered = vec![usize::MAX; n];
    let mut next = 0;
    while next < n {
        let root = (0..n)
            .filter(|&v| discovered[v] == usize::MAX)
            .min_by_key(|&v| rank_key(v))
            .unwrap();
        discovered[root] = next;
        next += 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut fresh: Vec<usize> = adj[u]
                .iter()
                .copied()
                .filter(|&w| discovered[w] == usize::MAX)
                .collect();
            fresh.sort_by_key(|&w| rank_key(w));
            for w in fresh {
                discovered[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(deg[v]), discovered[v]));
    let mut perm = vec![0; n];
    for (label, &v) in order.iter().enumerate() {
        perm[v] = label;
    }
    Labelling::from_vec_unchecked(perm)
}
