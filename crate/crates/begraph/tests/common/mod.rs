//! Brute-force oracles shared by the integration suites.
//!
//! Everything here is deliberately naive and independent of the library's
//! algorithmic paths: exhaustive enumeration, permutation search, and
//! first-principles predicates. Slow is fine; wrong is not.

#![allow(dead_code)] // each test binary uses its own subset

use begraph::graph::Graph;
use begraph::matroid::Matroid;
use begraph::subset::{for_each_combination, Subset};

/// Node pairs of an `n`-node graph in lexicographic order; bit `i` of an
/// edge mask refers to `pairs(n)[i]`.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

pub fn graph_from_mask(n: usize, pair_list: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pair_list
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e)
        .collect();
    Graph::new(n, &edges).expect("mask edges are simple")
}

/// Every permutation of `0..k`, lexicographically.
pub fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        f(&perm);
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Canonical form of a graph on at most 8 nodes: the minimal adjacency bit
/// pattern over all node relabellings. Equal bits iff isomorphic.
pub fn canonical_bits(g: &Graph) -> u64 {
    let n = g.node_count();
    assert!(n <= 8, "canonical form oracle is for tiny graphs");
    let edges = g.edges();
    let mut best = u64::MAX;
    for_each_permutation(n, |perm| {
        let mut bits = 0u64;
        for &(u, v) in edges {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            bits |= 1 << (a * 8 + b);
        }
        if bits < best {
            best = bits;
        }
    });
    best
}

/// All basis systems of rank `r` on ground `{1, .., n}` that satisfy the
/// symmetric exchange property, found by filtering every nonempty family of
/// `r`-subsets through the validator.
pub fn enumerate_matroids(n: usize, r: usize) -> Vec<Matroid> {
    let mut rsubsets = Vec::new();
    for_each_combination(n, r, |s| rsubsets.push(s));
    let count = rsubsets.len();
    assert!(count < 64, "family space too large to enumerate");
    let mut out = Vec::new();
    for mask in 1u64..(1 << count) {
        let family = rsubsets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &s)| s);
        if let Ok(m) = Matroid::new(n, family) {
            out.push(m);
        }
    }
    out
}

/// The full small-matroid corpus: every basis system with `n <= 6`, `r <= 3`.
/// Enumerated once per process.
pub fn matroid_corpus() -> &'static [Matroid] {
    use std::sync::OnceLock;
    static CORPUS: OnceLock<Vec<Matroid>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for n in 0..=6 {
            for r in 0..=n.min(3) {
                out.extend(enumerate_matroids(n, r));
            }
        }
        out
    })
}

/// All connected labelled graphs with exactly `k` edges (node counts
/// `2..=k+1`); the candidate roots of a connected `k`-node line graph.
pub fn connected_graphs_with_edges(k: usize) -> Vec<Graph> {
    assert!(k >= 1);
    let mut out = Vec::new();
    for v in 2..=k + 1 {
        let pair_list = pairs(v);
        if pair_list.len() < k {
            continue;
        }
        // choose k of the pairs
        for_each_combination(pair_list.len(), k, |subset| {
            let edges: Vec<(usize, usize)> =
                subset.iter().map(|i| pair_list[i - 1]).collect();
            let g = Graph::new(v, &edges).expect("simple edges");
            if g.is_connected() {
                out.push(g);
            }
        });
    }
    out
}

/// First-principles bipartiteness: try all 2-colourings (n <= 20).
pub fn brute_force_bipartite(g: &Graph) -> bool {
    let n = g.node_count();
    assert!(n <= 20);
    (0u32..(1 << n)).any(|colours| {
        g.edges()
            .iter()
            .all(|&(u, v)| (colours >> u) & 1 != (colours >> v) & 1)
    })
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, &(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>()).unwrap()
}

/// Complete graph on `2n` nodes minus the perfect matching `(i, i + n)`:
/// the graph of the `n`-dimensional cross-polytope.
pub fn cocktail_party(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..2 * n {
        for v in u + 1..2 * n {
            if v != u + n {
                edges.push((u, v));
            }
        }
    }
    Graph::new(2 * n, &edges).unwrap()
}

pub fn petersen() -> Graph {
    Graph::new(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap()
}

/// Square pyramid reference graph: 4-cycle 0-1-2-3 with apex 4.
pub fn reference_pyramid() -> Graph {
    Graph::new(
        5,
        &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)],
    )
    .unwrap()
}

/// Octahedron reference graph.
pub fn reference_octahedron() -> Graph {
    cocktail_party(3)
}

pub fn subset(elements: &[usize]) -> Subset {
    Subset::from_elements(elements.iter().copied())
}

/// Paper worked example: rank-2 matroid on six elements, nine bases.
pub fn m1() -> Matroid {
    Matroid::new(
        6,
        [
            subset(&[1, 2]), subset(&[1, 3]), subset(&[1, 4]),
            subset(&[2, 5]), subset(&[2, 6]), subset(&[3, 5]),
            subset(&[3, 6]), subset(&[4, 5]), subset(&[4, 6]),
        ],
    )
    .unwrap()
}

/// Rank-3 companion with an isomorphic basis exchange graph.
pub fn m2() -> Matroid {
    Matroid::new(
        6,
        [
            subset(&[1, 2, 3]), subset(&[1, 2, 6]), subset(&[1, 3, 6]),
            subset(&[2, 3, 4]), subset(&[2, 3, 5]), subset(&[2, 4, 6]),
            subset(&[2, 5, 6]), subset(&[3, 4, 6]), subset(&[3, 5, 6]),
        ],
    )
    .unwrap()
}

/// Rank-2 matroid on five elements whose polytope has a prism facet
/// (elements 4 and 5 parallel).
pub fn counterexample_matroid() -> Matroid {
    Matroid::new(
        5,
        [
            subset(&[1, 2]), subset(&[1, 3]), subset(&[1, 4]), subset(&[1, 5]),
            subset(&[2, 3]), subset(&[2, 4]), subset(&[2, 5]),
            subset(&[3, 4]), subset(&[3, 5]),
        ],
    )
    .unwrap()
}
