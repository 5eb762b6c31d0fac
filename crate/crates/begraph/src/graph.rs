//! Finite simple undirected graphs on dense adjacency bit-matrices.
//!
//! Node indices are `0..n`. The representation is deliberately small: a bit
//! row per node plus the sorted edge list. Distances are computed once per
//! graph handle and passed around explicitly rather than recomputed in inner
//! loops.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::format::{ParseError, Tokens};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node index {index} out of range for a graph on {nodes} nodes")]
    IndexOutOfRange { index: usize, nodes: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("nodes {u} and {w} are not at distance two")]
    NotDistanceTwo { u: usize, w: usize },
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new(node_count: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![FixedBitSet::with_capacity(node_count); node_count];
        for &(u, v) in edge_list {
            for x in [u, v] {
                if x >= node_count {
                    return Err(GraphError::IndexOutOfRange {
                        index: x,
                        nodes: node_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let mut edges = Vec::new();
        for u in 0..node_count {
            for v in adj[u].ones() {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph {
            n: node_count,
            adj,
            edges,
        })
    }

    pub fn empty(node_count: usize) -> Graph {
        Graph::new(node_count, &[]).expect("no edges to reject")
    }

    /// Builds a graph from edges known to be in range, loop-free and distinct.
    pub(crate) fn from_clean_edges(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph { n, adj, edges }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].ones()
    }

    pub(crate) fn adjacency_row(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    /// Lowest-index node of every connected component, ascending.
    pub fn component_representatives(&self) -> Vec<usize> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut reps = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            reps.push(start);
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
        }
        reps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_representatives().len() == 1
    }

    /// Induced subgraph on `nodes` (deduplicated, ascending), together with
    /// the map from new indices back to the originals.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = nodes.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        (Graph::from_clean_edges(map.len(), edges), map)
    }

    /// Induced subgraph on the neighbours of `v`, with the index map back.
    pub fn neighbourhood_subgraph(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                nodes: self.n,
            });
        }
        let nodes: Vec<usize> = self.adj[v].ones().collect();
        Ok(self.induced_subgraph(&nodes))
    }

    /// Induced subgraph on two distance-two nodes and all their common
    /// neighbours. Errors unless `dist(u, w) = 2`.
    pub fn common_neighbour_subgraph(
        &self,
        u: usize,
        w: usize,
    ) -> Result<(Graph, Vec<usize>), GraphError> {
        for x in [u, w] {
            if x >= self.n {
                return Err(GraphError::IndexOutOfRange {
                    index: x,
                    nodes: self.n,
                });
            }
        }
        if u == w || self.has_edge(u, w) || !self.adj[u].ones().any(|x| self.adj[w].contains(x)) {
            return Err(GraphError::NotDistanceTwo { u, w });
        }
        let mut nodes = vec![u, w];
        nodes.extend(self.adj[u].ones().filter(|&x| self.adj[w].contains(x)));
        Ok(self.induced_subgraph(&nodes))
    }

    /// Cartesian product: nodes are pairs, `(u1,u2) ~ (w1,w2)` iff the nodes
    /// agree in one coordinate and are adjacent in the other.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n = self.n * other.n;
        let idx = |a: usize, b: usize| a * other.n + b;
        let mut edges = Vec::new();
        for a in 0..self.n {
            for &(b1, b2) in &other.edges {
                edges.push((idx(a, b1), idx(a, b2)));
            }
        }
        for &(a1, a2) in &self.edges {
            for b in 0..other.n {
                edges.push((idx(a1, b), idx(a2, b)));
            }
        }
        edges.sort_unstable();
        Graph::from_clean_edges(n, edges)
    }

    /// All-pairs hop distances via one BFS per source.
    pub fn distances(&self) -> DistanceTable {
        self.distances_counted(&mut 0)
    }

    pub(crate) fn distances_counted(&self, steps: &mut u64) -> DistanceTable {
        let mut d = vec![DistanceTable::UNREACHABLE; self.n * self.n];
        let mut queue = VecDeque::new();
        for src in 0..self.n {
            let row = &mut d[src * self.n..(src + 1) * self.n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                *steps += 1;
                let du = row[u];
                for v in self.adj[u].ones() {
                    *steps += 1;
                    if row[v] == DistanceTable::UNREACHABLE {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceTable { n: self.n, d }
    }
}

/// Square table of hop distances with an explicit unreachable marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    d: Vec<u32>,
}

impl DistanceTable {
    const UNREACHABLE: u32 = u32::MAX;

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Hop distance, or `None` when no path exists.
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.d[u * self.n + v] {
            Self::UNREACHABLE => None,
            k => Some(k as usize),
        }
    }

    /// Distance in a graph known to be connected.
    pub(crate) fn dist(&self, u: usize, v: usize) -> usize {
        let k = self.d[u * self.n + v];
        debug_assert_ne!(k, Self::UNREACHABLE);
        k as usize
    }
}

/// Shape of a common neighbour subgraph, per the interval condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CnsClass {
    /// 4 nodes forming a single cycle.
    Square,
    /// A 4-cycle plus an apex adjacent to all four.
    Pyramid,
    /// 6 nodes, each non-adjacent to exactly one other.
    Octahedron,
    Other,
}

/// Classifies a graph by the node/edge census and adjacency pattern of the
/// three admissible common-neighbour shapes.
pub fn classify_cns(g: &Graph) -> CnsClass {
    match (g.node_count(), g.edge_count()) {
        (4, 4) => {
            // a 2-regular connected graph on 4 nodes is the 4-cycle
            if (0..4).all(|u| g.degree(u) == 2) && g.is_connected() {
                CnsClass::Square
            } else {
                CnsClass::Other
            }
        }
        (5, 8) => {
            let apexes: Vec<usize> = (0..5).filter(|&u| g.degree(u) == 4).collect();
            if apexes.len() != 1 {
                return CnsClass::Other;
            }
            let base: Vec<usize> = (0..5).filter(|&u| u != apexes[0]).collect();
            let (base_graph, _) = g.induced_subgraph(&base);
            if classify_cns(&base_graph) == CnsClass::Square {
                CnsClass::Pyramid
            } else {
                CnsClass::Other
            }
        }
        (6, 12) => {
            // complement must be a perfect matching
            let non_neighbour = |u: usize| (0..6).filter(|&v| v != u && !g.has_edge(u, v)).count();
            if (0..6).all(|u| non_neighbour(u) == 1) {
                CnsClass::Octahedron
            } else {
                CnsClass::Other
            }
        }
        _ => CnsClass::Other,
    }
}

/// Searches for a graph isomorphism, returning the node bijection
/// `a -> b` if one exists.
///
/// Backtracking over nodes ordered by (degree, distance multiset), candidates
/// tried in index order, so the witness is deterministic. Intended for graphs
/// up to a couple of hundred nodes.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.node_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let da = a.distances();
    let db = b.distances();
    let profile = |g: &Graph, d: &DistanceTable, u: usize| {
        let mut dists: Vec<u32> = (0..n)
            .map(|v| d.get(u, v).map_or(u32::MAX, |k| k as u32))
            .collect();
        dists.sort_unstable();
        (g.degree(u), dists)
    };
    let pa: Vec<_> = (0..n).map(|u| profile(a, &da, u)).collect();
    let pb: Vec<_> = (0..n).map(|u| profile(b, &db, u)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }

    // most-constrained-first: rarest profile, then index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| {
        let count = pa.iter().filter(|p| **p == pa[u]).count();
        (count, pa[u].clone(), u)
    });

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        pos: usize,
        order: &[usize],
        a: &Graph,
        b: &Graph,
        da: &DistanceTable,
        db: &DistanceTable,
        pa: &[(usize, Vec<u32>)],
        pb: &[(usize, Vec<u32>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        'cand: for x in 0..b.node_count() {
            if used[x] || pa[u] != pb[x] {
                continue;
            }
            for &w in &order[..pos] {
                let y = map[w];
                if a.has_edge(u, w) != b.has_edge(x, y) || da.get(u, w) != db.get(x, y) {
                    continue 'cand;
                }
            }
            map[u] = x;
            used[x] = true;
            if extend(pos + 1, order, a, b, da, db, pa, pb, map, used) {
                return true;
            }
            map[u] = usize::MAX;
            used[x] = false;
        }
        false
    }
    if extend(0, &order, a, b, &da, &db, &pa, &pb, &mut map, &mut used) {
        debug_assert!(bijection_preserves_edges(a, b, &map));
        Some(map)
    } else {
        None
    }
}

/// True when `map` is a bijection carrying the edges of `a` exactly onto the
/// edges of `b`.
pub fn bijection_preserves_edges(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    if map.len() != a.node_count() || a.node_count() != b.node_count() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x >= map.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    if a.edge_count() != b.edge_count() {
        return false;
    }
    a.edges()
        .iter()
        .all(|&(u, v)| b.has_edge(map[u], map[v]))
}

/// Parses the shared graph text format: a `n m` header, then `m` lines
/// `u v` of 0-based endpoints. `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut tokens = Tokens::new(text);
    let n = tokens.usize_field("node count")?;
    let m = tokens.usize_field("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let u = tokens.usize_field("edge endpoint")?;
        let v = tokens.usize_field("edge endpoint")?;
        edges.push((u, v));
    }
    tokens.expect_end()?;
    Graph::new(n, &edges).map_err(|e| tokens.error_at_last(e.to_string()))
}

/// Writes the shared graph text format, edges sorted lexicographically.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    pub(crate) fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(Graph::new(1, &[]).is_ok());
        assert_eq!(
            Graph::new(2, &[(0, 0)]),
            Err(GraphError::SelfLoop { node: 0 })
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::IndexOutOfRange { index: 2, nodes: 2 })
        );
        // duplicates merge, either orientation
        let g = Graph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn distances_on_small_graphs() {
        let c4 = cycle(4);
        let d = c4.distances();
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.get(1, 3), Some(2));
        assert_eq!(d.get(0, 1), Some(1));

        let k3 = complete(3);
        let d = k3.distances();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d.get(u, v), Some(usize::from(u != v)));
            }
        }

        let two = Graph::empty(2);
        assert_eq!(two.distances().get(0, 1), None);
    }

    #[test]
    fn neighbourhood_subgraphs() {
        let k3 = complete(3);
        let (sub, map) = k3.neighbourhood_subgraph(0).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (2, 1));
        assert_eq!(map, vec![1, 2]);

        let c4 = cycle(4);
        let (sub, _) = c4.neighbourhood_subgraph(0).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (2, 0));
    }

    #[test]
    fn common_neighbour_subgraphs() {
        let c4 = cycle(4);
        let (sub, map) = c4.common_neighbour_subgraph(0, 2).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (4, 4));
        assert_eq!(classify_cns(&sub), CnsClass::Square);
        assert_eq!(map, vec![0, 1, 2, 3]);

        let c5 = cycle(5);
        let (sub, _) = c5.common_neighbour_subgraph(0, 2).unwrap();
        assert_eq!((sub.node_count(), sub.edge_count()), (3, 2));
        assert_eq!(classify_cns(&sub), CnsClass::Other);

        assert_eq!(
            c4.common_neighbour_subgraph(0, 1),
            Err(GraphError::NotDistanceTwo { u: 0, w: 1 })
        );
    }

    #[test]
    fn cns_classification() {
        assert_eq!(classify_cns(&cycle(4)), CnsClass::Square);
        let path3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(classify_cns(&path3), CnsClass::Other);
        // octahedron: complement of a perfect matching on 6 nodes
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if v != u + 3 || u >= 3 {
                    edges.push((u, v));
                }
            }
        }
        let oct = Graph::new(6, &edges).unwrap();
        assert_eq!(oct.edge_count(), 12);
        assert_eq!(classify_cns(&oct), CnsClass::Octahedron);
        // pyramid: 4-cycle 0-1-2-3 with apex 4
        let pyr = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])
            .unwrap();
        assert_eq!(classify_cns(&pyr), CnsClass::Pyramid);
        // same census, wrong pattern: K4 plus a pendant edge has 5 nodes 7 edges
        let k4_pendant =
            Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)])
                .unwrap();
        assert_eq!(classify_cns(&k4_pendant), CnsClass::Other);
    }

    #[test]
    fn isomorphism_on_small_graphs() {
        assert!(is_isomorphic(&cycle(4), &star(3)).is_none());
        let map = is_isomorphic(&cycle(5), &cycle(5)).unwrap();
        assert!(bijection_preserves_edges(&cycle(5), &cycle(5), &map));
        // C4 relabelled
        let other = Graph::new(4, &[(2, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        let map = is_isomorphic(&cycle(4), &other).unwrap();
        assert!(bijection_preserves_edges(&cycle(4), &other, &map));
        assert!(is_isomorphic(&cycle(6), &Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()).is_none());
    }

    #[test]
    fn cartesian_products() {
        let k2 = complete(2);
        let prod = k2.cartesian_product(&k2);
        assert!(is_isomorphic(&prod, &cycle(4)).is_some());
        let g = cycle(5).cartesian_product(&complete(3));
        assert_eq!(g.node_count(), 15);
    }

    #[test]
    fn text_format_round_trip() {
        let g = cycle(4);
        let text = write_graph(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        let commented = "# a square\n4 4\n0 1\n1 2 # trailing\n2 3\n3 0\n";
        assert_eq!(parse_graph(commented).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_graph("2 1\n0 two\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
        // a missing token is reported at the end of input
        let err = parse_graph("2 2\n0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_graph("2 1\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_graph("2 1\n0 0\n").unwrap_err();
        assert!(err.msg.contains("self-loop"));
    }
}
