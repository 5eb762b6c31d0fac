//! Line graphs and bipartite root recovery.
//!
//! `recognize_root` inverts the line-graph construction: given a graph `g` it
//! finds a bipartite graph whose line graph is isomorphic to `g`, together
//! with the explicit node-to-edge bijection, or reports why none exists. The
//! root is found per connected component by partitioning the edges of `g`
//! into Krausz cells (cliques meeting every node at most twice); cells become
//! the nodes of the root. Everything is deterministic: nodes are scanned in
//! increasing order and root labels are handed out in cell discovery order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

/// A recovered bipartite root graph.
///
/// Root nodes carry synthetic labels `1..=k` in order of first discovery.
/// Every root edge joins `class_a` to `class_b` and is stored with the
/// `class_a` endpoint first. `phi[u]` is the root edge corresponding to input
/// node `u`; two input nodes are adjacent exactly when their root edges share
/// an endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteRoot {
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub phi: Vec<(usize, usize)>,
}

impl BipartiteRoot {
    pub fn node_count(&self) -> usize {
        self.class_a.len() + self.class_b.len()
    }

    /// The root as a plain graph on `0..k` (label minus one), plus the map
    /// from graph index back to the root label.
    pub fn to_graph(&self) -> (Graph, Vec<usize>) {
        let k = self.node_count();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b) - 1, a.max(b) - 1))
            .collect();
        edges.sort_unstable();
        (Graph::from_clean_edges(k, edges), (1..=k).collect())
    }

    /// Shared graph text format plus a class-membership comment line.
    pub fn to_text(&self) -> String {
        let (graph, _) = self.to_graph();
        let mut out = crate::graph::write_graph(&graph);
        let _ = write!(out, "# class_a");
        for &a in &self.class_a {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
        out
    }
}

/// Why no bipartite root exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootRejection {
    /// No graph at all has this line graph; the witness nodes pin down the
    /// offending substructure.
    NotLineGraph { witness: Vec<usize> },
    /// A root exists but contains the returned odd cycle (root labels).
    RootNotBipartite { odd_cycle: Vec<usize> },
}

/// The line graph of `h`: one node per edge, adjacency iff shared endpoint.
/// Also returns the node-to-edge map.
pub fn line_graph(h: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let edge_list: Vec<(usize, usize)> = h.edges().to_vec();
    let mut edges = Vec::new();
    for (i, &(a, b)) in edge_list.iter().enumerate() {
        for (j, &(c, d)) in edge_list.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    (Graph::from_clean_edges(edge_list.len(), edges), edge_list)
}

/// Two-colours each connected component, or returns a concrete odd cycle.
///
/// Within each component the class containing the lowest-index node comes
/// first; `class_a` is the union of those classes.
pub fn bipartition(h: &Graph) -> Result<(Vec<usize>, Vec<usize>), Vec<usize>> {
    let n = h.node_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut class_a = Vec::new();
    let mut class_b = Vec::new();
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for v in h.neighbours(u) {
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return Err(odd_cycle(&parent, u, v)),
                    Some(_) => {}
                }
            }
        }
    }
    for (u, c) in colour.iter().enumerate() {
        if c == &Some(true) {
            class_a.push(u);
        } else {
            class_b.push(u);
        }
    }
    Ok((class_a, class_b))
}

/// Closes the BFS-tree paths of `u` and `v` into the cycle through edge `(u, v)`.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // trim the shared tail after the lowest common ancestor
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    debug_assert!(cycle.len() % 2 == 1);
    cycle
}

/// Recovers a bipartite root whose line graph is `g`.
///
/// Components are recognised independently and their roots unioned. In each
/// component `class_a` is the colour class holding the component's
/// first-discovered root node; the triangle, being the line graph of both
/// the triangle and the 3-star, always roots as the 3-star.
pub fn recognize_root(g: &Graph) -> Result<BipartiteRoot, RootRejection> {
    let mut phi = vec![(0usize, 0usize); g.node_count()];
    let mut class_a = Vec::new();
    let mut class_b = Vec::new();
    let mut edges = Vec::new();
    let mut next_label = 1usize;

    let mut seen = FixedBitSet::with_capacity(g.node_count());
    for start in 0..g.node_count() {
        if seen.contains(start) {
            continue;
        }
        let mut nodes = vec![start];
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbours(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    nodes.push(v);
                    queue.push_back(v);
                }
            }
        }
        nodes.sort_unstable();
        let (component, orig) = g.induced_subgraph(&nodes);

        let root = root_of_component(&component).map_err(|witness| {
            RootRejection::NotLineGraph {
                witness: witness.into_iter().map(|u| orig[u]).collect(),
            }
        })?;

        // the component root is connected, so it two-colours in one piece
        let (root_graph, _) = {
            let mut root_edges: Vec<(usize, usize)> = root
                .node_cells
                .iter()
                .map(|&(c1, c2)| (c1, c2))
                .collect();
            root_edges.sort_unstable();
            (Graph::from_clean_edges(root.cell_count, root_edges), ())
        };
        let (colour_a, colour_b) = bipartition(&root_graph).map_err(|cycle| {
            RootRejection::RootNotBipartite {
                odd_cycle: cycle.into_iter().map(|c| c + next_label).collect(),
            }
        })?;
        // cell 0 is the first-discovered root node and bipartition puts the
        // lowest index in the first class
        debug_assert!(colour_a.contains(&0));
        let in_a: Vec<bool> = {
            let mut v = vec![false; root.cell_count];
            for &c in &colour_a {
                v[c] = true;
            }
            v
        };
        class_a.extend(colour_a.iter().map(|&c| c + next_label));
        class_b.extend(colour_b.iter().map(|&c| c + next_label));
        for (local, &(c1, c2)) in root.node_cells.iter().enumerate() {
            let (a, b) = if in_a[c1] { (c1, c2) } else { (c2, c1) };
            debug_assert!(in_a[a] && !in_a[b]);
            phi[orig[local]] = (a + next_label, b + next_label);
            edges.push((a + next_label, b + next_label));
        }
        next_label += root.cell_count;
    }

    class_a.sort_unstable();
    class_b.sort_unstable();
    edges.sort_unstable();
    Ok(BipartiteRoot {
        class_a,
        class_b,
        edges,
        phi,
    })
}

struct ComponentRoot {
    /// For every component node, the pair of cells (root nodes) containing it.
    node_cells: Vec<(usize, usize)>,
    cell_count: usize,
}

/// Krausz-partitions a connected graph and reads the root off the cells.
/// `Err` carries a witness node set when no root exists.
fn root_of_component(g: &Graph) -> Result<ComponentRoot, Vec<usize>> {
    let n = g.node_count();
    if n == 1 {
        // the one-node graph is the line graph of a single edge
        return Ok(ComponentRoot {
            node_cells: vec![(0, 1)],
            cell_count: 2,
        });
    }

    let starting_cell = select_starting_cell(g)?;
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut membership: Vec<Vec<usize>> = vec![Vec::new(); n];

    // residual adjacency: edges not yet covered by a cell
    let mut residual: Vec<FixedBitSet> = (0..n).map(|u| g.adjacency_row(u).clone()).collect();
    let add_cell = |cell: Vec<usize>,
                        cells: &mut Vec<Vec<usize>>,
                        membership: &mut Vec<Vec<usize>>,
                        residual: &mut Vec<FixedBitSet>| {
        let id = cells.len();
        for (i, &u) in cell.iter().enumerate() {
            membership[u].push(id);
            for &v in &cell[i + 1..] {
                residual[u].remove(v);
                residual[v].remove(u);
            }
        }
        cells.push(cell);
    };

    let mut queue: VecDeque<usize> = starting_cell.iter().copied().collect();
    add_cell(starting_cell, &mut cells, &mut membership, &mut residual);
    while let Some(u) = queue.pop_front() {
        if residual[u].count_ones(..) == 0 {
            continue;
        }
        // the second cell at u must swallow all its uncovered edges at once
        let mut cell = vec![u];
        cell.extend(residual[u].ones());
        for (i, &x) in cell.iter().enumerate() {
            for &y in &cell[i + 1..] {
                if !g.has_edge(x, y) {
                    return Err(cell);
                }
            }
        }
        queue.extend(cell.iter().copied());
        add_cell(cell, &mut cells, &mut membership, &mut residual);
    }
    debug_assert!(residual.iter().all(|row| row.count_ones(..) == 0));

    // read the root off the partition: ≤ 2 cells per node, leaves get
    // singleton cells
    let mut node_cells = vec![(usize::MAX, usize::MAX); n];
    let mut cell_count = cells.len();
    for u in 0..n {
        match membership[u].len() {
            1 => {
                node_cells[u] = (membership[u][0], cell_count);
                cell_count += 1;
            }
            2 => node_cells[u] = (membership[u][0], membership[u][1]),
            _ => return Err(vec![u]),
        }
    }
    // a repeated cell pair would make the root a multigraph
    let mut sorted_pairs: Vec<(usize, usize, usize)> = node_cells
        .iter()
        .enumerate()
        .map(|(u, &(c1, c2))| (c1, c2, u))
        .collect();
    sorted_pairs.sort_unstable();
    for w in sorted_pairs.windows(2) {
        if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
            return Err(vec![w[0].2, w[1].2]);
        }
    }
    // the line graph of the root must reproduce g exactly
    for u in 0..n {
        for w in u + 1..n {
            let (a1, b1) = node_cells[u];
            let (a2, b2) = node_cells[w];
            let share = a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
            if share != g.has_edge(u, w) {
                return Err(vec![u, w]);
            }
        }
    }
    Ok(ComponentRoot {
        node_cells,
        cell_count,
    })
}

/// Nodes completing edge `(u, v)` into a triangle, ascending.
fn edge_triangles(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    g.neighbours(u)
        .filter(|&x| g.adjacency_row(v).contains(x))
        .collect()
}

/// A triangle is odd if some node outside it is adjacent to an odd number of
/// its nodes.
fn odd_triangle(g: &Graph, t: [usize; 3]) -> bool {
    (0..g.node_count()).any(|u| {
        !t.contains(&u) && t.iter().filter(|&&x| g.has_edge(u, x)).count() % 2 == 1
    })
}

/// Finds one Krausz cell to seed the partition, following the triangle case
/// analysis around a starting edge.
fn select_starting_cell(g: &Graph) -> Result<Vec<usize>, Vec<usize>> {
    let &(mut u, mut v) = g
        .edges()
        .first()
        .expect("connected component with at least two nodes has an edge");
    // at most one redirect: the redirect target lies in >= 2 triangles
    loop {
        let thirds = edge_triangles(g, u, v);
        match thirds.len() {
            0 => return Ok(vec![u.min(v), u.max(v)]),
            1 => {
                let w = thirds[0];
                let uw = edge_triangles(g, u, w).len();
                let vw = edge_triangles(g, v, w).len();
                if uw == 1 && vw == 1 {
                    let mut cell = vec![u, v, w];
                    cell.sort_unstable();
                    return Ok(cell);
                } else if uw != 1 {
                    (u, v) = (u, w);
                } else {
                    (u, v) = (v, w);
                }
            }
            r => {
                let odd_thirds: Vec<usize> = thirds
                    .iter()
                    .copied()
                    .filter(|&w| odd_triangle(g, [u, v, w]))
                    .collect();
                let s = odd_thirds.len();
                if r == 2 && s == 0 {
                    // both triangles work; take the first
                    let mut cell = vec![u, v, thirds[0]];
                    cell.sort_unstable();
                    return Ok(cell);
                }
                if s + 1 < r || s > r {
                    let mut witness = vec![u, v];
                    witness.extend(thirds);
                    return Err(witness);
                }
                // the odd triangles around (u, v) must close into a clique
                let mut cell = vec![u, v];
                cell.extend(odd_thirds);
                cell.sort_unstable();
                for (i, &x) in cell.iter().enumerate() {
                    for &y in &cell[i + 1..] {
                        if !g.has_edge(x, y) {
                            return Err(cell);
                        }
                    }
                }
                return Ok(cell);
            }
        }
    }
}
