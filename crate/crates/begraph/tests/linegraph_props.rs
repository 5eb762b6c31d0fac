//! Exhaustive checks of root recognition against brute force.

mod common;

use std::collections::HashMap;

use begraph::graph::{is_isomorphic, Graph};
use begraph::linegraph::{bipartition, line_graph, recognize_root, BipartiteRoot, RootRejection};

/// Line-graph adjacency must be reproduced exactly by the edge bijection.
fn assert_phi_invariant(input: &Graph, root: &BipartiteRoot) {
    for &(a, b) in &root.phi {
        assert!(root.class_a.binary_search(&a).is_ok(), "phi not A-oriented");
        assert!(root.class_b.binary_search(&b).is_ok(), "phi not B-oriented");
    }
    let mut images = root.phi.clone();
    images.sort_unstable();
    images.dedup();
    assert_eq!(images.len(), input.node_count(), "phi must be injective");
    for u in 0..input.node_count() {
        for w in u + 1..input.node_count() {
            let (a1, b1) = root.phi[u];
            let (a2, b2) = root.phi[w];
            let share = a1 == a2 || b1 == b2 || a1 == b2 || b1 == a2;
            assert_eq!(share, input.has_edge(u, w), "adjacency mismatch at ({u},{w})");
        }
    }
    // no isolated root nodes, every edge crosses the classes
    let mut seen = vec![false; root.node_count() + 1];
    for &(a, b) in &root.edges {
        seen[a] = true;
        seen[b] = true;
    }
    assert!(seen[1..].iter().all(|&s| s), "isolated root node");
}

/// Round trip: every bipartite graph without isolated nodes is recovered
/// from its line graph, up to isomorphism.
#[test]
fn bipartite_roots_round_trip_up_to_six_nodes() {
    let mut tested = 0usize;
    for n in 1..=6usize {
        let pair_list = common::pairs(n.max(2));
        let pair_list = &pair_list[..(n * n.saturating_sub(1) / 2)];
        for mask in 0u64..(1 << pair_list.len()) {
            let h = common::graph_from_mask(n, pair_list, mask);
            let no_isolated = (0..n).all(|u| h.degree(u) > 0);
            if !no_isolated || !common::brute_force_bipartite(&h) {
                continue;
            }
            let (lg, _) = line_graph(&h);
            let root = recognize_root(&lg)
                .unwrap_or_else(|e| panic!("root of a bipartite line graph: {e:?}"));
            assert_phi_invariant(&lg, &root);
            let (root_graph, _) = root.to_graph();
            assert!(
                is_isomorphic(&root_graph, &h).is_some(),
                "recovered root differs from the original"
            );
            tested += 1;
        }
    }
    assert!(tested > 500, "only {tested} bipartite graphs enumerated");
}

/// Recognition agrees with brute force over all candidate roots, for every
/// connected graph with at most six nodes: accepted iff a bipartite root
/// exists, `NotLineGraph` iff no root exists at all, `RootNotBipartite`
/// otherwise. Also checks the recovered root against the candidate list.
#[test]
fn recognition_matches_brute_force_up_to_six_nodes() {
    // candidate roots of a connected k-node line graph are the connected
    // graphs with k edges; bucket them by the canonical form of their line
    // graph
    struct RootBucket {
        bipartite: Vec<Graph>,
        any: usize,
    }
    let mut buckets: Vec<HashMap<u64, RootBucket>> = Vec::new();
    buckets.push(HashMap::new()); // k = 0 unused
    for k in 1..=6usize {
        let mut map: HashMap<u64, RootBucket> = HashMap::new();
        for h in common::connected_graphs_with_edges(k) {
            let (lg, _) = line_graph(&h);
            let key = common::canonical_bits(&lg);
            let entry = map.entry(key).or_insert(RootBucket {
                bipartite: Vec::new(),
                any: 0,
            });
            entry.any += 1;
            if common::brute_force_bipartite(&h) {
                entry.bipartite.push(h);
            }
        }
        buckets.push(map);
    }

    let mut accepted = 0usize;
    let mut odd = 0usize;
    let mut rejected = 0usize;
    for n in 1..=6usize {
        let pair_list = common::pairs(n.max(2));
        let pair_list = &pair_list[..(n * n.saturating_sub(1) / 2)];
        for mask in 0u64..(1 << pair_list.len()) {
            let g = common::graph_from_mask(n, pair_list, mask);
            if !g.is_connected() {
                continue;
            }
            let key = common::canonical_bits(&g);
            let bucket = buckets[n].get(&key);
            match recognize_root(&g) {
                Ok(root) => {
                    accepted += 1;
                    assert_phi_invariant(&g, &root);
                    let bucket = bucket.unwrap_or_else(|| {
                        panic!("accepted a graph with no root at all: {g:?}")
                    });
                    let (root_graph, _) = root.to_graph();
                    assert!(
                        bucket
                            .bipartite
                            .iter()
                            .any(|h| is_isomorphic(&root_graph, h).is_some()),
                        "returned root is not among the bipartite roots of {g:?}"
                    );
                }
                Err(RootRejection::RootNotBipartite { odd_cycle }) => {
                    odd += 1;
                    assert_eq!(odd_cycle.len() % 2, 1, "witness cycle must be odd");
                    let bucket = bucket.unwrap_or_else(|| {
                        panic!("RootNotBipartite but no root exists: {g:?}")
                    });
                    assert!(
                        bucket.bipartite.is_empty(),
                        "a bipartite root exists but was rejected: {g:?}"
                    );
                }
                Err(RootRejection::NotLineGraph { witness }) => {
                    rejected += 1;
                    assert!(!witness.is_empty(), "empty witness");
                    assert!(
                        bucket.is_none(),
                        "NotLineGraph but a root exists: {g:?}"
                    );
                }
            }
        }
    }
    // sanity that all three outcomes occurred in quantity
    assert!(accepted > 500, "accepted only {accepted}");
    assert!(odd > 50, "odd-rooted only {odd}");
    assert!(rejected > 1000, "rejected only {rejected}");
}

/// The two-coloured classes respect the per-component lowest-index rule.
#[test]
fn bipartition_orders_classes_deterministically() {
    for n in 1..=6usize {
        let pair_list = common::pairs(n.max(2));
        let pair_list = &pair_list[..(n * n.saturating_sub(1) / 2)];
        for mask in 0u64..(1 << pair_list.len()) {
            let g = common::graph_from_mask(n, pair_list, mask);
            match bipartition(&g) {
                Ok((class_a, class_b)) => {
                    assert!(common::brute_force_bipartite(&g));
                    for &(u, v) in g.edges() {
                        assert_ne!(
                            class_a.contains(&u),
                            class_a.contains(&v),
                            "edge within a class"
                        );
                    }
                    assert_eq!(class_a.len() + class_b.len(), n);
                    // component representatives always sit in class_a
                    for rep in g.component_representatives() {
                        assert!(class_a.contains(&rep));
                    }
                }
                Err(cycle) => {
                    assert!(!common::brute_force_bipartite(&g));
                    assert_eq!(cycle.len() % 2, 1);
                    for i in 0..cycle.len() {
                        assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                    }
                }
            }
        }
    }
}
