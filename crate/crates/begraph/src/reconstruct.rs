//! Labelling abstract basis exchange graphs.
//!
//! [`reconstruct`] decides whether a graph is the basis exchange graph of a
//! matroid. It seeds a labelling from the bipartite root of one node's
//! neighbourhood, extends it level by level through square completions, and
//! verifies the result against all pairwise distances and the admissible
//! common-neighbour shapes. On success the labels are the bases of a matroid
//! whose exchange graph is the input, unique up to isomorphism, component
//! duality and loops/coloops; on failure the input is the exchange graph of
//! no matroid at all.
//!
//! Ground sets are capped at 64 elements by the bit-set basis encoding;
//! reconstruction of a graph that would need a larger ground set panics.

use std::collections::BTreeMap;

use crate::graph::{classify_cns, CnsClass, DistanceTable, Graph};
use crate::linegraph::{recognize_root, RootRejection};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A total assignment of ground-set labels to graph nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    labels: Vec<Subset>,
}

impl Labelling {
    pub fn new(labels: Vec<Subset>) -> Labelling {
        Labelling { labels }
    }

    pub fn get(&self, node: usize) -> Subset {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Subset] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Union of all labels.
    pub fn ground_elements(&self) -> Subset {
        self.labels
            .iter()
            .fold(Subset::EMPTY, |acc, &l| acc | l)
    }
}

/// Why a graph is not a basis exchange graph, with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BegRejection {
    /// Lowest-index node of each component; empty for the empty graph.
    NotConnected { component_reps: Vec<usize> },
    /// The seed neighbourhood is not a line graph; witness nodes of `g`.
    NotLineGraph { witness: Vec<usize> },
    /// The neighbourhood's root graph contains this odd cycle (root labels).
    RootNotBipartite { odd_cycle: Vec<usize> },
    /// No nonadjacent pair among the common neighbours of `node` and `anchor`.
    NoSquareCompletion { node: usize, anchor: usize },
    /// The level sweep never reached this node.
    UnlabelledNode { node: usize },
    /// `|label(u) − label(w)|` disagrees with `dist(u, w)`.
    DistanceMismatch { u: usize, w: usize },
    /// The common neighbour subgraph of `u, w` is not a square, pyramid or
    /// octahedron (or has more than four common neighbours).
    IntervalViolation { u: usize, w: usize },
}

impl BegRejection {
    pub fn reason_code(&self) -> &'static str {
        match self {
            BegRejection::NotConnected { .. } => "NotConnected",
            BegRejection::NotLineGraph { .. } => "NotLineGraph",
            BegRejection::RootNotBipartite { .. } => "RootNotBipartite",
            BegRejection::NoSquareCompletion { .. } => "NoSquareCompletion",
            BegRejection::UnlabelledNode { .. } => "UnlabelledNode",
            BegRejection::DistanceMismatch { .. } => "DistanceMismatch",
            BegRejection::IntervalViolation { .. } => "IntervalViolation",
        }
    }

    /// Witness rendered as space-separated tokens for the command line.
    pub fn witness_description(&self) -> String {
        let list = |label: &str, items: &[usize]| {
            let mut s = label.to_string();
            for i in items {
                s.push(' ');
                s.push_str(&i.to_string());
            }
            s
        };
        match self {
            BegRejection::NotConnected { component_reps } => list("components", component_reps),
            BegRejection::NotLineGraph { witness } => list("nodes", witness),
            BegRejection::RootNotBipartite { odd_cycle } => list("cycle", odd_cycle),
            BegRejection::NoSquareCompletion { node, anchor } => list("pair", &[*node, *anchor]),
            BegRejection::UnlabelledNode { node } => list("node", &[*node]),
            BegRejection::DistanceMismatch { u, w } => list("pair", &[*u, *w]),
            BegRejection::IntervalViolation { u, w } => list("pair", &[*u, *w]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructionOutcome {
    Success {
        matroid: Matroid,
        labelling: Labelling,
    },
    NotBeg(BegRejection),
}

impl ReconstructionOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ReconstructionOutcome::Success { .. })
    }

    pub fn matroid(&self) -> Option<&Matroid> {
        match self {
            ReconstructionOutcome::Success { matroid, .. } => Some(matroid),
            ReconstructionOutcome::NotBeg(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&BegRejection> {
        match self {
            ReconstructionOutcome::Success { .. } => None,
            ReconstructionOutcome::NotBeg(r) => Some(r),
        }
    }
}

/// Elementary-step counter for the complexity budget.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReconstructStats {
    pub steps: u64,
}

/// The square-completion label: everything in `l1` or `l2` that is missing
/// from `lhat`, together with the intersection of `l1` and `l2`.
pub fn square_completion(l1: Subset, l2: Subset, lhat: Subset) -> Subset {
    (l1 & l2) | ((l1 | l2) - lhat)
}

/// Reconstructs from the lowest-index seed node.
pub fn reconstruct(g: &Graph) -> ReconstructionOutcome {
    reconstruct_with_stats(g, None).0
}

/// Reconstructs from an explicit seed node; the class of the result does not
/// depend on the choice.
pub fn reconstruct_seeded(g: &Graph, seed_node: usize) -> ReconstructionOutcome {
    reconstruct_with_stats(g, Some(seed_node)).0
}

/// Reconstruction plus the instrumented elementary-step count.
pub fn reconstruct_with_stats(
    g: &Graph,
    seed_node: Option<usize>,
) -> (ReconstructionOutcome, ReconstructStats) {
    let mut steps = 0u64;
    let outcome = run_reconstruction(g, seed_node, &mut steps);
    (outcome, ReconstructStats { steps })
}

fn run_reconstruction(
    g: &Graph,
    seed_node: Option<usize>,
    steps: &mut u64,
) -> ReconstructionOutcome {
    let n = g.node_count();
    let reps = g.component_representatives();
    *steps += n as u64 + 1;
    if reps.len() != 1 {
        return ReconstructionOutcome::NotBeg(BegRejection::NotConnected {
            component_reps: reps,
        });
    }
    if n == 1 {
        // the one-node graph is the exchange graph of the rank-0 matroid
        return ReconstructionOutcome::Success {
            matroid: Matroid::new(0, [Subset::EMPTY]).expect("rank-0 matroid"),
            labelling: Labelling::new(vec![Subset::EMPTY]),
        };
    }
    let v = seed_node.unwrap_or(0);
    assert!(v < n, "seed node {v} out of range");

    let dist = g.distances_counted(steps);

    // seed: root the neighbourhood of v as a bipartite line-graph preimage
    let (nbhd, orig) = g.neighbourhood_subgraph(v).expect("seed node in range");
    let h = nbhd.node_count();
    *steps += (h as u64) * (h as u64) + 1;
    let root = match recognize_root(&nbhd) {
        Ok(root) => root,
        Err(RootRejection::NotLineGraph { witness }) => {
            return ReconstructionOutcome::NotBeg(BegRejection::NotLineGraph {
                witness: witness.into_iter().map(|i| orig[i]).collect(),
            });
        }
        Err(RootRejection::RootNotBipartite { odd_cycle }) => {
            return ReconstructionOutcome::NotBeg(BegRejection::RootNotBipartite { odd_cycle });
        }
    };
    assert!(
        root.node_count() <= crate::subset::MAX_ELEMENTS,
        "reconstruction would need a ground set of {} > {} elements",
        root.node_count(),
        crate::subset::MAX_ELEMENTS
    );

    let seed_label = Subset::from_elements(root.class_a.iter().copied());
    let mut labels: Vec<Option<Subset>> = vec![None; n];
    labels[v] = Some(seed_label);
    for (i, &(e, f)) in root.phi.iter().enumerate() {
        labels[orig[i]] = Some(seed_label.without(e).with(f));
        *steps += 1;
    }

    if let Err(failure) = sweep_levels(g, &dist, v, seed_label.len(), &mut labels, steps) {
        return ReconstructionOutcome::NotBeg(match failure {
            // an admissible common-neighbour shape always contains a
            // nonadjacent pair, so an empty pair set violates the interval
            // condition
            ExtendFailure::NoSquareCompletion { node, anchor } => {
                BegRejection::IntervalViolation { u: node, w: anchor }
            }
            ExtendFailure::UnlabelledNode { node } => BegRejection::UnlabelledNode { node },
        });
    }
    let Some(labels) = labels.into_iter().collect::<Option<Vec<Subset>>>() else {
        unreachable!("sweep reports unlabelled nodes");
    };
    let labelling = Labelling::new(labels);

    if let Err(violation) = verify_labelling_counted(g, &dist, &labelling, steps) {
        return ReconstructionOutcome::NotBeg(match violation {
            LabellingViolation::BadCommonNeighbours { u, w } => {
                BegRejection::IntervalViolation { u, w }
            }
            LabellingViolation::SizeMismatch { u, w }
            | LabellingViolation::DuplicateLabel { u, w }
            | LabellingViolation::DistanceMismatch { u, w } => {
                BegRejection::DistanceMismatch { u, w }
            }
        });
    }

    let ground = root.node_count();
    let rank = seed_label.len();
    *steps += (n as u64) * (n as u64) * (rank as u64) * (rank as u64);
    let matroid = Matroid::new(ground, labelling.labels().iter().copied())
        .expect("a verified labelling of a connected graph is a basis system");
    ReconstructionOutcome::Success { matroid, labelling }
}

/// Failure of the level-by-level extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendFailure {
    /// All common neighbours of `node` and `anchor` are pairwise adjacent.
    NoSquareCompletion { node: usize, anchor: usize },
    /// A node beyond the last level never received a label.
    UnlabelledNode { node: usize },
}

/// Extends labels outward from the seed, one distance level at a time.
///
/// Every node `u` at level `j >= 2` is labelled through the square it forms
/// with a level `j-2` anchor and two of their nonadjacent common neighbours,
/// which sit at level `j-1` and are already labelled.
fn sweep_levels(
    g: &Graph,
    dist: &DistanceTable,
    v: usize,
    rank: usize,
    labels: &mut [Option<Subset>],
    steps: &mut u64,
) -> Result<(), ExtendFailure> {
    let n = g.node_count();
    for level in 2..=rank {
        for u in 0..n {
            *steps += 1;
            if dist.dist(u, v) != level {
                continue;
            }
            let anchor = (0..n)
                .inspect(|_| *steps += 1)
                .find(|&x| dist.dist(x, v) == level - 2 && dist.dist(x, u) == 2)
                .expect("a grandparent on a shortest path is at distance two");
            let mut common = Vec::new();
            for w in 0..n {
                *steps += 1;
                if g.has_edge(w, u) && g.has_edge(w, anchor) {
                    common.push(w);
                    if common.len() > 4 {
                        // more than four common neighbours already violates
                        // the interval condition
                        return Err(ExtendFailure::NoSquareCompletion { node: u, anchor });
                    }
                }
            }
            let mut pair = None;
            'outer: for (i, &w1) in common.iter().enumerate() {
                for &w2 in &common[i + 1..] {
                    *steps += 1;
                    if !g.has_edge(w1, w2) {
                        pair = Some((w1, w2));
                        break 'outer;
                    }
                }
            }
            let Some((w1, w2)) = pair else {
                return Err(ExtendFailure::NoSquareCompletion { node: u, anchor });
            };
            let l1 = labels[w1].expect("level j-1 nodes are labelled");
            let l2 = labels[w2].expect("level j-1 nodes are labelled");
            let lhat = labels[anchor].expect("level j-2 nodes are labelled");
            labels[u] = Some(square_completion(l1, l2, lhat));
            *steps += rank as u64;
        }
    }
    if let Some(node) = (0..n).find(|&u| labels[u].is_none()) {
        return Err(ExtendFailure::UnlabelledNode { node });
    }
    Ok(())
}

/// Extends a labelling of `v` and its neighbours to the whole graph.
///
/// The seed must be defined exactly on `v` and its neighbourhood and satisfy
/// the labelling invariants there. The extension is unique when it exists;
/// no final verification is performed.
pub fn extend_labelling(
    g: &Graph,
    v: usize,
    seed: &BTreeMap<usize, Subset>,
) -> Result<Labelling, ExtendFailure> {
    assert!(v < g.node_count(), "seed node out of range");
    let mut domain: Vec<usize> = g.neighbours(v).collect();
    domain.push(v);
    domain.sort_unstable();
    let mut keys: Vec<usize> = seed.keys().copied().collect();
    keys.sort_unstable();
    assert_eq!(
        keys, domain,
        "seed domain must be the closed neighbourhood of the seed node"
    );
    let rank = seed[&v].len();
    assert!(
        seed.values().all(|l| l.len() == rank),
        "seed labels must share one cardinality"
    );

    let dist = g.distances();
    let mut labels: Vec<Option<Subset>> = vec![None; g.node_count()];
    for (&node, &label) in seed {
        labels[node] = Some(label);
    }
    let mut steps = 0;
    sweep_levels(g, &dist, v, rank, &mut labels, &mut steps)?;
    Ok(Labelling::new(
        labels.into_iter().map(|l| l.expect("sweep is total")).collect(),
    ))
}

/// First defect of a claimed labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabellingViolation {
    /// `u` and `w` carry labels of different sizes.
    SizeMismatch { u: usize, w: usize },
    /// Two nodes share a label.
    DuplicateLabel { u: usize, w: usize },
    /// `|label(u) − label(w)| != dist(u, w)`.
    DistanceMismatch { u: usize, w: usize },
    /// A distance-two pair whose common neighbour subgraph has an
    /// inadmissible shape.
    BadCommonNeighbours { u: usize, w: usize },
}

/// Checks a total labelling: uniform label sizes, distinct labels, distance
/// compatibility for every pair, and admissible common-neighbour shapes at
/// every distance-two pair.
pub fn verify_labelling(g: &Graph, labelling: &Labelling) -> Result<(), LabellingViolation> {
    assert_eq!(labelling.len(), g.node_count(), "labelling must be total");
    verify_labelling_counted(g, &g.distances(), labelling, &mut 0)
}

fn verify_labelling_counted(
    g: &Graph,
    dist: &DistanceTable,
    labelling: &Labelling,
    steps: &mut u64,
) -> Result<(), LabellingViolation> {
    let n = g.node_count();
    for u in 0..n {
        for w in u + 1..n {
            *steps += 1;
            let (lu, lw) = (labelling.get(u), labelling.get(w));
            if lu.len() != lw.len() {
                return Err(LabellingViolation::SizeMismatch { u, w });
            }
            if lu == lw {
                return Err(LabellingViolation::DuplicateLabel { u, w });
            }
            if dist.get(u, w) != Some((lu - lw).len()) {
                return Err(LabellingViolation::DistanceMismatch { u, w });
            }
        }
    }
    for u in 0..n {
        for w in u + 1..n {
            *steps += 1;
            if dist.get(u, w) != Some(2) {
                continue;
            }
            *steps += n as u64;
            let (cns, _) = g
                .common_neighbour_subgraph(u, w)
                .expect("distance-two pair");
            *steps += (cns.node_count() as u64) * (cns.node_count() as u64);
            if classify_cns(&cns) == CnsClass::Other {
                return Err(LabellingViolation::BadCommonNeighbours { u, w });
            }
        }
    }
    Ok(())
}

/// Maurer's three conditions, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaurerReport {
    /// Every distance-two pair has a square, pyramid or octahedron as its
    /// common neighbour subgraph.
    pub interval: bool,
    pub interval_witness: Option<(usize, usize)>,
    /// For every node and every induced square, the distance sums to the two
    /// diagonals agree.
    pub positioning: bool,
    /// Witnessing `(node, [a, c, d, e])` with the square in cyclic order.
    pub positioning_witness: Option<(usize, [usize; 4])>,
    /// The neighbourhood subgraph of `link_node` is the line graph of a
    /// bipartite graph.
    pub link: bool,
    pub link_node: usize,
    pub link_witness: Option<RootRejection>,
}

impl MaurerReport {
    pub fn all_hold(&self) -> bool {
        self.interval && self.positioning && self.link
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaurerVerdict {
    NotConnected { component_reps: Vec<usize> },
    Report(MaurerReport),
}

/// Checks Maurer's interval, positioning and link conditions on a connected
/// graph. A test oracle: positioning enumerates every induced square against
/// every node, well beyond the reconstruction budget.
pub fn verify_maurer(g: &Graph) -> MaurerVerdict {
    let reps = g.component_representatives();
    if reps.len() != 1 {
        return MaurerVerdict::NotConnected {
            component_reps: reps,
        };
    }
    let n = g.node_count();
    let dist = g.distances();

    let mut interval = true;
    let mut interval_witness = None;
    'interval: for u in 0..n {
        for w in u + 1..n {
            if dist.get(u, w) == Some(2) {
                let (cns, _) = g.common_neighbour_subgraph(u, w).expect("distance two");
                if classify_cns(&cns) == CnsClass::Other {
                    interval = false;
                    interval_witness = Some((u, w));
                    break 'interval;
                }
            }
        }
    }

    let mut positioning = true;
    let mut positioning_witness = None;
    'positioning: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let Some(square) = induced_square(g, [a, b, c, d]) else {
                        continue;
                    };
                    let [p, q, r, s] = square;
                    for node in 0..n {
                        let sum1 = dist.dist(node, p) + dist.dist(node, r);
                        let sum2 = dist.dist(node, q) + dist.dist(node, s);
                        if sum1 != sum2 {
                            positioning = false;
                            positioning_witness = Some((node, square));
                            break 'positioning;
                        }
                    }
                }
            }
        }
    }

    let link_node = 0;
    let (link, link_witness) = if n == 1 {
        (true, None)
    } else {
        let (nbhd, orig) = g.neighbourhood_subgraph(link_node).expect("node 0");
        match recognize_root(&nbhd) {
            Ok(_) => (true, None),
            Err(RootRejection::NotLineGraph { witness }) => (
                false,
                Some(RootRejection::NotLineGraph {
                    witness: witness.into_iter().map(|i| orig[i]).collect(),
                }),
            ),
            Err(err) => (false, Some(err)),
        }
    };

    MaurerVerdict::Report(MaurerReport {
        interval,
        interval_witness,
        positioning,
        positioning_witness,
        link,
        link_node,
        link_witness,
    })
}

/// If the four nodes induce a square, returns them in cyclic order starting
/// at the first.
fn induced_square(g: &Graph, nodes: [usize; 4]) -> Option<[usize; 4]> {
    let degree_within = |u: usize| nodes.iter().filter(|&&w| w != u && g.has_edge(u, w)).count();
    if nodes.iter().any(|&u| degree_within(u) != 2) {
        return None;
    }
    // 2-regular on four nodes is a single 4-cycle; the non-neighbour of the
    // first node sits opposite it
    let first = nodes[0];
    let opposite = *nodes[1..]
        .iter()
        .find(|&&w| !g.has_edge(first, w))
        .expect("degree two within four nodes leaves one non-neighbour");
    let sides: Vec<usize> = nodes[1..]
        .iter()
        .copied()
        .filter(|&w| w != opposite)
        .collect();
    Some([first, sides[0], opposite, sides[1]])
}
