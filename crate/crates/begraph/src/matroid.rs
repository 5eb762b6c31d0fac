//! Matroids as explicit basis systems.
//!
//! A [`Matroid`] is a ground-set size together with the full list of bases,
//! validated against the symmetric basis exchange property on construction.
//! Bases are bit-sets sorted lexicographically, and every operation iterates
//! in that order, so all derived objects are deterministic.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::format::{ParseError, Tokens};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::subset::{for_each_combination, Subset, MAX_ELEMENTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    EmptyBases,
    #[error("element {element} of basis {basis} outside the ground set 1..={ground}")]
    ElementOutOfRange {
        basis: Subset,
        element: usize,
        ground: usize,
    },
    #[error("basis {basis} has {} elements, expected {expected}", basis.len())]
    UnequalBasisSizes { basis: Subset, expected: usize },
    #[error("exchange fails for bases {a} and {b} at element {element}: no partner in {b}")]
    ExchangeViolation { a: Subset, b: Subset, element: usize },
    #[error("{set} is not a basis")]
    NotABasis { set: Subset },
    #[error("rank {rank} out of range for ground size {ground}")]
    RankOutOfRange { rank: usize, ground: usize },
    #[error("ground size {0} exceeds the supported maximum {MAX_ELEMENTS}")]
    GroundTooLarge(usize),
}

/// A matroid on ground set `{1, .., n}` given by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    bases: Vec<Subset>,
}

impl Matroid {
    /// Validates a basis system: equal cardinalities, elements in range, and
    /// the symmetric exchange property. On failure the error carries a
    /// concrete witness.
    pub fn new(
        ground_size: usize,
        bases: impl IntoIterator<Item = Subset>,
    ) -> Result<Matroid, MatroidError> {
        if ground_size > MAX_ELEMENTS {
            return Err(MatroidError::GroundTooLarge(ground_size));
        }
        let mut bases: Vec<Subset> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let ground = Subset::full(ground_size);
        let rank = bases[0].len();
        for &b in &bases {
            if !b.is_subset_of(ground) {
                return Err(MatroidError::ElementOutOfRange {
                    basis: b,
                    element: (b - ground).iter().next().unwrap(),
                    ground: ground_size,
                });
            }
            if b.len() != rank {
                return Err(MatroidError::UnequalBasisSizes {
                    basis: b,
                    expected: rank,
                });
            }
        }
        let m = Matroid {
            ground_size,
            rank,
            bases,
        };
        match m.exchange_violation() {
            None => Ok(m),
            Some((a, b, element)) => Err(MatroidError::ExchangeViolation { a, b, element }),
        }
    }

    /// Brute-force symmetric exchange check; returns the first violating
    /// `(A, B, a)` if any.
    fn exchange_violation(&self) -> Option<(Subset, Subset, usize)> {
        for (i, &a) in self.bases.iter().enumerate() {
            for &b in &self.bases[i + 1..] {
                for (x, y) in [(a, b), (b, a)] {
                    for e in (x - y).iter() {
                        let found = (y - x).iter().any(|f| {
                            self.is_basis(x.without(e).with(f)) && self.is_basis(y.with(e).without(f))
                        });
                        if !found {
                            return Some((x, y, e));
                        }
                    }
                }
            }
        }
        None
    }

    /// Wraps an already-valid basis system without re-running the quadratic
    /// exchange check.
    fn from_valid(ground_size: usize, mut bases: Vec<Subset>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].len();
        let m = Matroid {
            ground_size,
            rank,
            bases,
        };
        debug_assert!(m.exchange_violation().is_none());
        m
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn corank(&self) -> usize {
        self.ground_size - self.rank
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, set: Subset) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    /// The uniform matroid: every `r`-subset of `{1, .., n}` is a basis.
    pub fn uniform(rank: usize, ground_size: usize) -> Result<Matroid, MatroidError> {
        if ground_size > MAX_ELEMENTS {
            return Err(MatroidError::GroundTooLarge(ground_size));
        }
        if rank > ground_size {
            return Err(MatroidError::RankOutOfRange {
                rank,
                ground: ground_size,
            });
        }
        let mut bases = Vec::new();
        for_each_combination(ground_size, rank, |b| bases.push(b));
        Ok(Matroid::from_valid(ground_size, bases))
    }

    /// The dual matroid: complement every basis. An involution.
    pub fn dual(&self) -> Matroid {
        let ground = Subset::full(self.ground_size);
        let bases = self.bases.iter().map(|&b| ground - b).collect();
        Matroid::from_valid(self.ground_size, bases)
    }

    /// Direct sum; the second summand's ground set is shifted past the first.
    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        let shift = self.ground_size;
        assert!(shift + other.ground_size <= MAX_ELEMENTS);
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b.map_elements(|e| e + shift));
            }
        }
        Matroid::from_valid(self.ground_size + other.ground_size, bases)
    }

    /// The basis exchange graph: one node per basis in lexicographic order,
    /// adjacent iff the bases differ by a single exchange. The returned
    /// labelling maps node index to basis.
    pub fn basis_exchange_graph(&self) -> (Graph, Vec<Subset>) {
        let k = self.bases.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if (self.bases[i] - self.bases[j]).len() == 1 {
                    edges.push((i, j));
                }
            }
        }
        (Graph::from_clean_edges(k, edges), self.bases.clone())
    }

    /// The exchange bipartite graph at basis `b`: element `x` of `b` is
    /// joined to element `e` outside `b` iff `b - x + e` is again a basis.
    pub fn exchange_bipartite(&self, b: Subset) -> Result<ExchangeBipartite, MatroidError> {
        if !self.is_basis(b) {
            return Err(MatroidError::NotABasis { set: b });
        }
        let cobasis = Subset::full(self.ground_size) - b;
        let mut edges = Vec::new();
        for x in b.iter() {
            for e in cobasis.iter() {
                if self.is_basis(b.without(x).with(e)) {
                    edges.push((x, e));
                }
            }
        }
        Ok(ExchangeBipartite {
            basis_elements: b.elements(),
            cobasis_elements: cobasis.elements(),
            edges,
        })
    }

    /// Splits the ground set into loops, coloops and connected components.
    ///
    /// Works off the exchange bipartite graph at the first basis; the result
    /// is independent of that choice.
    pub fn components(&self) -> ComponentDecomposition {
        self.components_at(self.bases[0])
            .expect("first basis is a basis")
    }

    /// Same decomposition, seeded at an explicit basis.
    pub fn components_at(&self, b: Subset) -> Result<ComponentDecomposition, MatroidError> {
        let bip = self.exchange_bipartite(b)?;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.ground_size + 1];
        for &(x, e) in &bip.edges {
            adjacency[x].push(e);
            adjacency[e].push(x);
        }
        let mut seen = vec![false; self.ground_size + 1];
        let mut loops = Vec::new();
        let mut coloops = Vec::new();
        let mut components = Vec::new();
        for start in 1..=self.ground_size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            if adjacency[start].is_empty() {
                // isolated in the exchange graph: in every basis or in none
                if b.contains(start) {
                    coloops.push(start);
                } else {
                    loops.push(start);
                }
                continue;
            }
            let mut stack = vec![start];
            let mut elements = Vec::new();
            while let Some(u) = stack.pop() {
                elements.push(u);
                for &v in &adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            elements.sort_unstable();
            let rank = elements.iter().filter(|&&e| b.contains(e)).count();
            let corank = elements.len() - rank;
            components.push(MatroidComponent {
                elements,
                rank,
                corank,
            });
        }
        components.sort_by(|c1, c2| c1.elements.cmp(&c2.elements));
        Ok(ComponentDecomposition {
            loops,
            coloops,
            components,
        })
    }

    /// Restriction to `elements` (which must be a union of components),
    /// relabelled to `1..=elements.len()` in element order.
    fn component_restriction(&self, elements: &[usize]) -> Matroid {
        let mask = Subset::from_elements(elements.iter().copied());
        let relabel = |e: usize| elements.binary_search(&e).unwrap() + 1;
        let mut bases: Vec<Subset> = self
            .bases
            .iter()
            .map(|&b| (b & mask).map_elements(relabel))
            .collect();
        bases.sort_unstable();
        bases.dedup();
        Matroid::from_valid(elements.len(), bases)
    }

    /// Canonical representative of the equivalence class that shares a basis
    /// exchange graph: loops and coloops are dropped, every connected
    /// component is dualised to rank <= corank, each component is relabelled
    /// to its lexicographically minimal basis list, and components are
    /// reassembled in sorted order.
    ///
    /// Two matroids have equal canonical forms iff they agree up to
    /// isomorphism, per-component duality, and loops/coloops. Fixed point of
    /// itself. Brute-force relabelling; intended for components with at most
    /// ~8 elements.
    pub fn class_canonical(&self) -> Matroid {
        let decomposition = self.components();
        let mut parts: Vec<Matroid> = decomposition
            .components
            .iter()
            .map(|comp| {
                let restricted = self.component_restriction(&comp.elements);
                let direct = minimal_relabelling(&restricted);
                match comp.rank.cmp(&comp.corank) {
                    std::cmp::Ordering::Less => direct,
                    std::cmp::Ordering::Greater => minimal_relabelling(&restricted.dual()),
                    std::cmp::Ordering::Equal => {
                        // no preferred orientation at rank == corank: keep the
                        // lexicographically smaller relabelled form
                        let dualised = minimal_relabelling(&restricted.dual());
                        if dualised.bases < direct.bases {
                            dualised
                        } else {
                            direct
                        }
                    }
                }
            })
            .collect();
        parts.sort_by(|a, b| {
            (a.ground_size, a.rank, &a.bases).cmp(&(b.ground_size, b.rank, &b.bases))
        });
        let empty = Matroid::from_valid(0, vec![Subset::EMPTY]);
        parts
            .into_iter()
            .fold(empty, |acc, part| acc.direct_sum(&part))
    }

    /// 0/1 indicator vectors of the bases, one point per basis in basis
    /// order. Coordinates sum to the rank.
    pub fn polytope_vertices<S: Scalar>(&self) -> Vec<Vec<S>> {
        self.bases
            .iter()
            .map(|b| {
                (1..=self.ground_size)
                    .map(|e| if b.contains(e) { S::one() } else { S::zero() })
                    .collect()
            })
            .collect()
    }
}

/// The bipartite exchange graph at a basis, on element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeBipartite {
    pub basis_elements: Vec<usize>,
    pub cobasis_elements: Vec<usize>,
    /// `(x, e)` with `x` in the basis, `e` outside, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl ExchangeBipartite {
    /// As a plain graph: basis elements first, then cobasis elements; the map
    /// sends node index to element label.
    pub fn to_graph(&self) -> (Graph, Vec<usize>) {
        let mut labels = self.basis_elements.clone();
        labels.extend(&self.cobasis_elements);
        let position = |e: usize| labels.iter().position(|&x| x == e).unwrap();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(x, e)| {
                let (i, j) = (position(x), position(e));
                (i.min(j), i.max(j))
            })
            .collect();
        edges.sort_unstable();
        (Graph::from_clean_edges(labels.len(), edges), labels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidComponent {
    pub elements: Vec<usize>,
    pub rank: usize,
    pub corank: usize,
}

/// Loops, coloops, and connected components of a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub loops: Vec<usize>,
    pub coloops: Vec<usize>,
    pub components: Vec<MatroidComponent>,
}

/// Calls `f` with every permutation of `0..k` in lexicographic order.
pub(crate) fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        f(&perm);
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// The lexicographically smallest basis list over all relabellings of the
/// ground set. Brute force over permutations.
fn minimal_relabelling(m: &Matroid) -> Matroid {
    let k = m.ground_size();
    let mut best: Option<Vec<Subset>> = None;
    for_each_permutation(k, |perm| {
        let mut bases: Vec<Subset> = m
            .bases
            .iter()
            .map(|&b| b.map_elements(|e| perm[e - 1] + 1))
            .collect();
        bases.sort_unstable();
        if best.as_ref().is_none_or(|b| bases < *b) {
            best = Some(bases);
        }
    });
    Matroid::from_valid(k, best.expect("at least the identity relabelling"))
}

/// Searches for a matroid isomorphism: a ground-set bijection mapping bases
/// onto bases. Returns `map` with `map[e - 1] + 1` the image of element `e`.
///
/// Backtracking over element images pruned by basis-membership counts and
/// pairwise co-occurrence counts; intended for ground sets up to ~8.
pub fn matroid_iso(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    if a.ground_size != b.ground_size || a.rank != b.rank || a.bases.len() != b.bases.len() {
        return None;
    }
    let n = a.ground_size;
    let counts = |m: &Matroid| -> Vec<usize> {
        (1..=n)
            .map(|e| m.bases.iter().filter(|bs| bs.contains(e)).count())
            .collect()
    };
    let cooc = |m: &Matroid| -> Vec<Vec<usize>> {
        (1..=n)
            .map(|e| {
                (1..=n)
                    .map(|f| {
                        m.bases
                            .iter()
                            .filter(|bs| bs.contains(e) && bs.contains(f))
                            .count()
                    })
                    .collect()
            })
            .collect()
    };
    let (ca, cb) = (counts(a), counts(b));
    let (xa, xb) = (cooc(a), cooc(b));
    let target: HashSet<Subset> = b.bases.iter().copied().collect();

    fn place(
        e: usize,
        n: usize,
        ca: &[usize],
        cb: &[usize],
        xa: &[Vec<usize>],
        xb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: &Matroid,
        target: &HashSet<Subset>,
    ) -> bool {
        if e == n {
            return a
                .bases
                .iter()
                .all(|&bs| target.contains(&bs.map_elements(|x| map[x - 1] + 1)));
        }
        for image in 0..n {
            if used[image] || ca[e] != cb[image] {
                continue;
            }
            if (0..e).any(|prev| xa[e][prev] != xb[image][map[prev]]) {
                continue;
            }
            map.push(image);
            used[image] = true;
            if place(e + 1, n, ca, cb, xa, xb, map, used, a, target) {
                return true;
            }
            map.pop();
            used[image] = false;
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if place(0, n, &ca, &cb, &xa, &xb, &mut map, &mut used, a, &target) {
        Some(map)
    } else {
        None
    }
}

/// Parses the bases file format: header `n r k`, then `k` lines of `r`
/// space-separated element labels. Returns the raw system; run
/// [`Matroid::new`] to validate exchange.
pub fn parse_bases(text: &str) -> Result<(usize, Vec<Subset>), ParseError> {
    let mut tokens = Tokens::new(text);
    let n = tokens.usize_field("ground size")?;
    let r = tokens.usize_field("rank")?;
    let k = tokens.usize_field("basis count")?;
    if n > MAX_ELEMENTS {
        return Err(tokens.error_at_last(format!("ground size {n} exceeds {MAX_ELEMENTS}")));
    }
    if r > n {
        return Err(tokens.error_at_last(format!("rank {r} exceeds ground size {n}")));
    }
    let mut bases = Vec::with_capacity(k);
    for _ in 0..k {
        let mut basis = Subset::EMPTY;
        for _ in 0..r {
            let e = tokens.usize_field("element label")?;
            if e == 0 || e > n {
                return Err(
                    tokens.error_at_last(format!("element {e} outside the ground set 1..={n}"))
                );
            }
            if basis.contains(e) {
                return Err(tokens.error_at_last(format!("repeated element {e} in basis")));
            }
            basis = basis.with(e);
        }
        bases.push(basis);
    }
    tokens.expect_end()?;
    Ok((n, bases))
}

/// Writes the bases file format, lines sorted lexicographically.
pub fn write_bases(m: &Matroid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.ground_size(), m.rank(), m.bases().len());
    for b in m.bases() {
        let labels: Vec<String> = b.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}
