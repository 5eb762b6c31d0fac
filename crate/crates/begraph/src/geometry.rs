//! Exact toolkit for small polytopes given by their vertices.
//!
//! Facet enumeration is deliberately brute force: the polytope is moved into
//! full-dimensional local coordinates (a coordinate projection that is
//! injective on the affine hull), every hyperplane spanned by an affinely
//! independent point subset is tested for one-sidedness, and facets are
//! deduplicated by their incident point sets. Intended for at most ~25
//! points in ambient dimension <= 8; everything is exact over the chosen
//! [`Scalar`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::format::{ParseError, Tokens};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::subset::for_each_combination;
use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("no points given")]
    NoPoints,
    #[error("point {index} has {got} coordinates, expected {expected}")]
    MixedDimensions {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("point {index} is not a vertex of the hull")]
    NotAVertex { index: usize },
    #[error("{count} points exceed the supported maximum of 64")]
    TooManyPoints { count: usize },
    #[error("hypersimplex needs 0 < r < n, got r={rank}, n={ground}")]
    HypersimplexRange { rank: usize, ground: usize },
    #[error("point index {index} out of range for {count} points")]
    IndexOutOfRange { index: usize, count: usize },
}

/// A facet as a supporting inequality `normal · x >= offset` plus the indices
/// of the points lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<S> {
    pub normal: Vec<S>,
    pub offset: S,
    pub incident: Vec<usize>,
}

/// A vertex-described polytope with its complete facet list and
/// vertex-facet incidence.
#[derive(Clone, Debug)]
pub struct IncidencePolytope<S> {
    points: Vec<Vec<S>>,
    dim: usize,
    facets: Vec<Facet<S>>,
}

/// Affine dimension of a nonempty point set: the rank of the difference
/// vectors from the first point.
pub fn affine_dimension<S: Scalar>(points: &[Vec<S>]) -> usize {
    assert!(!points.is_empty(), "affine dimension of no points");
    let mut rows: Vec<Vec<S>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&points[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    row_reduce(&mut rows).len()
}

/// Row-reduces in place; returns the pivot columns in increasing order.
fn row_reduce<S: Scalar>(rows: &mut Vec<Vec<S>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let pivot = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in 0..width {
                    let delta = factor.clone() * rows[r][c].clone();
                    rows[i][c] = rows[i][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Coordinate positions whose projection is injective on the affine hull,
/// chosen greedily in coordinate order. Returns `(dim, positions)`.
fn independent_coordinates<S: Scalar>(points: &[Vec<S>]) -> (usize, Vec<usize>) {
    let mut rows: Vec<Vec<S>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&points[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    (pivots.len(), pivots)
}

/// The unique hyperplane `(normal, offset)` through `dim` affinely
/// independent points of full-dimensional space, or `None` if the points are
/// affinely dependent.
fn hyperplane_through<S: Scalar>(local: &[&Vec<S>]) -> Option<(Vec<S>, S)> {
    let dim = local.len();
    // rows (p_i, -1) * (normal, offset)^T = 0
    let mut rows: Vec<Vec<S>> = local
        .iter()
        .map(|p| {
            let mut row: Vec<S> = (*p).clone();
            row.push(S::zero() - S::one());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.len() < dim {
        return None;
    }
    let free = (0..=dim).find(|c| !pivots.contains(c)).expect("one free column");
    let mut kernel = vec![S::zero(); dim + 1];
    kernel[free] = S::one();
    for (row, &p) in rows.iter().zip(&pivots) {
        kernel[p] = S::zero() - row[free].clone();
    }
    let offset = kernel.pop().expect("dim + 1 entries");
    Some((kernel, offset))
}

/// Enumerates the facets of the convex hull of `points`, which must all be
/// vertices of that hull.
pub fn facet_enumeration<S: Scalar>(points: &[Vec<S>]) -> Result<IncidencePolytope<S>, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::NoPoints);
    }
    if points.len() > 64 {
        return Err(PolytopeError::TooManyPoints {
            count: points.len(),
        });
    }
    let ambient = points[0].len();
    for (index, p) in points.iter().enumerate() {
        if p.len() != ambient {
            return Err(PolytopeError::MixedDimensions {
                index,
                got: p.len(),
                expected: ambient,
            });
        }
    }
    let v = points.len();
    let (dim, positions) = independent_coordinates(points);
    let local: Vec<Vec<S>> = points
        .iter()
        .map(|p| positions.iter().map(|&c| p[c].clone()).collect())
        .collect();

    let mut facets: Vec<Facet<S>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut covered: Vec<u64> = Vec::new(); // incident masks of found facets
    if dim > 0 {
        for_each_combination(v, dim, |subset| {
            let mask = subset.bits();
            if covered.iter().any(|&f| mask & !f == 0) {
                return; // subset of a known facet
            }
            let chosen: Vec<&Vec<S>> = subset.iter().map(|e| &local[e - 1]).collect();
            let Some((normal, offset)) = hyperplane_through(&chosen) else {
                return;
            };
            let mut side = 0i8; // -1, 0, +1: strict signs seen so far
            let mut incident_mask = 0u64;
            for (i, p) in local.iter().enumerate() {
                let mut value = S::zero() - offset.clone();
                for (a, x) in normal.iter().zip(p) {
                    value = value + a.clone() * x.clone();
                }
                if value.is_zero() {
                    incident_mask |= 1 << i;
                } else {
                    let s = if value.is_positive() { 1 } else { -1 };
                    if side == 0 {
                        side = s;
                    } else if side != s {
                        return; // points on both sides
                    }
                }
            }
            let incident: Vec<usize> = (0..v).filter(|&i| incident_mask & (1 << i) != 0).collect();
            if !seen.insert(incident.clone()) {
                return;
            }
            covered.push(incident_mask);
            // orient so every point satisfies normal . x >= offset, then embed
            // into ambient coordinates and canonicalise
            let flip = side < 0;
            let mut combined = vec![S::zero(); ambient + 1];
            for (i, &c) in positions.iter().enumerate() {
                combined[c] = if flip {
                    S::zero() - normal[i].clone()
                } else {
                    normal[i].clone()
                };
            }
            combined[ambient] = if flip {
                S::zero() - offset.clone()
            } else {
                offset.clone()
            };
            S::canonicalize_positive(&mut combined);
            let offset = combined.pop().expect("ambient + 1 entries");
            facets.push(Facet {
                normal: combined,
                offset,
                incident,
            });
        });
    }
    facets.sort_by(|a, b| a.incident.cmp(&b.incident));

    let polytope = IncidencePolytope { points: points.to_vec(), dim, facets };
    // vertex check: the smallest face containing a point must be that point
    for i in 0..v {
        if polytope.smallest_face_mask(i) != 1 << i {
            return Err(PolytopeError::NotAVertex { index: i });
        }
    }
    Ok(polytope)
}

impl<S: Scalar> IncidencePolytope<S> {
    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    fn incident_mask(&self, facet: &Facet<S>) -> u64 {
        facet.incident.iter().fold(0u64, |m, &i| m | 1 << i)
    }

    /// Point mask of the intersection of all facets containing point `i`
    /// (all points when no facet does).
    fn smallest_face_mask(&self, i: usize) -> u64 {
        let all = if self.points.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.points.len()) - 1
        };
        self.facets
            .iter()
            .filter(|f| f.incident.contains(&i))
            .fold(all, |acc, f| acc & self.incident_mask(f))
    }

    /// The vertex-edge graph, read combinatorially off the incidence data:
    /// two points are adjacent iff the facets containing both cut out
    /// exactly that pair.
    pub fn graph(&self) -> Graph {
        let v = self.points.len();
        let all = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
        let masks: Vec<u64> = self.facets.iter().map(|f| self.incident_mask(f)).collect();
        let mut edges = Vec::new();
        for u in 0..v {
            for w in u + 1..v {
                let pair = (1 << u) | (1 << w);
                let mut face = all;
                for &m in &masks {
                    if m & pair == pair {
                        face &= m;
                    }
                }
                if face == pair {
                    edges.push((u, w));
                }
            }
        }
        Graph::from_clean_edges(v, edges)
    }

    /// The dual graph: facets are adjacent iff their common incident points
    /// span a ridge (affine dimension `dim - 2`). Requires `dim >= 2`.
    pub fn dual_graph(&self) -> Graph {
        assert!(self.dim >= 2, "dual graph needs dimension at least two");
        let f = self.facets.len();
        let mut edges = Vec::new();
        for a in 0..f {
            for b in a + 1..f {
                let common: Vec<Vec<S>> = self.facets[a]
                    .incident
                    .iter()
                    .filter(|i| self.facets[b].incident.contains(i))
                    .map(|&i| self.points[i].clone())
                    .collect();
                if !common.is_empty() && affine_dimension(&common) == self.dim - 2 {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_clean_edges(f, edges)
    }

    /// Classifies every facet of a 4-polytope as a 3-cell by vertex/edge
    /// census; facets of other dimensions all report `Other`.
    pub fn cell_census(&self) -> Vec<CellType> {
        self.facets
            .iter()
            .map(|facet| {
                if self.dim != 4 {
                    return CellType::Other(facet.incident.len());
                }
                let cell_points: Vec<Vec<S>> = facet
                    .incident
                    .iter()
                    .map(|&i| self.points[i].clone())
                    .collect();
                let cell = facet_enumeration(&cell_points)
                    .expect("facet vertices are vertices of the facet polytope");
                match (cell.points.len(), cell.graph().edge_count()) {
                    (4, 6) => CellType::Tetrahedron,
                    (5, 8) => CellType::EgyptianPyramid,
                    (6, 12) => CellType::Octahedron,
                    (6, 9) => CellType::TriangularPrism,
                    (count, _) => CellType::Other(count),
                }
            })
            .collect()
    }

    /// Cell census as sorted counts.
    pub fn census_counts(&self) -> BTreeMap<CellType, usize> {
        let mut counts = BTreeMap::new();
        for cell in self.cell_census() {
            *counts.entry(cell).or_insert(0) += 1;
        }
        counts
    }
}

/// 3-cell shapes, classified by vertex/edge census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellType {
    /// 4 vertices, 6 edges.
    Tetrahedron,
    /// Pyramid over a square: 5 vertices, 8 edges.
    EgyptianPyramid,
    /// 6 vertices, 12 edges.
    Octahedron,
    /// 6 vertices, 9 edges.
    TriangularPrism,
    /// Anything else, tagged with its vertex count.
    Other(usize),
}

impl std::fmt::Display for CellType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CellType::Tetrahedron => write!(f, "Tetrahedron"),
            CellType::EgyptianPyramid => write!(f, "EgyptianPyramid"),
            CellType::Octahedron => write!(f, "Octahedron"),
            CellType::TriangularPrism => write!(f, "TriangularPrism"),
            CellType::Other(count) => write!(f, "Other({count})"),
        }
    }
}

/// The `binom(n, r)` vertices of the hypersimplex: all 0/1 points with
/// coordinate sum `r`. Requires `0 < r < n`.
pub fn hypersimplex<S: Scalar>(r: usize, n: usize) -> Result<Vec<Vec<S>>, PolytopeError> {
    if r == 0 || r >= n {
        return Err(PolytopeError::HypersimplexRange { rank: r, ground: n });
    }
    let mut points = Vec::new();
    for_each_combination(n, r, |subset| {
        points.push(
            (1..=n)
                .map(|e| if subset.contains(e) { S::one() } else { S::zero() })
                .collect(),
        );
    });
    Ok(points)
}

/// Replaces one point of a configuration.
pub fn replace_point<S: Clone>(
    points: &[Vec<S>],
    index: usize,
    new_point: Vec<S>,
) -> Result<Vec<Vec<S>>, PolytopeError> {
    if index >= points.len() {
        return Err(PolytopeError::IndexOutOfRange {
            index,
            count: points.len(),
        });
    }
    let mut out = points.to_vec();
    out[index] = new_point;
    Ok(out)
}

/// An inequality `normal · x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HRepViolation {
    #[error("point {point} violates inequality {inequality}")]
    InfeasiblePoint { point: usize, inequality: usize },
    #[error("inequality {inequality} is not tight on a facet-dimensional point set")]
    NonSupporting { inequality: usize },
    #[error("inequality {inequality} has {got} coefficients, expected {expected}")]
    MixedDimensions {
        inequality: usize,
        got: usize,
        expected: usize,
    },
}

/// Checks an H-representation against a vertex set: every point must satisfy
/// every inequality, and every inequality must be tight on an affinely
/// `(dim-1)`-dimensional point subset (a facet, or an implicit equation of
/// the hull, which is tight everywhere). Returns the number of tight
/// inequalities per point.
pub fn verify_h_representation<S: Scalar>(
    points: &[Vec<S>],
    inequalities: &[Inequality<S>],
) -> Result<Vec<usize>, HRepViolation> {
    assert!(!points.is_empty(), "no points given");
    let ambient = points[0].len();
    for (i, ineq) in inequalities.iter().enumerate() {
        if ineq.normal.len() != ambient {
            return Err(HRepViolation::MixedDimensions {
                inequality: i,
                got: ineq.normal.len(),
                expected: ambient,
            });
        }
    }
    let dim = affine_dimension(points);
    let mut counts = vec![0usize; points.len()];
    for (j, ineq) in inequalities.iter().enumerate() {
        let mut tight: Vec<Vec<S>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let mut value = S::zero() - ineq.offset.clone();
            for (a, x) in ineq.normal.iter().zip(p) {
                value = value + a.clone() * x.clone();
            }
            if value < S::zero() {
                return Err(HRepViolation::InfeasiblePoint {
                    point: i,
                    inequality: j,
                });
            }
            if value.is_zero() {
                counts[i] += 1;
                tight.push(p.clone());
            }
        }
        if tight.is_empty() || affine_dimension(&tight) + 1 < dim {
            return Err(HRepViolation::NonSupporting { inequality: j });
        }
    }
    Ok(counts)
}

/// Parses the points file format: header `v d`, then `v` lines of `d`
/// rationals written as `p/q` or plain integers.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Rat>>, ParseError> {
    let mut tokens = Tokens::new(text);
    let v = tokens.usize_field("point count")?;
    let d = tokens.usize_field("dimension")?;
    if v == 0 {
        return Err(tokens.error_at_last("at least one point required"));
    }
    let mut points = Vec::with_capacity(v);
    for _ in 0..v {
        let mut p = Vec::with_capacity(d);
        for _ in 0..d {
            p.push(rational_field(&mut tokens)?);
        }
        points.push(p);
    }
    tokens.expect_end()?;
    Ok(points)
}

/// Writes the points file format.
pub fn write_points(points: &[Vec<Rat>]) -> String {
    let mut out = String::new();
    let d = points.first().map_or(0, Vec::len);
    let _ = writeln!(out, "{} {}", points.len(), d);
    for p in points {
        let coords: Vec<String> = p.iter().map(rational_token).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

/// Parses the inequality file format: header `f d`, then `f` lines
/// `b a1 .. ad` meaning `a · x >= b`.
pub fn parse_inequalities(text: &str) -> Result<Vec<Inequality<Rat>>, ParseError> {
    let mut tokens = Tokens::new(text);
    let f = tokens.usize_field("inequality count")?;
    let d = tokens.usize_field("dimension")?;
    let mut out = Vec::with_capacity(f);
    for _ in 0..f {
        let offset = rational_field(&mut tokens)?;
        let mut normal = Vec::with_capacity(d);
        for _ in 0..d {
            normal.push(rational_field(&mut tokens)?);
        }
        out.push(Inequality { normal, offset });
    }
    tokens.expect_end()?;
    Ok(out)
}

fn rational_field(tokens: &mut Tokens<'_>) -> Result<Rat, ParseError> {
    let Some(tok) = tokens.next_token() else {
        return Err(tokens.error_at_last("missing rational"));
    };
    let parse_int = |s: &str| s.parse::<num_bigint::BigInt>();
    let value = match tok.split_once('/') {
        None => parse_int(tok).map(Rat::from_integer),
        Some((num, den)) => {
            let num = parse_int(num);
            let den = parse_int(den);
            match (num, den) {
                (Ok(n), Ok(d)) if !d.is_zero() => Ok(Rat::new(n, d)),
                (Ok(_), Ok(_)) => {
                    return Err(tokens.error_at_last(format!("zero denominator in `{tok}`")))
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
    };
    value.map_err(|e| tokens.error_at_last(format!("invalid rational `{tok}`: {e}")))
}

fn rational_token(x: &Rat) -> String {
    if x.denom() == &num_bigint::BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
