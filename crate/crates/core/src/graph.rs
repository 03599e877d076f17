//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are stored 0-indexed; qubit labels in text (edge lists, set
//! rendering, the CLI) are 1-indexed.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::gf2::{Gf2Matrix, Gf2Vector};

/// Largest supported vertex count; adjacency rows are single words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("qubit sets overlap on {0}")]
    Overlap(QubitSet),
    #[error("{kind} needs at least {min} vertices, got {n}")]
    InvalidFamilySize { kind: Family, n: usize, min: usize },
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("invalid qubit label {0:?}")]
    InvalidLabel(String),
    #[error("qubit label {label} out of range 1..={universe}")]
    LabelOutOfRange { label: usize, universe: usize },
    #[error("universe mismatch: expected {expected}, got {actual}")]
    UniverseMismatch { expected: usize, actual: usize },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the qubits `{0, …, universe − 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitSet {
    universe: usize,
    mask: u64,
}

impl QubitSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_VERTICES);
        Self { universe, mask: 0 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= MAX_VERTICES);
        Self {
            universe,
            mask: full_mask(universe),
        }
    }

    pub fn from_mask(universe: usize, mask: u64) -> Result<Self, GraphError> {
        if universe > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(universe));
        }
        let extra = mask & !full_mask(universe);
        if extra != 0 {
            return Err(GraphError::VertexOutOfRange {
                vertex: extra.trailing_zeros() as usize,
                n: universe,
            });
        }
        Ok(Self { universe, mask })
    }

    /// Builds a set from 0-indexed vertex indices.
    pub fn from_indices(universe: usize, indices: &[usize]) -> Result<Self, GraphError> {
        let mut set = Self::empty(universe);
        for &v in indices {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            set.mask |= 1 << v;
        }
        Ok(set)
    }

    /// Builds a set from 1-indexed qubit labels.
    pub fn from_labels(universe: usize, labels: &[usize]) -> Result<Self, GraphError> {
        let mut set = Self::empty(universe);
        for &label in labels {
            if label == 0 || label > universe {
                return Err(GraphError::LabelOutOfRange { label, universe });
            }
            set.mask |= 1 << (label - 1);
        }
        Ok(set)
    }

    /// Parses a comma-separated list of 1-indexed labels, e.g. `"1,3,5"`.
    /// Braces and whitespace are ignored; an empty list is the empty set.
    pub fn parse_labels(universe: usize, text: &str) -> Result<Self, GraphError> {
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut labels = Vec::new();
        for part in trimmed.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let label = part
                .parse::<usize>()
                .map_err(|_| GraphError::InvalidLabel(part.to_string()))?;
            labels.push(label);
        }
        Self::from_labels(universe, &labels)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.universe)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.mask >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.mask |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.mask &= !(1 << v);
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            universe: self.universe,
            mask: !self.mask & full_mask(self.universe),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        Self {
            universe: self.universe,
            mask: self.mask & other.mask,
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.mask & other.mask == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Members as 0-indexed vertices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    /// Members as 1-indexed labels, ascending.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Position of `v` among the members (ascending order).
    pub fn rank_of(&self, v: usize) -> Option<usize> {
        self.contains(v)
            .then(|| (self.mask & ((1u64 << v) - 1)).count_ones() as usize)
    }

    /// All subsets of this set, starting from the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = QubitSet> {
        let universe = self.universe;
        let full = self.mask;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(QubitSet {
                universe,
                mask: current,
            })
        })
    }
}

impl fmt::Display for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, label) in self.labels().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QubitSet({self} of {})", self.universe)
    }
}

/// Standard graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Linear,
    Ring,
    Star,
    Complete,
    /// Complete core on `n` vertices, each with one pendant; `2n` vertices.
    Snowflake,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Linear,
        Family::Ring,
        Family::Star,
        Family::Complete,
        Family::Snowflake,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Linear => "linear",
            Family::Ring => "ring",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Snowflake => "snowflake",
        }
    }

    pub fn min_size(&self) -> usize {
        match self {
            Family::Ring => 3,
            _ => 1,
        }
    }

    /// Vertex count of the family member of the given size.
    pub fn vertex_count(&self, size: usize) -> usize {
        match self {
            Family::Snowflake => 2 * size,
            _ => size,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-indexed vertex pairs. Repeated edges are
    /// collapsed (with a warning).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let mut duplicates = 0;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                duplicates += 1;
            }
            g.add_edge(u, v);
        }
        if duplicates > 0 {
            log::warn!("collapsed {duplicates} duplicate edge(s)");
        }
        Ok(g)
    }

    pub fn family(kind: Family, size: usize) -> Result<Self, GraphError> {
        let min = kind.min_size();
        if size < min {
            return Err(GraphError::InvalidFamilySize { kind, n: size, min });
        }
        let mut g = Self::empty(kind.vertex_count(size))?;
        match kind {
            Family::Linear => (1..size).for_each(|v| g.add_edge(v - 1, v)),
            Family::Ring => (0..size).for_each(|v| g.add_edge(v, (v + 1) % size)),
            Family::Star => (1..size).for_each(|v| g.add_edge(0, v)),
            Family::Complete => {
                for u in 0..size {
                    for v in u + 1..size {
                        g.add_edge(u, v);
                    }
                }
            }
            Family::Snowflake => {
                for u in 0..size {
                    for v in u + 1..size {
                        g.add_edge(u, v);
                    }
                    g.add_edge(u, u + size);
                }
            }
        }
        Ok(g)
    }

    /// Parses the edge-list text format: the first non-blank line holds `n`,
    /// every further line one `u v` pair of 1-indexed labels. `#` starts a
    /// comment.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(GraphError::EdgeList {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| GraphError::EdgeList {
            line: first,
            message: format!("invalid vertex count {header:?}"),
        })?;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut edges = Vec::new();
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse = |s: &str| -> Result<usize, GraphError> {
                let label: usize = s.parse().map_err(|_| GraphError::EdgeList {
                    line,
                    message: format!("invalid label {s:?}"),
                })?;
                if label == 0 || label > n {
                    return Err(GraphError::EdgeList {
                        line,
                        message: format!("label {label} out of range 1..={n}"),
                    });
                }
                Ok(label - 1)
            };
            match fields.as_slice() {
                [u, v] => {
                    let (u, v) = (parse(u)?, parse(v)?);
                    if u == v {
                        return Err(GraphError::EdgeList {
                            line,
                            message: format!("self-loop at qubit {}", u + 1),
                        });
                    }
                    edges.push((u, v));
                }
                _ => {
                    return Err(GraphError::EdgeList {
                        line,
                        message: format!("expected two labels, got {content:?}"),
                    })
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// A random connected graph: a random spanning tree plus every other
    /// edge independently with probability `p`.
    pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Self::empty(n).expect("vertex count within bound");
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let parent = order[rng.gen_range(0..i)];
            g.add_edge(order[i], parent);
        }
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) && rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// A uniformly random labelled graph (each edge with probability 1/2).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut g = Self::empty(n).expect("vertex count within bound");
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> QubitSet {
        QubitSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                QubitSet {
                    universe: self.n,
                    mask: self.adj[u] & !full_mask(u + 1),
                }
                .iter()
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Adjacency row of `v` as a bit mask.
    pub fn row_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighborhood(&self, v: usize) -> Result<QubitSet, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(QubitSet {
            universe: self.n,
            mask: self.adj[v],
        })
    }

    /// The submatrix of the adjacency matrix with rows in `rows` and columns
    /// in `cols`, both in ascending vertex order.
    pub fn biadjacency(&self, rows: &QubitSet, cols: &QubitSet) -> Result<Gf2Matrix, GraphError> {
        for s in [rows, cols] {
            if s.universe != self.n {
                return Err(GraphError::UniverseMismatch {
                    expected: self.n,
                    actual: s.universe,
                });
            }
        }
        if !rows.is_disjoint(cols) {
            return Err(GraphError::Overlap(rows.intersection(cols)));
        }
        let width = cols.len();
        let data = rows
            .iter()
            .map(|a| {
                let mut row = Gf2Vector::zeros(width);
                for (j, b) in cols.iter().enumerate() {
                    if self.has_edge(a, b) {
                        row.set(j, true);
                    }
                }
                row
            })
            .collect();
        Ok(Gf2Matrix::from_rows(width, data).expect("rows built with matching width"))
    }

    /// Rank over GF(2) of the cut matrix between `set` and its complement.
    ///
    /// Equivalent to `biadjacency(set, complement).rank()`, computed on words.
    pub fn cut_rank(&self, set: &QubitSet) -> usize {
        let (rows, cols) = if set.len() <= self.n / 2 {
            (*set, set.complement())
        } else {
            (set.complement(), *set)
        };
        let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
        for a in rows.iter() {
            let mut r = self.adj[a] & cols.mask;
            for &b in &basis {
                r = r.min(r ^ b);
            }
            if r != 0 {
                basis.push(r);
                basis.sort_unstable_by(|x, y| y.cmp(x));
            }
        }
        basis.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0).len() == self.n
    }

    /// The vertices reachable from `start` (breadth first).
    pub fn component_of(&self, start: usize) -> QubitSet {
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let mut fresh = self.adj[v] & !seen;
            seen |= fresh;
            while fresh != 0 {
                queue.push_back(fresh.trailing_zeros() as usize);
                fresh &= fresh - 1;
            }
        }
        QubitSet {
            universe: self.n,
            mask: seen,
        }
    }

    /// The graph with every edge touching `removed` deleted; vertex labels
    /// are kept, so removed vertices become isolated.
    pub fn without_edges_to(&self, removed: &QubitSet) -> Self {
        let keep = !removed.mask;
        let adj = (0..self.n)
            .map(|v| {
                if removed.contains(v) {
                    0
                } else {
                    self.adj[v] & keep
                }
            })
            .collect();
        Self { n: self.n, adj }
    }

    /// The subgraph induced on `keep`, relabelled to `0..keep.len()` in
    /// ascending order.
    pub fn induced(&self, keep: &QubitSet) -> Self {
        let members: Vec<usize> = keep.iter().collect();
        let mut g = Self::empty(members.len()).expect("smaller than parent");
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut g = Self::empty(self.n).expect("same size");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Path 1-2-3-4-5 with a sixth vertex hanging off 3 (0-indexed here).
    pub(crate) fn branched_path() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap()
    }

    fn labels(universe: usize, l: &[usize]) -> QubitSet {
        QubitSet::from_labels(universe, l).unwrap()
    }

    #[test]
    fn from_edges_basics() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert!(k2.has_edge(1, 0));
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3, Graph::family(Family::Complete, 3).unwrap());
        assert_eq!(branched_path().edge_count(), 5);
    }

    #[test]
    fn from_edges_errors() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::empty(65),
            Err(GraphError::TooManyVertices(65))
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn families() {
        let star = Graph::family(Family::Star, 4).unwrap();
        assert_eq!(star.neighborhood(0).unwrap(), labels(4, &[2, 3, 4]));
        assert_eq!(
            Graph::family(Family::Ring, 3).unwrap(),
            Graph::family(Family::Complete, 3).unwrap()
        );
        let flake = Graph::family(Family::Snowflake, 8).unwrap();
        assert_eq!(flake.n(), 16);
        assert!(flake.has_edge(3, 11));
        assert!(!flake.has_edge(8, 9));
        assert!(matches!(
            Graph::family(Family::Ring, 2),
            Err(GraphError::InvalidFamilySize { min: 3, .. })
        ));
        assert!(Graph::family(Family::Star, 0).is_err());
        assert_eq!("Snowflake".parse::<Family>().unwrap(), Family::Snowflake);
        assert!("cube".parse::<Family>().is_err());
    }

    #[test]
    fn family_edge_counts() {
        for n in 3..=20 {
            let count = |k| Graph::family(k, n).unwrap().edge_count();
            assert_eq!(count(Family::Star), n - 1);
            assert_eq!(count(Family::Linear), n - 1);
            assert_eq!(count(Family::Ring), n);
            assert_eq!(count(Family::Complete), n * (n - 1) / 2);
            assert_eq!(count(Family::Snowflake), n * (n - 1) / 2 + n);
            assert_eq!(Graph::family(Family::Snowflake, n).unwrap().n(), 2 * n);
        }
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(
            branched_path().neighborhood(2).unwrap(),
            labels(6, &[2, 4, 6])
        );
        let k2 = Graph::family(Family::Complete, 2).unwrap();
        assert_eq!(k2.neighborhood(0).unwrap(), labels(2, &[2]));
        let star = Graph::family(Family::Star, 5).unwrap();
        assert_eq!(star.neighborhood(0).unwrap(), labels(5, &[2, 3, 4, 5]));
        assert!(star.neighborhood(5).is_err());
    }

    #[test]
    fn biadjacency_examples() {
        let g = branched_path();
        let a = labels(6, &[4, 6]);
        let b = labels(6, &[1, 2, 3, 5]);
        let m = g.biadjacency(&a, &b).unwrap();
        assert_eq!(m, Gf2Matrix::parse_rows(4, &["0011", "0010"]).unwrap());
        let empty = g.biadjacency(&QubitSet::empty(6), &b).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 4));
        let k2 = Graph::family(Family::Complete, 2).unwrap();
        let one = k2.biadjacency(&labels(2, &[1]), &labels(2, &[2])).unwrap();
        assert_eq!(one, Gf2Matrix::identity(1));
        assert!(matches!(
            g.biadjacency(&labels(6, &[1, 2]), &labels(6, &[2, 3])),
            Err(GraphError::Overlap(_))
        ));
    }

    #[test]
    fn biadjacency_transpose_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let g = Graph::random(n, &mut rng);
            let a = QubitSet::from_mask(n, rng.gen::<u64>() & full_mask(n)).unwrap();
            let b = QubitSet::from_mask(n, rng.gen::<u64>() & a.complement().mask()).unwrap();
            assert_eq!(
                g.biadjacency(&a, &b).unwrap(),
                g.biadjacency(&b, &a).unwrap().transpose()
            );
            let cut = g.biadjacency(&a, &a.complement()).unwrap();
            assert_eq!(g.cut_rank(&a), cut.rank());
        }
    }

    #[test]
    fn connectivity() {
        assert!(Graph::family(Family::Complete, 2).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        assert!(Graph::family(Family::Snowflake, 4).unwrap().is_connected());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..30 {
            assert!(Graph::random_connected(n, 0.1, &mut rng).is_connected());
        }
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let text = "6\n1 2\n2 3\n3 4\n4 5\n3 6\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g, branched_path());
        assert_eq!(g.to_edge_list(), "6\n1 2\n2 3\n3 4\n3 6\n4 5\n");
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        let commented = "# graph\n3\n\n1 2 # edge\n2 3\n";
        assert_eq!(Graph::parse_edge_list(commented).unwrap().edge_count(), 2);
        assert!(matches!(
            Graph::parse_edge_list("3\n1 4\n"),
            Err(GraphError::EdgeList { line: 2, .. })
        ));
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("x\n").is_err());
        assert!(Graph::parse_edge_list("3\n1 2 3\n").is_err());
        assert!(Graph::parse_edge_list("3\n2 2\n").is_err());
    }

    #[test]
    fn qubit_sets() {
        let s = QubitSet::parse_labels(6, "1, 3,5").unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(s.to_string(), "{1,3,5}");
        assert_eq!(s.complement().to_string(), "{2,4,6}");
        assert_eq!(s.rank_of(4), Some(2));
        assert_eq!(s.rank_of(1), None);
        assert_eq!(
            QubitSet::parse_labels(6, "1,7"),
            Err(GraphError::LabelOutOfRange {
                label: 7,
                universe: 6
            })
        );
        assert!(QubitSet::parse_labels(6, "").unwrap().is_empty());
        assert_eq!(s.subsets().count(), 8);
        assert_eq!(QubitSet::empty(3).subsets().count(), 1);
        assert_eq!(QubitSet::full(64).len(), 64);
    }

    #[test]
    fn induced_and_pruned() {
        let g = branched_path();
        let keep = labels(6, &[1, 2, 3, 5]);
        let sub = g.induced(&keep);
        assert_eq!(sub.edges(), vec![(0, 1), (1, 2)]);
        let pruned = g.without_edges_to(&keep.complement());
        assert_eq!(pruned.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(pruned.n(), 6);
    }
}
