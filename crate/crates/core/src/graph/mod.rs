//! Finite simple undirected graphs with dense vertex ids `0..n`.

mod gadget;
mod io;

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use thiserror::Error;

pub use gadget::{gadgetize, GadgetGraph, Origin, Role};
pub use io::{
    format_graph, parse_gadget, parse_graph, read_graph, write_gadget, write_graph, GraphFormat,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} is not in the graph (n = {n})")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Pair),
    #[error("{0} is not an edge")]
    NotAnEdge(Pair),
    #[error("{0} is already an edge")]
    AlreadyAnEdge(Pair),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// An unordered pair of distinct vertices, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(usize, usize);

impl Pair {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a pair needs two distinct vertices");
        if a < b {
            Pair(a, b)
        } else {
            Pair(b, a)
        }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == b {
            Err(GraphError::Loop(a))
        } else {
            Ok(Pair::new(a, b))
        }
    }

    pub fn low(&self) -> usize {
        self.0
    }

    pub fn high(&self) -> usize {
        self.1
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

pub type VertexSet = BTreeSet<usize>;
pub type PairSet = BTreeSet<Pair>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditMode {
    Remove,
    Add,
    Toggle,
}

/// Adjacency is kept twice: as bit rows for constant-time queries during
/// evaluation, and as sorted neighbour lists for degree and iteration.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            neighbors: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Rejects loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            let p = Pair::try_new(a, b)?;
            if g.has_edge(a, b) {
                return Err(GraphError::DuplicateEdge(p));
            }
            g.set(a, b, true);
        }
        g.sort_neighbors();
        Ok(g)
    }

    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let mut g = Graph::new(n);
        for p in pairs {
            if !g.has_edge(p.0, p.1) {
                g.set(p.0, p.1, true);
            }
        }
        g.sort_neighbors();
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_pairs(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| Pair(a, b))))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_pairs(n, (1..n).map(|i| Pair(i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices; smaller `n` gives a path.
    pub fn cycle(n: usize) -> Self {
        let mut pairs: Vec<Pair> = (1..n).map(|i| Pair(i - 1, i)).collect();
        if n >= 3 {
            pairs.push(Pair(0, n - 1));
        }
        Graph::from_pairs(n, pairs)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i + 5`.
    pub fn petersen() -> Self {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push(Pair::new(i, (i + 1) % 5));
            pairs.push(Pair::new(5 + i, 5 + (i + 2) % 5));
            pairs.push(Pair::new(i, i + 5));
        }
        Graph::from_pairs(10, pairs)
    }

    /// The graph on `n` vertices whose edges are the pairs of `(0..n) choose 2`
    /// (in lexicographic order) selected by the bits of `mask`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let pairs = all_pairs(n)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p);
        Graph::from_pairs(n, pairs)
    }

    fn set(&mut self, a: usize, b: usize, on: bool) {
        let (wa, ba) = (a * self.words + b / 64, b % 64);
        let (wb, bb) = (b * self.words + a / 64, a % 64);
        if on {
            self.rows[wa] |= 1 << ba;
            self.rows[wb] |= 1 << bb;
            self.neighbors[a].push(b);
            self.neighbors[b].push(a);
        } else {
            self.rows[wa] &= !(1 << ba);
            self.rows[wb] &= !(1 << bb);
            self.neighbors[a].retain(|&x| x != b);
            self.neighbors[b].retain(|&x| x != a);
        }
    }

    fn sort_neighbors(&mut self) {
        for list in &mut self.neighbors {
            list.sort_unstable();
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// `false` for `a == b`. Panics on out-of-range vertices.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Pair> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for &b in &self.neighbors[a] {
                if a < b {
                    out.push(Pair(a, b));
                }
            }
        }
        out
    }

    pub fn edge_set(&self) -> PairSet {
        self.edges().into_iter().collect()
    }

    /// Vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Pair> {
        all_pairs(self.n)
            .into_iter()
            .filter(|p| !self.has_edge(p.0, p.1))
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label, or the id itself.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Panics if the label count differs from the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.neighbors.iter().any(Vec::is_empty)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let pairs = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|p| Pair(p.0 + shift, p.1 + shift)));
        Graph::from_pairs(self.n + other.n, pairs)
    }

    /// Adds fresh vertices; returns the new graph and the first new id.
    pub fn with_extra_vertices(&self, count: usize) -> (Graph, usize) {
        (Graph::from_pairs(self.n + count, self.edges()), self.n)
    }

    pub(crate) fn add_edges(&self, pairs: impl IntoIterator<Item = Pair>) -> Graph {
        Graph::from_pairs(self.n, self.edges().into_iter().chain(pairs))
    }
}

/// `G(n, p)`: each pair becomes an edge independently with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let pairs: Vec<Pair> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_pairs(n, pairs)
}

/// All pairs of `0..n` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<Pair> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Pair(a, b)))
        .collect()
}

/// Induced subgraph on the vertices outside `s`. Survivors are renumbered
/// densely in their original order and keep their labels; an unlabelled graph
/// gets labels holding the original ids.
pub fn delete_vertices(g: &Graph, s: &VertexSet) -> Result<Graph, GraphError> {
    for &v in s {
        g.check_vertex(v)?;
    }
    let kept: Vec<usize> = g.vertices().filter(|v| !s.contains(v)).collect();
    let mut index = vec![usize::MAX; g.n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let pairs = g
        .edges()
        .into_iter()
        .filter(|p| index[p.0] != usize::MAX && index[p.1] != usize::MAX)
        .map(|p| Pair::new(index[p.0], index[p.1]));
    let labels = kept.iter().map(|&v| g.label(v)).collect();
    Ok(Graph::from_pairs(kept.len(), pairs).with_labels(labels))
}

/// `G - F`, `G + F` or `G xor F` depending on `mode`.
pub fn edit_edges(g: &Graph, f: &PairSet, mode: EditMode) -> Result<Graph, GraphError> {
    for p in f {
        g.check_vertex(p.1)?;
        match mode {
            EditMode::Remove if !g.has_edge(p.0, p.1) => return Err(GraphError::NotAnEdge(*p)),
            EditMode::Add if g.has_edge(p.0, p.1) => return Err(GraphError::AlreadyAnEdge(*p)),
            _ => {}
        }
    }
    let mut out = g.clone();
    for p in f {
        let on = !out.has_edge(p.0, p.1);
        out.set(p.0, p.1, on);
    }
    out.sort_neighbors();
    Ok(out)
}

/// Same vertex set; distinct vertices adjacent iff they are not adjacent in `g`.
pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::from_pairs(g.n, g.non_edges());
    out.labels = g.labels.clone();
    out
}
