//! Simple undirected graphs, Hamiltonian circuits, and instance sources.
//!
//! Vertices are dense labels `0..n`. Graphs are immutable once built and are
//! shared freely between threads.

mod catalog;
mod enumerate;
mod generate;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub use catalog::{named_graph, CATALOG};
pub use enumerate::{enumerate_all_graphs, AllGraphs, DEFAULT_ENUMERATION_CAP};
pub use generate::{generate_erdos_renyi, generate_planted_cycle};
pub use parse::parse_graph;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("unknown graph name `{name}`; known names: {}", CATALOG.join(", "))]
    UnknownName { name: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumerating all graphs on {n} vertices exceeds the cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adjacency: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.adjacency[u] = VertexSet::full(n).without(u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adjacency[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen.len() == self.n
    }

    /// The graph with `v` removed; labels above `v` shift down by one.
    pub fn without_vertex(&self, v: Vertex) -> Graph {
        assert!(v < self.n, "vertex {v} out of range");
        let relabel = |w: Vertex| if w > v { w - 1 } else { w };
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (relabel(a), relabel(b)));
        Graph::from_edges(self.n - 1, edges).expect("relabelled edges stay in range")
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.adjacency[u].remove(v);
        g.adjacency[v].remove(u);
        g
    }

    /// Serializes to the edge-list text format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("a circuit needs at least 3 vertices, graph has {0}")]
    TooSmall(usize),
    #[error("circuit has {got} vertices, graph has {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} is visited more than once")]
    Repeated(Vertex),
    #[error("no edge between consecutive vertices {0} and {1}")]
    MissingEdge(Vertex, Vertex),
}

/// A Hamiltonian circuit written as its `n` distinct vertices in visiting
/// order; the closing edge from the last vertex back to the first is implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Circuit(pub Vec<Vertex>);

impl Circuit {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Checks every circuit invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CircuitError> {
        validate_circuit(g, &self.0)
    }

    /// Same cycle, oriented so that the second vertex is smaller than the
    /// last one. The first vertex is kept.
    pub fn canonical(mut self) -> Circuit {
        if self.0.len() >= 3 && self.0[1] > self.0[self.0.len() - 1] {
            self.0[1..].reverse();
        }
        self
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

/// Independent Hamiltonian-circuit check used to gate every reported witness.
pub fn validate_circuit(g: &Graph, seq: &[Vertex]) -> Result<(), CircuitError> {
    let n = g.n();
    if n < 3 {
        return Err(CircuitError::TooSmall(n));
    }
    if seq.len() != n {
        return Err(CircuitError::WrongLength {
            got: seq.len(),
            expected: n,
        });
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(CircuitError::OutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(CircuitError::Repeated(v));
        }
    }
    for i in 0..n {
        let (a, b) = (seq[i], seq[(i + 1) % n]);
        if !g.has_edge(a, b) {
            return Err(CircuitError::MissingEdge(a, b));
        }
    }
    Ok(())
}
