//! Undirected simple graphs, the families used for search experiments, and
//! their combinatorial Laplacians.

mod families;
mod io;

pub use families::{
    complete, complete_minus_disjoint_edges, hypercube, paley, regular_multipartite, SrgParams,
};
pub use io::{export_dot, parse_dot, parse_edge_list, to_edge_list};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Which generator produced a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Hypercube { n: u32 },
    Complete { n: usize },
    CompleteMinus { n: usize, l: usize },
    Paley { q: usize },
    Multipartite { m: usize, k: usize },
    Custom,
}

impl Family {
    /// Rebuilds the graph this tag describes. `Custom` carries no recipe.
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Hypercube { n } => hypercube(n),
            Family::Complete { n } => complete(n),
            Family::CompleteMinus { n, l } => complete_minus_disjoint_edges(n, l),
            Family::Paley { q } => paley(q),
            Family::Multipartite { m, k } => regular_multipartite(m, k),
            Family::Custom => Err(Error::param("custom graphs have no generator")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hypercube { n } => write!(f, "hypercube{{{n}}}"),
            Family::Complete { n } => write!(f, "complete{{{n}}}"),
            Family::CompleteMinus { n, l } => write!(f, "complete_minus{{{n},{l}}}"),
            Family::Paley { q } => write!(f, "paley{{{q}}}"),
            Family::Multipartite { m, k } => write!(f, "multipartite{{{m},{k}}}"),
            Family::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the tag written by `Display`, e.g. `complete_minus{10,5}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "custom" {
            return Ok(Family::Custom);
        }
        let bad = || Error::input(format!("unrecognized family tag '{s}'"));
        let (name, rest) = s.split_once('{').ok_or_else(bad)?;
        let body = rest.strip_suffix('}').ok_or_else(bad)?;
        let nums = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match (name, nums.as_slice()) {
            ("hypercube", [n]) => Ok(Family::Hypercube { n: *n as u32 }),
            ("complete", [n]) => Ok(Family::Complete { n: *n }),
            ("complete_minus", [n, l]) => Ok(Family::CompleteMinus { n: *n, l: *l }),
            ("paley", [q]) => Ok(Family::Paley { q: *q }),
            ("multipartite", [m, k]) => Ok(Family::Multipartite { m: *m, k: *k }),
            _ => Err(bad()),
        }
    }
}

/// An undirected graph on vertices `0..n_vertices`.
///
/// Generators always return simple connected graphs. Graphs read from files
/// are stored as given and should be passed through [`validate`] before use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    family: Family,
}

impl Graph {
    /// Stores an edge list verbatim. Each pair is normalized to `(min, max)`
    /// but duplicates and self-loops are kept so `validate` can report them.
    pub fn from_edges(n_vertices: usize, edges: Vec<(usize, usize)>, family: Family) -> Self {
        let edges = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        Graph {
            n_vertices,
            edges,
            family,
        }
    }

    /// Builds a graph from a predicate over vertex pairs `u < v`.
    pub(crate) fn from_adjacency_fn(
        n_vertices: usize,
        family: Family,
        adjacent: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut edges = Vec::new();
        for u in 0..n_vertices {
            for v in u + 1..n_vertices {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph {
            n_vertices,
            edges,
            family,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for &(u, v) in &self.edges {
            if u < self.n_vertices && v < self.n_vertices && u != v {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            if u < self.n_vertices && v < self.n_vertices && u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Edge set as unordered pairs, ignoring multiplicity.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Number of connected components, by breadth-first search.
    pub fn components(&self) -> usize {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n_vertices];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n_vertices {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        count
    }
}

/// A problem found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoVertices,
    NoEdges,
    SelfLoop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    OutOfRange { u: usize, v: usize },
    Disconnected { components: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoVertices => f.write_str("graph has no vertices"),
            Diagnostic::NoEdges => f.write_str("graph has no edges"),
            Diagnostic::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Diagnostic::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} -- {v}"),
            Diagnostic::OutOfRange { u, v } => {
                write!(f, "edge {u} -- {v} references a missing vertex")
            }
            Diagnostic::Disconnected { components } => {
                write!(f, "disconnected ({components} components)")
            }
        }
    }
}

/// Checks simplicity and connectivity. Returns every violation found.
pub fn validate(g: &Graph) -> std::result::Result<(), Vec<Diagnostic>> {
    let mut issues = Vec::new();
    if g.n_vertices == 0 {
        issues.push(Diagnostic::NoVertices);
        return Err(issues);
    }
    if g.edges.is_empty() {
        issues.push(Diagnostic::NoEdges);
    }
    let mut seen = BTreeSet::new();
    for &(u, v) in &g.edges {
        if u >= g.n_vertices || v >= g.n_vertices {
            issues.push(Diagnostic::OutOfRange { u, v });
        } else if u == v {
            issues.push(Diagnostic::SelfLoop { vertex: u });
        } else if !seen.insert((u, v)) {
            issues.push(Diagnostic::DuplicateEdge { u, v });
        }
    }
    let components = g.components();
    if components > 1 {
        issues.push(Diagnostic::Disconnected { components });
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}

/// Combinatorial Laplacian `D - A` (positive semidefinite).
pub fn laplacian(g: &Graph) -> Matrix {
    let n = g.n_vertices;
    let mut q = Matrix::zeros(n, n);
    for &(u, v) in &g.edges {
        if u == v || u >= n || v >= n {
            continue;
        }
        q[(u, v)] -= 1.0;
        q[(v, u)] -= 1.0;
        q[(u, u)] += 1.0;
        q[(v, v)] += 1.0;
    }
    q
}
