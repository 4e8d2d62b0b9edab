//! Simple undirected graphs, generators, distances and BFS-ball truncations.

mod generate;
mod io;
mod sequence;

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

pub use generate::{generate, Family};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use sequence::{
    regular_tree_rule, lattice_rule, Ball, BallSource, ExplicitSequence, LocalRuleGraph,
    SubgraphSequence,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
    #[error("neighbor rule is not symmetric: {to} is a neighbor of {from} but not vice versa")]
    AsymmetricRule { from: String, to: String },
    #[error("radius {radius} is not one of the declared truncation radii")]
    UndeclaredRadius { radius: usize },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Where a graph came from, carried into exported descriptors.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    EdgeList,
    Generated(Family),
    Truncation { rule: String, radius: usize },
}

/// A finite simple undirected graph with dense vertex ids `0..n`.
///
/// Adjacency lists are sorted and free of duplicates and self-loops; every
/// edge is stored in both endpoint lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    provenance: Provenance,
}

/// JSON descriptor exported next to edge lists and embedded in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphDescriptor {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub source: Provenance,
}

impl Graph {
    /// Builds a graph from an edge list. `vertex_count` may add trailing
    /// isolated vertices; it is raised automatically to cover every id used.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
            .max(vertex_count);
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adjacency,
            labels: None,
            provenance: Provenance::EdgeList,
        })
    }

    /// Builds from adjacency lists that are already symmetric; used by
    /// generators and truncation which construct them directly.
    pub(crate) fn from_adjacency(mut adjacency: Vec<Vec<usize>>, provenance: Provenance) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let g = Self {
            adjacency,
            labels: None,
            provenance,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn descriptor(&self) -> GraphDescriptor {
        GraphDescriptor {
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            max_degree: self.max_degree(),
            source: self.provenance.clone(),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Full scan of the symmetry and simplicity invariants.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        for (u, list) in self.adjacency.iter().enumerate() {
            for (k, &v) in list.iter().enumerate() {
                self.check_vertex(v)?;
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if k > 0 && list[k - 1] >= v {
                    return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(GraphError::InvalidVertex {
                        vertex: u,
                        vertex_count: self.vertex_count(),
                    });
                }
            }
        }
        Ok(())
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Row `u` holds the BFS distances from `u`.
    pub fn all_distances(&self) -> Vec<Vec<Option<usize>>> {
        use rayon::prelude::*;
        (0..self.vertex_count())
            .into_par_iter()
            .map(|u| self.distances_from(u))
            .collect()
    }

    pub fn has_cycle(&self) -> bool {
        // A forest on n vertices with c components has exactly n - c edges.
        let mut seen = vec![false; self.vertex_count()];
        let mut components = 0;
        for s in 0..self.vertex_count() {
            if !seen[s] {
                components += 1;
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(u) = stack.pop() {
                    for &w in &self.adjacency[u] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        self.edge_count() + components > self.vertex_count()
    }
}

/// Shortest-path distance between `u` and `v`; `Ok(None)` when unreachable.
pub fn bfs_distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Ok(Some(0));
    }
    Ok(g.distances_from(u)[v])
}
