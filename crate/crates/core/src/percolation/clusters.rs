use serde::Serialize;

use super::rng::{unit_interval, CounterStream};
use crate::graph::Graph;

/// Open/closed state of every vertex for one trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    pub open: Vec<bool>,
    pub p: f64,
    pub trial_seed: u64,
}

/// Vertex `v` is open iff counter word `v` under `trial_seed` maps below `p`.
pub fn sample(g: &Graph, p: f64, trial_seed: u64) -> Configuration {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1], got {p}");
    let mut open = Vec::with_capacity(g.vertex_count());
    fill_open(&mut open, g.vertex_count(), p, trial_seed);
    Configuration {
        open,
        p,
        trial_seed,
    }
}

pub(crate) fn fill_open(open: &mut Vec<bool>, n: usize, p: f64, trial_seed: u64) {
    let mut stream = CounterStream::new(trial_seed);
    open.clear();
    open.extend((0..n).map(|_| unit_interval(stream.next_word()) < p));
}

/// Union by size with path halving.
#[derive(Debug, Clone, Default)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        let mut s = Self::default();
        s.reset(n);
        s
    }

    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
        self.size.clear();
        self.size.resize(n, 1);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

pub const CLOSED: u32 = u32::MAX;

/// Components of the open subgraph. Component ids are assigned in order of
/// each component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterLabeling {
    /// `None` for closed vertices.
    pub component: Vec<Option<u32>>,
    pub sizes: Vec<usize>,
}

impl ClusterLabeling {
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// `|C(v)|`, zero when `v` is closed.
    pub fn cluster_size(&self, v: usize) -> usize {
        self.component[v].map_or(0, |c| self.sizes[c as usize])
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        matches!((self.component[u], self.component[v]), (Some(a), Some(b)) if a == b)
    }
}

/// Reusable buffers for labeling many configurations of one graph.
#[derive(Debug, Default)]
pub(crate) struct Labeler {
    sets: DisjointSets,
    pub component: Vec<u32>,
    pub sizes: Vec<usize>,
    root_label: Vec<u32>,
}

impl Labeler {
    pub fn label(&mut self, g: &Graph, open: &[bool]) {
        let n = g.vertex_count();
        self.sets.reset(n);
        for u in 0..n {
            if open[u] {
                for &w in g.neighbors(u) {
                    if w > u && open[w] {
                        self.sets.union(u, w);
                    }
                }
            }
        }
        self.component.clear();
        self.component.resize(n, CLOSED);
        self.root_label.clear();
        self.root_label.resize(n, CLOSED);
        self.sizes.clear();
        for v in 0..n {
            if !open[v] {
                continue;
            }
            let r = self.sets.find(v);
            if self.root_label[r] == CLOSED {
                self.root_label[r] = self.sizes.len() as u32;
                self.sizes.push(0);
            }
            let c = self.root_label[r];
            self.component[v] = c;
            self.sizes[c as usize] += 1;
        }
    }
}

pub fn label_clusters(g: &Graph, c: &Configuration) -> ClusterLabeling {
    assert_eq!(c.open.len(), g.vertex_count(), "configuration does not match graph");
    let mut labeler = Labeler::default();
    labeler.label(g, &c.open);
    ClusterLabeling {
        component: labeler
            .component
            .iter()
            .map(|&k| (k != CLOSED).then_some(k))
            .collect(),
        sizes: labeler.sizes,
    }
}
