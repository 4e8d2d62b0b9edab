//! Arcs, the Hashimoto (non-backtracking) matrix and its spectral data.
//!
//! Arcs are numbered in sorted `(tail, head)` order, so every matrix, Perron
//! vector and report derived from a graph is byte-stable across runs.

mod growth;
mod olg;
mod spectral;

use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::Graph;

pub use growth::{
    growth_for_graph, growth_from_seeds, walk_norms, walk_norms_from_vertex, GraphGrowth,
    GrowthEstimate, GrowthOptions, PNorm,
};
pub use olg::{shortest_return_lengths, smallest_certifying_ell, strong_ell_connected, OlgConnectivity};
pub use spectral::{spectral_radius, SpectralError, SpectralResult, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

/// The directed-edge universe of a graph with reverse pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    arcs: Vec<Arc>,
    reverse: Vec<usize>,
    /// `out_offsets[v]..out_offsets[v + 1]` are the arcs with tail `v`.
    out_offsets: Vec<usize>,
}

impl ArcSet {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut out_offsets = Vec::with_capacity(n + 1);
        let mut arcs = Vec::with_capacity(2 * g.edge_count());
        for u in 0..n {
            out_offsets.push(arcs.len());
            arcs.extend(g.neighbors(u).iter().map(|&v| Arc { tail: u, head: v }));
        }
        out_offsets.push(arcs.len());
        let reverse = arcs
            .iter()
            .map(|a| {
                let pos = g
                    .neighbors(a.head)
                    .binary_search(&a.tail)
                    .expect("graph adjacency is symmetric");
                out_offsets[a.head] + pos
            })
            .collect();
        Self {
            arcs,
            reverse,
            out_offsets,
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arc(&self, a: usize) -> Arc {
        self.arcs[a]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn reverse(&self, a: usize) -> usize {
        self.reverse[a]
    }

    pub fn out_arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.out_offsets[v]..self.out_offsets[v + 1]
    }

    /// Arc id of `tail -> head`, if that edge exists.
    pub fn find(&self, tail: usize, head: usize) -> Option<usize> {
        let range = self.out_arcs(tail);
        self.arcs[range.clone()]
            .binary_search_by_key(&head, |a| a.head)
            .ok()
            .map(|pos| range.start + pos)
    }
}

pub fn build_arcs(g: &Graph) -> ArcSet {
    ArcSet::new(g)
}

/// Sparse 0/1 adjacency matrix of the oriented line graph, stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct HashimotoMatrix {
    arcs: ArcSet,
    row_offsets: Vec<usize>,
    cols: Vec<usize>,
}

impl HashimotoMatrix {
    pub fn new(g: &Graph) -> Self {
        let arcs = ArcSet::new(g);
        let mut row_offsets = Vec::with_capacity(arcs.len() + 1);
        let mut cols = Vec::new();
        for a in 0..arcs.len() {
            row_offsets.push(cols.len());
            let back = arcs.reverse(a);
            cols.extend(arcs.out_arcs(arcs.arc(a).head).filter(|&b| b != back));
        }
        row_offsets.push(cols.len());
        Self {
            arcs,
            row_offsets,
            cols,
        }
    }

    pub fn dimension(&self) -> usize {
        self.arcs.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.cols[self.row_offsets[a]..self.row_offsets[a + 1]]
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.row(a).binary_search(&b).is_ok()
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (a, ya) in y.iter_mut().enumerate() {
            *ya = self.row(a).iter().map(|&b| x[b]).sum();
        }
    }

    /// `y^T = x^T H`.
    pub fn apply_transpose(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for (a, &xa) in x.iter().enumerate() {
            if xa != 0.0 {
                for &b in self.row(a) {
                    y[b] += xa;
                }
            }
        }
    }

    /// Coordinate text export: header `dimension nnz`, then `row col 1`.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dimension(), self.nnz());
        for a in 0..self.dimension() {
            for &b in self.row(a) {
                writeln!(out, "{a} {b} 1").unwrap();
            }
        }
        out
    }
}

pub fn hashimoto(g: &Graph) -> HashimotoMatrix {
    HashimotoMatrix::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn brute_force_nnz(h: &HashimotoMatrix) -> usize {
        let arcs = h.arcs();
        let mut count = 0;
        for a in 0..arcs.len() {
            for b in 0..arcs.len() {
                let rule = arcs.arc(a).head == arcs.arc(b).tail && b != arcs.reverse(a);
                assert_eq!(h.get(a, b), rule, "a={a} b={b}");
                count += rule as usize;
            }
        }
        count
    }

    #[test]
    fn arc_counts_and_reverse() {
        for (fam, n_arcs) in [
            (Family::Tree { d: 2, depth: 1 }, 4),
            (Family::Cycle { n: 5 }, 10),
            (Family::Complete { n: 4 }, 12),
        ] {
            let g = generate(&fam).unwrap();
            let arcs = build_arcs(&g);
            assert_eq!(arcs.len(), n_arcs);
            for a in 0..arcs.len() {
                let r = arcs.reverse(a);
                assert_eq!(arcs.reverse(r), a);
                assert_eq!(arcs.arc(r).tail, arcs.arc(a).head);
                assert_eq!(arcs.arc(r).head, arcs.arc(a).tail);
            }
            assert!(arcs
                .arcs()
                .windows(2)
                .all(|w| (w[0].tail, w[0].head) < (w[1].tail, w[1].head)));
        }
    }

    #[test]
    fn path_has_two_entries() {
        let p3 = Graph::from_edges(0, &[(0, 1), (1, 2)]).unwrap();
        let h = hashimoto(&p3);
        assert_eq!(h.dimension(), 4);
        assert_eq!(brute_force_nnz(&h), 2);
        let a01 = h.arcs().find(0, 1).unwrap();
        let a12 = h.arcs().find(1, 2).unwrap();
        assert!(h.get(a01, a12));
        let a21 = h.arcs().find(2, 1).unwrap();
        let a10 = h.arcs().find(1, 0).unwrap();
        assert!(h.get(a21, a10));
    }

    #[test]
    fn star_and_cycle_structure() {
        let star = generate(&Family::Tree { d: 3, depth: 1 }).unwrap();
        assert_eq!(brute_force_nnz(&hashimoto(&star)), 6);

        let c6 = generate(&Family::Cycle { n: 6 }).unwrap();
        let h = hashimoto(&c6);
        assert_eq!(brute_force_nnz(&h), 12);
        for a in 0..h.dimension() {
            assert_eq!(h.row(a).len(), 1);
        }
        // permutation: every column hit exactly once
        let mut hits = vec![0; h.dimension()];
        h.row_offsets.windows(2).for_each(|w| {
            for &b in &h.cols[w[0]..w[1]] {
                hits[b] += 1;
            }
        });
        assert!(hits.iter().all(|&k| k == 1));
    }

    #[test]
    fn coordinate_export() {
        let p3 = Graph::from_edges(0, &[(0, 1), (1, 2)]).unwrap();
        // arcs: 0:(0,1) 1:(1,0) 2:(1,2) 3:(2,1)
        assert_eq!(hashimoto(&p3).to_coordinate_text(), "4 2\n0 2 1\n3 1 1\n");
    }
}
