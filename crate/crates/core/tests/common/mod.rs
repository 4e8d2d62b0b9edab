#![allow(dead_code)]

use nbperc_core::graph::Graph;
use proptest::prelude::*;

/// Simple graphs on `min_n..=max_n` vertices, each pair present with
/// probability one half.
pub fn small_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|u| (0..n).map(move |v| (u, m + v))).collect();
    Graph::from_edges(m + n, &edges).unwrap()
}
