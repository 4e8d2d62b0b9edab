//! Exact percolation quantities by summing over all `2^n` open sets.
//!
//! Clusters are found by bitmask flood fill, independently of the union-find
//! path used by the Monte Carlo estimators.

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_EXACT_VERTICES: usize = 22;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("exact enumeration limited to {budget} vertices, graph has {vertices}")]
    TooLarge { vertices: usize, budget: usize },
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
}

struct Enumerator {
    n: usize,
    adj: Vec<u32>,
    /// `weight[k] = p^k (1-p)^(n-k)`
    weight: Vec<f64>,
}

impl Enumerator {
    fn new(g: &Graph, p: f64) -> Result<Self, ExactError> {
        let n = g.vertex_count();
        if n > MAX_EXACT_VERTICES {
            return Err(ExactError::TooLarge {
                vertices: n,
                budget: MAX_EXACT_VERTICES,
            });
        }
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
            .collect();
        let weight = (0..=n)
            .map(|k| p.powi(k as i32) * (1.0 - p).powi((n - k) as i32))
            .collect();
        Ok(Self { n, adj, weight })
    }

    fn check(&self, v: usize) -> Result<(), ExactError> {
        if v < self.n {
            Ok(())
        } else {
            Err(ExactError::InvalidVertex(v))
        }
    }

    /// Open vertices reachable from `v` within `mask` (`v` must be in `mask`).
    fn cluster(&self, mask: u32, v: usize) -> u32 {
        let mut reached = 1u32 << v;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[w];
            }
            next &= mask & !reached;
            reached |= next;
            frontier = next;
        }
        reached
    }

    fn sum<F: FnMut(u32) -> f64>(&self, mut f: F) -> f64 {
        (0..1u32 << self.n)
            .map(|mask| {
                let x = f(mask);
                if x == 0.0 {
                    0.0
                } else {
                    x * self.weight[mask.count_ones() as usize]
                }
            })
            .sum()
    }
}

/// Exact `tau(u, v)`; `tau(v, v) = p`.
pub fn exact_tau(g: &Graph, p: f64, u: usize, v: usize) -> Result<f64, ExactError> {
    let e = Enumerator::new(g, p)?;
    e.check(u)?;
    e.check(v)?;
    Ok(e.sum(|mask| {
        let both = (1 << u) | (1 << v);
        (mask & both == both && e.cluster(mask, u) & (1 << v) != 0) as u32 as f64
    }))
}

/// Exact `chi(v) = E|C(v)|`.
pub fn exact_chi(g: &Graph, p: f64, v: usize) -> Result<f64, ExactError> {
    let e = Enumerator::new(g, p)?;
    e.check(v)?;
    Ok(e.sum(|mask| {
        if mask & (1 << v) == 0 {
            0.0
        } else {
            e.cluster(mask, v).count_ones() as f64
        }
    }))
}

/// Full symmetric table `tau[u][v]`, diagonal `p`.
pub fn exact_tau_table(g: &Graph, p: f64) -> Result<Vec<Vec<f64>>, ExactError> {
    let e = Enumerator::new(g, p)?;
    let n = e.n;
    let mut table = vec![vec![0.0; n]; n];
    for mask in 0..1u32 << n {
        let w = e.weight[mask.count_ones() as usize];
        let mut left = mask;
        while left != 0 {
            let u = left.trailing_zeros() as usize;
            let c = e.cluster(mask, u);
            left &= !c;
            let mut a = c;
            while a != 0 {
                let i = a.trailing_zeros() as usize;
                a &= a - 1;
                let mut b = c;
                while b != 0 {
                    let j = b.trailing_zeros() as usize;
                    b &= b - 1;
                    table[i][j] += w;
                }
            }
        }
    }
    Ok(table)
}

/// Exact probability that the cluster of `root` contains a vertex of `targets`.
pub fn exact_reach(g: &Graph, p: f64, root: usize, targets: &[usize]) -> Result<f64, ExactError> {
    let e = Enumerator::new(g, p)?;
    e.check(root)?;
    let mut tmask = 0u32;
    for &t in targets {
        e.check(t)?;
        tmask |= 1 << t;
    }
    Ok(e.sum(|mask| {
        (mask & (1 << root) != 0 && e.cluster(mask, root) & tmask != 0) as u32 as f64
    }))
}
