//! Monte Carlo estimators for connectivity, susceptibility and the
//! boundary-reach proxy.
//!
//! Trials are split into fixed-size chunks that run in parallel. Every
//! accumulator is an integer count or sum, so the merged result does not
//! depend on scheduling or thread count.

use rayon::prelude::*;
use serde::Serialize;

use super::clusters::{fill_open, Labeler, CLOSED};
use super::rng::trial_seed;
use super::stats::{normal_mean, wilson};
use crate::graph::{Graph, GraphError, SubgraphSequence};

const CHUNK: u64 = 512;

/// Above this many vertices, pair tables are accumulated pair by pair
/// instead of in a dense `n x n` count matrix.
const DENSE_PAIR_LIMIT: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub master_seed: u64,
    /// Central confidence level of the reported interval.
    pub confidence: f64,
}

impl MonteCarlo {
    pub fn new(trials: u64, master_seed: u64) -> Self {
        assert!(trials >= 1, "need at least one trial");
        Self {
            trials,
            master_seed,
            confidence: 0.95,
        }
    }

    pub fn with_confidence(mut self, confidence: f64) -> Self {
        self.confidence = confidence;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    Tau { u: usize, v: usize },
    Chi { v: usize },
    ThetaProxy { root: usize, t: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercolationEstimate {
    pub quantity: Quantity,
    pub p: f64,
    pub trials: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub master_seed: u64,
}

impl PercolationEstimate {
    pub fn covers(&self, value: f64) -> bool {
        self.ci_low <= value && value <= self.ci_high
    }
}

/// Runs `mc.trials` labelled configurations through `observe`.
fn run_trials<A, I, O, M>(g: &Graph, p: f64, mc: &MonteCarlo, init: I, observe: O, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    O: Fn(&mut A, &Labeler) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1], got {p}");
    assert!(mc.trials >= 1, "need at least one trial");
    let n = g.vertex_count();
    let chunks = mc.trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let mut labeler = Labeler::default();
            let mut open = Vec::with_capacity(n);
            let end = ((c + 1) * CHUNK).min(mc.trials);
            for trial in c * CHUNK..end {
                fill_open(&mut open, n, p, trial_seed(mc.master_seed, trial));
                labeler.label(g, &open);
                observe(&mut acc, &labeler);
            }
            acc
        })
        .reduce(&init, &merge)
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    sum: u64,
    sum_sq: u64,
}

impl Tally {
    fn add(&mut self, x: u64) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(self, o: Self) -> Self {
        Self {
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
        }
    }
}

fn same_cluster(l: &Labeler, u: usize, v: usize) -> bool {
    l.component[u] != CLOSED && l.component[u] == l.component[v]
}

/// Estimates several tau/chi quantities from one shared set of trials.
pub fn estimate_many(
    g: &Graph,
    p: f64,
    quantities: &[Quantity],
    mc: &MonteCarlo,
) -> Result<Vec<PercolationEstimate>, GraphError> {
    for q in quantities {
        match *q {
            Quantity::Tau { u, v } => {
                g.check_vertex(u)?;
                g.check_vertex(v)?;
            }
            Quantity::Chi { v } => g.check_vertex(v)?,
            Quantity::ThetaProxy { .. } => {
                panic!("theta proxy needs a subgraph sequence; use estimate_theta_proxy")
            }
        }
    }
    let k = quantities.len();
    let tallies = run_trials(
        g,
        p,
        mc,
        || vec![Tally::default(); k],
        |acc, l| {
            for (t, q) in acc.iter_mut().zip(quantities) {
                match *q {
                    Quantity::Tau { u, v } => t.add(same_cluster(l, u, v) as u64),
                    Quantity::Chi { v } => {
                        let c = l.component[v];
                        t.add(if c == CLOSED { 0 } else { l.sizes[c as usize] as u64 });
                    }
                    Quantity::ThetaProxy { .. } => unreachable!(),
                }
            }
        },
        |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
    );
    Ok(quantities
        .iter()
        .zip(tallies)
        .map(|(q, t)| {
            let (point, lo, hi) = match q {
                Quantity::Chi { .. } => {
                    normal_mean(t.sum as f64, t.sum_sq as f64, mc.trials, mc.confidence)
                }
                _ => wilson(t.sum, mc.trials, mc.confidence),
            };
            make_estimate(q.clone(), p, mc, point, lo, hi)
        })
        .collect())
}

fn make_estimate(quantity: Quantity, p: f64, mc: &MonteCarlo, point: f64, lo: f64, hi: f64) -> PercolationEstimate {
    PercolationEstimate {
        quantity,
        p,
        trials: mc.trials,
        point,
        ci_low: lo,
        ci_high: hi,
        confidence: mc.confidence,
        master_seed: mc.master_seed,
    }
}

/// `P(u and v are open and in the same cluster)`; for `u == v` this is
/// `P(v open)`. Wilson interval.
pub fn estimate_tau(
    g: &Graph,
    p: f64,
    u: usize,
    v: usize,
    mc: &MonteCarlo,
) -> Result<PercolationEstimate, GraphError> {
    Ok(estimate_many(g, p, &[Quantity::Tau { u, v }], mc)?.remove(0))
}

/// Mean of `|C(v)|` with `|C(v)| = 0` for closed `v`. Normal interval.
pub fn estimate_chi(
    g: &Graph,
    p: f64,
    v: usize,
    mc: &MonteCarlo,
) -> Result<PercolationEstimate, GraphError> {
    Ok(estimate_many(g, p, &[Quantity::Chi { v }], mc)?.remove(0))
}

/// Fraction of trials in which the cluster of `root` in `G_t` contains a
/// vertex at distance exactly `t` from `root`.
pub fn estimate_theta_proxy(
    seq: &SubgraphSequence,
    t: usize,
    p: f64,
    root: usize,
    mc: &MonteCarlo,
) -> Result<PercolationEstimate, GraphError> {
    let ball = seq.truncate(t)?;
    let g = &ball.graph;
    g.check_vertex(root)?;
    let targets: Vec<usize> = g
        .distances_from(root)
        .iter()
        .enumerate()
        .filter(|(_, d)| **d == Some(t))
        .map(|(v, _)| v)
        .collect();
    let hits = run_trials(
        g,
        p,
        mc,
        || 0u64,
        |acc, l| {
            let c = l.component[root];
            if c != CLOSED && targets.iter().any(|&b| l.component[b] == c) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    let (point, lo, hi) = wilson(hits, mc.trials, mc.confidence);
    Ok(make_estimate(Quantity::ThetaProxy { root, t }, p, mc, point, lo, hi))
}

/// Connectivity estimates for many pairs from one shared set of trials.
pub fn estimate_tau_pairs(
    g: &Graph,
    p: f64,
    pairs: &[(usize, usize)],
    mc: &MonteCarlo,
) -> Result<Vec<PercolationEstimate>, GraphError> {
    for &(u, v) in pairs {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
    }
    let n = g.vertex_count();
    let mut counts: Vec<Option<u64>> = vec![None; pairs.len()];
    if n <= DENSE_PAIR_LIMIT && pairs.len() >= n {
        let dense = run_trials(
            g,
            p,
            mc,
            || vec![0u32; n * n],
            |acc, l| count_cluster_pairs(acc, n, l),
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
        for (c, &(u, v)) in counts.iter_mut().zip(pairs) {
            if u != v {
                *c = Some(dense[u.min(v) * n + u.max(v)] as u64);
            }
        }
    }
    // Diagonal pairs and the sparse path use direct per-pair checks.
    let direct: Vec<usize> = (0..pairs.len()).filter(|&i| counts[i].is_none()).collect();
    if !direct.is_empty() {
        let sub: Vec<(usize, usize)> = direct.iter().map(|&i| pairs[i]).collect();
        let k = sub.len();
        let hits = run_trials(
            g,
            p,
            mc,
            || vec![0u64; k],
            |acc, l| {
                for (h, &(u, v)) in acc.iter_mut().zip(&sub) {
                    *h += same_cluster(l, u, v) as u64;
                }
            },
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
        for (&i, h) in direct.iter().zip(hits) {
            counts[i] = Some(h);
        }
    }
    Ok(pairs
        .iter()
        .zip(counts)
        .map(|(&(u, v), c)| {
            let (point, lo, hi) = wilson(c.unwrap(), mc.trials, mc.confidence);
            make_estimate(Quantity::Tau { u, v }, p, mc, point, lo, hi)
        })
        .collect())
}

/// Adds one to `acc[i * n + j]` for every `i < j` sharing a cluster.
fn count_cluster_pairs(acc: &mut [u32], n: usize, l: &Labeler) {
    let mut start = Vec::with_capacity(l.sizes.len() + 1);
    let mut total = 0;
    for &s in &l.sizes {
        start.push(total);
        total += s;
    }
    let mut fill = start.clone();
    let mut members = vec![0usize; total];
    for (v, &c) in l.component.iter().enumerate() {
        if c != CLOSED {
            members[fill[c as usize]] = v;
            fill[c as usize] += 1;
        }
    }
    for (c, &s) in l.sizes.iter().enumerate() {
        if s < 2 {
            continue;
        }
        let group = &members[start[c]..start[c] + s];
        for (k, &i) in group.iter().enumerate() {
            let row = &mut acc[i * n..(i + 1) * n];
            for &j in &group[k + 1..] {
                row[j] += 1;
            }
        }
    }
}
