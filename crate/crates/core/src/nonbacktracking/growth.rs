//! Seeded walk norms `|e_a^T H^m|_p` and the growth rates built from them.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::HashimotoMatrix;
use crate::graph::Graph;

const RESCALE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    L1,
    L2,
}

impl PNorm {
    pub fn from_index(p: u8) -> Option<Self> {
        match p {
            1 => Some(Self::L1),
            2 => Some(Self::L2),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::L1 => 1,
            Self::L2 => 2,
        }
    }

    fn norm(self, v: &[f64]) -> f64 {
        match self {
            Self::L1 => v.iter().sum(),
            Self::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }
}

impl Serialize for PNorm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub p_norm: PNorm,
    /// Set for arc-seeded runs.
    pub seed_arc: Option<usize>,
    /// Set for vertex-seeded runs (all out-arcs of the vertex).
    pub seed_vertex: Option<usize>,
    /// `lambda_sequence[m - 1] = |e^T H^m|_p^(1/m)`.
    pub lambda_sequence: Vec<f64>,
    pub liminf_estimate: f64,
    pub limsup_estimate: f64,
    pub window: usize,
    /// First `m` at which the walk vector vanished.
    pub extinct_at: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthOptions {
    pub p_norm: PNorm,
    pub m_max: usize,
    /// Trailing window for liminf/limsup; `None` means `ceil(m_max / 4)`.
    pub window: Option<usize>,
    /// Evaluate at most this many evenly spaced seed arcs.
    pub max_seeds: Option<usize>,
}

impl GrowthOptions {
    pub fn new(p_norm: PNorm, m_max: usize) -> Self {
        Self {
            p_norm,
            m_max,
            window: None,
            max_seeds: None,
        }
    }

    pub fn resolved_window(&self) -> usize {
        self.window
            .unwrap_or_else(|| self.m_max.div_ceil(4))
            .clamp(1, self.m_max.max(1))
    }
}

fn run_walk(h: &HashimotoMatrix, mut v: Vec<f64>, opts: &GrowthOptions) -> (Vec<f64>, Option<usize>) {
    assert!(opts.m_max >= 1, "m_max must be >= 1");
    let mut next = vec![0.0; v.len()];
    let mut log_scale = 0.0;
    let mut lambdas = Vec::with_capacity(opts.m_max);
    let mut extinct_at = None;
    for m in 1..=opts.m_max {
        if extinct_at.is_some() {
            lambdas.push(0.0);
            continue;
        }
        h.apply_transpose(&v, &mut next);
        std::mem::swap(&mut v, &mut next);
        let norm = opts.p_norm.norm(&v);
        if norm == 0.0 {
            extinct_at = Some(m);
            lambdas.push(0.0);
            continue;
        }
        lambdas.push(((log_scale + norm.ln()) / m as f64).exp());
        if norm > RESCALE_ABOVE {
            v.iter_mut().for_each(|x| *x /= norm);
            log_scale += norm.ln();
        }
    }
    (lambdas, extinct_at)
}

fn estimate(
    lambdas: Vec<f64>,
    extinct_at: Option<usize>,
    opts: &GrowthOptions,
    seed_arc: Option<usize>,
    seed_vertex: Option<usize>,
) -> GrowthEstimate {
    let window = opts.resolved_window();
    let (liminf, limsup) = if extinct_at.is_some() {
        (0.0, 0.0)
    } else {
        let tail = &lambdas[lambdas.len() - window..];
        (
            tail.iter().copied().fold(f64::INFINITY, f64::min),
            tail.iter().copied().fold(0.0, f64::max),
        )
    };
    GrowthEstimate {
        p_norm: opts.p_norm,
        seed_arc,
        seed_vertex,
        lambda_sequence: lambdas,
        liminf_estimate: liminf,
        limsup_estimate: limsup,
        window,
        extinct_at,
    }
}

/// Growth of the row vector `e_a^T H^m` for `m = 1..=m_max`.
///
/// Walk counts are rescaled once they grow past 1e150; the accumulated
/// log-magnitude keeps `lambda_m` exact in floating point.
pub fn walk_norms(h: &HashimotoMatrix, seed_arc: usize, opts: &GrowthOptions) -> GrowthEstimate {
    assert!(seed_arc < h.dimension(), "seed arc {seed_arc} out of range");
    let mut v = vec![0.0; h.dimension()];
    v[seed_arc] = 1.0;
    let (lambdas, extinct) = run_walk(h, v, opts);
    estimate(lambdas, extinct, opts, Some(seed_arc), None)
}

/// Like [`walk_norms`] but seeded with the indicator of all arcs leaving `vertex`.
pub fn walk_norms_from_vertex(
    h: &HashimotoMatrix,
    vertex: usize,
    opts: &GrowthOptions,
) -> GrowthEstimate {
    let mut v = vec![0.0; h.dimension()];
    for a in h.arcs().out_arcs(vertex) {
        v[a] = 1.0;
    }
    let (lambdas, extinct) = if v.iter().all(|&x| x == 0.0) {
        (vec![0.0; opts.m_max], Some(1))
    } else {
        run_walk(h, v, opts)
    };
    estimate(lambdas, extinct, opts, None, Some(vertex))
}

/// Per-seed estimates plus their suprema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphGrowth {
    pub p_norm: PNorm,
    pub m_max: usize,
    pub window: usize,
    /// Estimate of `gr_p`.
    pub sup_liminf: f64,
    /// Estimate of the limsup growth.
    pub sup_limsup: f64,
    pub per_seed: Vec<GrowthEstimate>,
}

pub fn growth_from_seeds(h: &HashimotoMatrix, seeds: &[usize], opts: &GrowthOptions) -> GraphGrowth {
    let per_seed: Vec<GrowthEstimate> = seeds
        .par_iter()
        .map(|&a| walk_norms(h, a, opts))
        .collect();
    let sup_liminf = per_seed.iter().map(|e| e.liminf_estimate).fold(0.0, f64::max);
    let sup_limsup = per_seed.iter().map(|e| e.limsup_estimate).fold(0.0, f64::max);
    GraphGrowth {
        p_norm: opts.p_norm,
        m_max: opts.m_max,
        window: opts.resolved_window(),
        sup_liminf,
        sup_limsup,
        per_seed,
    }
}

/// Runs [`walk_norms`] from every arc (or `max_seeds` evenly spaced arcs).
pub fn growth_for_graph(g: &Graph, opts: &GrowthOptions) -> GraphGrowth {
    let h = HashimotoMatrix::new(g);
    let n = h.dimension();
    let seeds: Vec<usize> = match opts.max_seeds {
        Some(k) if k < n => (0..k).map(|i| i * n / k).collect(),
        _ => (0..n).collect(),
    };
    growth_from_seeds(&h, &seeds, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::nonbacktracking::hashimoto;

    #[test]
    fn cycle_walks_stay_unit() {
        let h = hashimoto(&generate(&Family::Cycle { n: 6 }).unwrap());
        let e = walk_norms(&h, 0, &GrowthOptions::new(PNorm::L1, 40));
        assert!(e.lambda_sequence.iter().all(|&l| l == 1.0));
        assert_eq!((e.liminf_estimate, e.limsup_estimate), (1.0, 1.0));
        assert_eq!(e.window, 10);
    }

    #[test]
    fn tree_walks_die_out() {
        let g = generate(&Family::Tree { d: 3, depth: 4 }).unwrap();
        let h = hashimoto(&g);
        // root out-arc 0 -> 1 has 3 more generations below its head
        let a = h.arcs().find(0, 1).unwrap();
        let e = walk_norms(&h, a, &GrowthOptions::new(PNorm::L1, 20));
        assert_eq!(e.extinct_at, Some(4));
        assert!(e.lambda_sequence[..3].iter().all(|l| (l - 2.0).abs() < 1e-12));
        assert_eq!((e.liminf_estimate, e.limsup_estimate), (0.0, 0.0));

        let all = growth_for_graph(&g, &GrowthOptions::new(PNorm::L2, 20));
        assert_eq!((all.sup_liminf, all.sup_limsup), (0.0, 0.0));
    }

    #[test]
    fn rescaling_keeps_lambda() {
        // 4-regular: |e^T H^m|_1 = 3^m overflows f64 near m = 647
        let h = hashimoto(&generate(&Family::Complete { n: 5 }).unwrap());
        let e = walk_norms(&h, 0, &GrowthOptions::new(PNorm::L1, 1000));
        for &l in &e.lambda_sequence {
            assert!((l - 3.0).abs() < 1e-9, "{l}");
        }
    }

    #[test]
    fn petersen_l1_is_exact() {
        let h = hashimoto(&generate(&Family::Petersen).unwrap());
        let e = walk_norms(&h, 5, &GrowthOptions::new(PNorm::L1, 200));
        assert!((e.lambda_sequence[199] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn vertex_seed() {
        let g = generate(&Family::Petersen).unwrap();
        let h = hashimoto(&g);
        let e = walk_norms_from_vertex(&h, 0, &GrowthOptions::new(PNorm::L1, 10));
        // 3 * 2^m walks
        assert!((e.lambda_sequence[0] - 6.0).abs() < 1e-12);
        assert_eq!(e.seed_vertex, Some(0));
    }

    #[test]
    fn seed_sampling() {
        let g = generate(&Family::Complete { n: 6 }).unwrap();
        let mut opts = GrowthOptions::new(PNorm::L1, 8);
        opts.max_seeds = Some(7);
        let r = growth_for_graph(&g, &opts);
        assert_eq!(r.per_seed.len(), 7);
        assert!((r.sup_limsup - 4.0).abs() < 1e-12);
    }
}
