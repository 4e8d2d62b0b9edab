//! Lower bounds on the susceptibility, percolation and uniqueness
//! thresholds: `p_T >= 1/limsup-growth`, `p_c >= 1/growth`, `p_u >= 1/rho_0`.

use serde::Serialize;

use super::sequence::{rho_sequence, RhoSequenceOptions, RhoSequenceReport};
use crate::ext::ExtendedReal;
use crate::graph::{Graph, GraphError, SubgraphSequence};
use crate::nonbacktracking::{
    growth_for_graph, growth_from_seeds, GraphGrowth, GrowthOptions, HashimotoMatrix, PNorm,
    SpectralError,
};

/// Relative slack for the bound-ordering audit.
const ORDER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthSummary {
    pub m_max: usize,
    pub window: usize,
    pub seeds: usize,
    pub sup_liminf: f64,
    pub sup_limsup: f64,
}

impl From<&GraphGrowth> for GrowthSummary {
    fn from(g: &GraphGrowth) -> Self {
        Self {
            m_max: g.m_max,
            window: g.window,
            seeds: g.per_seed.len(),
            sup_liminf: g.sup_liminf,
            sup_limsup: g.sup_limsup,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdBounds {
    pub p_t_lower: ExtendedReal,
    pub p_c_lower: ExtendedReal,
    pub p_u_lower: ExtendedReal,
    /// 1-norm growth used for `p_T` and `p_c`.
    pub growth: GrowthSummary,
    pub rho_0: f64,
    /// Present when `rho_0` comes from a subgraph sequence.
    pub rho_sequence: Option<RhoSequenceReport>,
    /// Failed checks of `p_T <= p_c <= p_u`; reported, never clipped.
    pub ordering_violations: Vec<String>,
}

impl ThresholdBounds {
    fn assemble(growth: GrowthSummary, rho_0: f64, rho_sequence: Option<RhoSequenceReport>) -> Self {
        let p_t_lower = ExtendedReal::reciprocal(growth.sup_limsup);
        let p_c_lower = ExtendedReal::reciprocal(growth.sup_liminf);
        let p_u_lower = ExtendedReal::reciprocal(rho_0);
        let mut ordering_violations = Vec::new();
        let le = |a: ExtendedReal, b: ExtendedReal| {
            b.is_infinite() || a.value() <= b.value() * (1.0 + ORDER_SLACK)
        };
        if !le(p_t_lower, p_c_lower) {
            ordering_violations.push(format!("p_T lower {p_t_lower} > p_c lower {p_c_lower}"));
        }
        if !le(p_c_lower, p_u_lower) {
            ordering_violations.push(format!("p_c lower {p_c_lower} > p_u lower {p_u_lower}"));
        }
        Self {
            p_t_lower,
            p_c_lower,
            p_u_lower,
            growth,
            rho_0,
            rho_sequence,
            ordering_violations,
        }
    }

    pub fn no_uniqueness_phase(&self) -> bool {
        self.p_u_lower.is_infinite()
    }
}

/// Bounds for a finite graph: growth over every seed arc, and `rho_0 =
/// rho(H)` (the graph as its own constant sequence).
pub fn threshold_bounds(g: &Graph, m_max: usize, window: Option<usize>) -> Result<ThresholdBounds, SpectralError> {
    let mut opts = GrowthOptions::new(PNorm::L1, m_max);
    opts.window = window;
    let growth = growth_for_graph(g, &opts);
    let rho = HashimotoMatrix::new(g).spectral_radius()?.rho;
    Ok(ThresholdBounds::assemble((&growth).into(), rho, None))
}

/// Bounds for the limit of a subgraph sequence.
///
/// Growth is measured on `G_{t_max}` from the arcs leaving the root, for
/// walk lengths `m <= min(m_max, t_max - 1)`: such walks never reach the
/// truncation boundary, so their counts equal those on the limiting graph.
/// `rho_0` is the last value of [`rho_sequence`].
pub fn threshold_bounds_sequence(
    seq: &SubgraphSequence,
    t_max: usize,
    m_max: usize,
    window: Option<usize>,
    rho_opts: &RhoSequenceOptions,
) -> Result<ThresholdBounds, GraphError> {
    if t_max < 2 {
        return Err(GraphError::InfeasibleParameters(format!(
            "sequence bounds need t_max >= 2, got {t_max}"
        )));
    }
    let ball = seq.truncate(t_max)?;
    let h = HashimotoMatrix::new(&ball.graph);
    let seeds: Vec<usize> = h.arcs().out_arcs(0).collect();
    let mut opts = GrowthOptions::new(PNorm::L1, m_max.min(t_max - 1).max(1));
    opts.window = window;
    let growth = growth_from_seeds(&h, &seeds, &opts);
    let report = rho_sequence(seq, t_max, rho_opts);
    Ok(ThresholdBounds::assemble(
        (&growth).into(),
        report.rho_0_estimate,
        Some(report),
    ))
}
