//! Spectral radii `rho(H_t)` along an increasing subgraph sequence.

use serde::Serialize;

use crate::graph::SubgraphSequence;
use crate::nonbacktracking::{spectral_radius, HashimotoMatrix, DEFAULT_TOL};

/// Slack allowed when checking `rho(H_t) <= rho(H_{t+1})`.
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoSequenceOptions {
    /// Plateau threshold on `|rho_t - rho_{t-1}|` over the last three steps.
    pub plateau_tol: f64,
    pub spectral_tol: f64,
    /// Stop before any truncation with more arcs than this.
    pub arc_budget: usize,
}

impl Default for RhoSequenceOptions {
    fn default() -> Self {
        Self {
            plateau_tol: 0.01,
            spectral_tol: DEFAULT_TOL,
            arc_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoRow {
    pub t: usize,
    pub vertices: usize,
    pub arcs: usize,
    pub d_max: usize,
    pub rho: f64,
    pub nilpotent: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoSequenceReport {
    pub rule: String,
    pub rows: Vec<RhoRow>,
    pub monotone: bool,
    pub rho_0_estimate: f64,
    /// Last three steps all moved by less than `plateau_tol`.
    pub converged: bool,
    pub plateau_tol: f64,
    /// `max_t d_max(G_t) - 1`.
    pub cap: f64,
    pub cap_holds: bool,
    /// Why the report stops before `t_max`, if it does.
    pub stopped_early: Option<String>,
}

impl RhoSequenceReport {
    pub fn rho_t(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.rho).collect()
    }
}

pub fn rho_sequence(seq: &SubgraphSequence, t_max: usize, opts: &RhoSequenceOptions) -> RhoSequenceReport {
    assert!(t_max >= 1, "t_max must be >= 1");
    let mut rows = Vec::new();
    let mut stopped_early = None;
    for &t in seq.radii().iter().filter(|&&t| t >= 1 && t <= t_max) {
        let ball = match seq.truncate(t) {
            Ok(b) => b,
            Err(e) => {
                stopped_early = Some(format!("t={t}: {e}"));
                break;
            }
        };
        let g = &ball.graph;
        let arcs = 2 * g.edge_count();
        if arcs > opts.arc_budget {
            stopped_early = Some(format!(
                "t={t}: {arcs} arcs exceed the budget of {}",
                opts.arc_budget
            ));
            break;
        }
        let h = HashimotoMatrix::new(g);
        let max_iter = (100 * arcs).max(1000);
        match spectral_radius(&h, opts.spectral_tol, max_iter) {
            Ok(r) => rows.push(RhoRow {
                t,
                vertices: g.vertex_count(),
                arcs,
                d_max: g.max_degree(),
                rho: r.rho,
                nilpotent: r.nilpotent,
                iterations: r.iterations,
            }),
            Err(e) => {
                stopped_early = Some(format!("t={t}: {e}"));
                break;
            }
        }
    }

    let rho: Vec<f64> = rows.iter().map(|r| r.rho).collect();
    let monotone = rho.windows(2).all(|w| w[1] >= w[0] - MONOTONE_SLACK);
    let converged = rho.len() >= 4
        && rho[rho.len() - 4..]
            .windows(2)
            .all(|w| (w[1] - w[0]).abs() < opts.plateau_tol);
    let rho_0_estimate = rho.last().copied().unwrap_or(0.0);
    let cap = rows.iter().map(|r| r.d_max).max().unwrap_or(0).saturating_sub(1) as f64;
    RhoSequenceReport {
        rule: seq.name(),
        rows,
        monotone,
        rho_0_estimate,
        converged,
        plateau_tol: opts.plateau_tol,
        cap,
        cap_holds: rho.iter().all(|&r| r <= cap + MONOTONE_SLACK),
        stopped_early,
    }
}
