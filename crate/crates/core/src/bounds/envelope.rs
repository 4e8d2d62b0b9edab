//! Explicit connectivity envelope for graphs whose oriented line graph is
//! strongly ℓ-connected:
//!
//! `tau(i, j) <= max(deg i, deg j) (1 + rho^ell) / (1 - lambda) lambda^d(i, j)`
//! with `lambda = p rho(H) < 1`.

use serde::Serialize;

use crate::graph::Graph;
use crate::nonbacktracking::{smallest_certifying_ell, HashimotoMatrix, SpectralError};
use crate::percolation::{estimate_tau_pairs, exact_tau_table, ExactError, MonteCarlo};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairBound {
    pub i: usize,
    pub j: usize,
    pub deg_i: usize,
    pub deg_j: usize,
    /// `None` for pairs in different components (bound 0).
    pub dist: Option<usize>,
    pub prefactor: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectivityEnvelope {
    pub p: f64,
    pub rho: f64,
    pub lambda: f64,
    pub ell: usize,
    /// `d_max / (1 - lambda)`: the smallest constant admitted for the generic
    /// exponential-decay statement. Diagnostic only; never used as a bound.
    pub c_min: f64,
    pub pairs: Vec<PairBound>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum FailedGate {
    /// No arc returns to its reverse within `ell_max`.
    NotStronglyConnected { ell_max: usize },
    LambdaNotBelowOne { lambda: f64, ell: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EnvelopeOutcome {
    Applicable(ConnectivityEnvelope),
    Inapplicable { rho: f64, p: f64, reason: FailedGate },
}

impl EnvelopeOutcome {
    pub fn applicable(&self) -> Option<&ConnectivityEnvelope> {
        match self {
            Self::Applicable(e) => Some(e),
            Self::Inapplicable { .. } => None,
        }
    }
}

/// Envelope prefactor `max(deg_i, deg_j) (1 + rho^ell) / (1 - lambda)`.
pub fn envelope_prefactor(deg_i: usize, deg_j: usize, rho: f64, ell: usize, lambda: f64) -> f64 {
    deg_i.max(deg_j) as f64 * (1.0 + rho.powi(ell as i32)) / (1.0 - lambda)
}

/// Certifies the smallest `ell <= ell_max` and, if `p rho(H) < 1`, tabulates
/// the bound for every pair `i < j`.
pub fn connectivity_envelope(g: &Graph, p: f64, ell_max: usize) -> Result<EnvelopeOutcome, SpectralError> {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1], got {p}");
    let h = HashimotoMatrix::new(g);
    let rho = h.spectral_radius()?.rho;
    let Some(ell) = smallest_certifying_ell(&h, ell_max) else {
        return Ok(EnvelopeOutcome::Inapplicable {
            rho,
            p,
            reason: FailedGate::NotStronglyConnected { ell_max },
        });
    };
    let lambda = p * rho;
    if lambda >= 1.0 {
        return Ok(EnvelopeOutcome::Inapplicable {
            rho,
            p,
            reason: FailedGate::LambdaNotBelowOne { lambda, ell },
        });
    }
    let dist = g.all_distances();
    let n = g.vertex_count();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (deg_i, deg_j) = (g.degree(i), g.degree(j));
            let prefactor = envelope_prefactor(deg_i, deg_j, rho, ell, lambda);
            let d = dist[i][j];
            let bound = d.map_or(0.0, |d| prefactor * lambda.powi(d as i32));
            pairs.push(PairBound {
                i,
                j,
                deg_i,
                deg_j,
                dist: d,
                prefactor,
                bound,
            });
        }
    }
    Ok(EnvelopeOutcome::Applicable(ConnectivityEnvelope {
        p,
        rho,
        lambda,
        ell,
        c_min: g.max_degree() as f64 / (1.0 - lambda),
        pairs,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub i: usize,
    pub j: usize,
    pub deg_i: usize,
    pub deg_j: usize,
    pub dist: Option<usize>,
    pub bound: f64,
    pub tau_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeVerification {
    pub p: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub confidence: f64,
    pub pairs_checked: usize,
    pub violations: usize,
    pub rows: Vec<VerifyRow>,
}

/// Monte Carlo check of an envelope. A pair violates the bound only when
/// the whole confidence interval lies above it (`ci_low > bound`). Beyond
/// `max_pairs`, an evenly spaced subset of pairs is checked.
pub fn verify_envelope(
    g: &Graph,
    envelope: &ConnectivityEnvelope,
    mc: &MonteCarlo,
    max_pairs: Option<usize>,
) -> EnvelopeVerification {
    let total = envelope.pairs.len();
    let chosen: Vec<&PairBound> = match max_pairs {
        Some(k) if k < total => (0..k).map(|s| &envelope.pairs[s * total / k]).collect(),
        _ => envelope.pairs.iter().collect(),
    };
    let pairs: Vec<(usize, usize)> = chosen.iter().map(|b| (b.i, b.j)).collect();
    let estimates =
        estimate_tau_pairs(g, envelope.p, &pairs, mc).expect("envelope pairs are valid vertices");
    let rows: Vec<VerifyRow> = chosen
        .iter()
        .zip(&estimates)
        .map(|(b, e)| VerifyRow {
            i: b.i,
            j: b.j,
            deg_i: b.deg_i,
            deg_j: b.deg_j,
            dist: b.dist,
            bound: b.bound,
            tau_hat: e.point,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            holds: e.ci_low <= b.bound,
        })
        .collect();
    EnvelopeVerification {
        p: envelope.p,
        trials: mc.trials,
        master_seed: mc.master_seed,
        confidence: mc.confidence,
        pairs_checked: rows.len(),
        violations: rows.iter().filter(|r| !r.holds).count(),
        rows,
    }
}

/// Pairs whose exact connectivity exceeds the envelope (small graphs only).
pub fn exact_envelope_violations(
    g: &Graph,
    envelope: &ConnectivityEnvelope,
) -> Result<Vec<(usize, usize, f64, f64)>, ExactError> {
    let table = exact_tau_table(g, envelope.p)?;
    Ok(envelope
        .pairs
        .iter()
        .filter(|b| table[b.i][b.j] > b.bound)
        .map(|b| (b.i, b.j, table[b.i][b.j], b.bound))
        .collect())
}
