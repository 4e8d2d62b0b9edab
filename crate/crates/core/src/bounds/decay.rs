//! Least-squares fit of `ln tau_hat` against graph distance.
//!
//! This is evidence of exponential falloff, not a certified bound.

use serde::Serialize;

use crate::graph::Graph;
use crate::nonbacktracking::{HashimotoMatrix, SpectralError};
use crate::percolation::{estimate_tau_pairs, MonteCarlo};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceRow {
    pub dist: usize,
    pub pairs: usize,
    pub pairs_positive: usize,
    pub mean_tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "fit", rename_all = "snake_case")]
pub enum DecayFit {
    Defined {
        slope: f64,
        intercept: f64,
        /// `exp(slope)`, comparable with `lambda`.
        base: f64,
        pairs_used: usize,
    },
    Undefined {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayDiagnostic {
    pub p: f64,
    pub rho: f64,
    pub lambda: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub fit: DecayFit,
    pub by_distance: Vec<DistanceRow>,
}

/// Ordinary least squares `y = intercept + slope x`; `None` if `x` is constant.
fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Estimates `tau` for connected pairs `i < j` (an evenly spaced subset
/// beyond `max_pairs`) and fits `ln tau_hat = intercept + slope d` over
/// pairs with `tau_hat > 0`.
pub fn decay_diagnostic(
    g: &Graph,
    p: f64,
    mc: &MonteCarlo,
    max_pairs: Option<usize>,
) -> Result<DecayDiagnostic, SpectralError> {
    let rho = HashimotoMatrix::new(g).spectral_radius()?.rho;
    let dist = g.all_distances();
    let n = g.vertex_count();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(d) = dist[i][j] {
                pairs.push((i, j, d));
            }
        }
    }
    if let Some(k) = max_pairs.filter(|&k| k < pairs.len()) {
        let total = pairs.len();
        pairs = (0..k).map(|s| pairs[s * total / k]).collect();
    }
    let ij: Vec<(usize, usize)> = pairs.iter().map(|&(i, j, _)| (i, j)).collect();
    let est = estimate_tau_pairs(g, p, &ij, mc).expect("pairs are valid vertices");

    let max_d = pairs.iter().map(|x| x.2).max().unwrap_or(0);
    let mut by_distance: Vec<DistanceRow> = (0..=max_d)
        .map(|dist| DistanceRow {
            dist,
            pairs: 0,
            pairs_positive: 0,
            mean_tau: 0.0,
        })
        .collect();
    let mut points = Vec::new();
    for (&(_, _, d), e) in pairs.iter().zip(&est) {
        let row = &mut by_distance[d];
        row.pairs += 1;
        row.mean_tau += e.point;
        if e.point > 0.0 {
            row.pairs_positive += 1;
            points.push((d as f64, e.point.ln()));
        }
    }
    by_distance.retain(|r| r.pairs > 0);
    for r in &mut by_distance {
        r.mean_tau /= r.pairs as f64;
    }

    let fit = if points.is_empty() {
        DecayFit::Undefined {
            reason: "no pair was ever connected".into(),
        }
    } else {
        match least_squares(&points) {
            Some((slope, intercept)) => DecayFit::Defined {
                slope,
                intercept,
                base: slope.exp(),
                pairs_used: points.len(),
            },
            None => DecayFit::Undefined {
                reason: "connected pairs span a single distance".into(),
            },
        }
    };
    Ok(DecayDiagnostic {
        p,
        rho,
        lambda: p * rho,
        trials: mc.trials,
        master_seed: mc.master_seed,
        fit,
        by_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn ols() {
        let pts = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)];
        assert_eq!(least_squares(&pts), Some((2.0, 1.0)));
        assert_eq!(least_squares(&[(1.0, 0.0), (1.0, 2.0)]), None);
    }

    #[test]
    fn fully_open_has_zero_slope() {
        let g = generate(&Family::Cycle { n: 10 }).unwrap();
        let d = decay_diagnostic(&g, 1.0, &MonteCarlo::new(50, 0), None).unwrap();
        match d.fit {
            DecayFit::Defined { slope, .. } => assert!(slope.abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closed_graph_fit_undefined() {
        let g = generate(&Family::Cycle { n: 10 }).unwrap();
        let d = decay_diagnostic(&g, 0.0, &MonteCarlo::new(50, 0), None).unwrap();
        assert!(matches!(d.fit, DecayFit::Undefined { .. }));
    }

    #[test]
    fn path_decays() {
        let edges: Vec<(usize, usize)> = (0..11).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(0, &edges).unwrap();
        let d = decay_diagnostic(&g, 0.7, &MonteCarlo::new(20_000, 4), None).unwrap();
        match d.fit {
            // tau = p^(d+1) on a path
            DecayFit::Defined { slope, base, .. } => {
                assert!(slope < 0.0);
                assert!((base - 0.7).abs() < 0.05, "{base}");
            }
            other => panic!("{other:?}"),
        }
    }
}
