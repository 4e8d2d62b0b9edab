use serde::Serialize;
use thiserror::Error;

use super::HashimotoMatrix;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub iterations: usize,
    pub residual: f64,
    pub nilpotent: bool,
    pub perron_vector: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "power iteration did not converge in {iterations} iterations \
         (last estimates {previous_estimate}, {last_estimate}; residual {residual})"
    )]
    NotConverged {
        iterations: usize,
        previous_estimate: f64,
        last_estimate: f64,
        residual: f64,
    },
}

/// `true` when some power of `h` vanishes.
///
/// The support of `H^k 1` is the set of arcs that start a walk of length
/// `k`. Entries are exact walk counts, so the iterate is zero iff its support
/// is empty; supports shrink monotonically, and a nonempty fixed point means
/// `H` is not nilpotent.
fn is_nilpotent(h: &HashimotoMatrix) -> bool {
    let n = h.dimension();
    let mut alive = vec![true; n];
    let mut count = n;
    for _ in 0..=n {
        if count == 0 {
            return true;
        }
        let next: Vec<bool> = (0..n).map(|a| h.row(a).iter().any(|&b| alive[b])).collect();
        let next_count = next.iter().filter(|&&x| x).count();
        if next_count == count {
            return false;
        }
        alive = next;
        count = next_count;
    }
    count == 0
}

/// Perron root of the Hashimoto matrix by power iteration from the all-ones
/// vector.
///
/// Iterates with `H + I`, which has the same Perron vector but no other
/// eigenvalue on its spectral circle, so bipartite (periodic) line graphs
/// still converge. Stops once `|Hx - rho x|_1 / |x|_1 <= tol`.
pub fn spectral_radius(
    h: &HashimotoMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidParameters(format!("tol must be > 0, got {tol}")));
    }
    if max_iter == 0 {
        return Err(SpectralError::InvalidParameters("max_iter must be >= 1".into()));
    }
    if is_nilpotent(h) {
        return Ok(SpectralResult {
            rho: 0.0,
            iterations: 0,
            residual: 0.0,
            nilpotent: true,
            perron_vector: None,
        });
    }

    let n = h.dimension();
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut previous = f64::NAN;
    let mut rho = f64::NAN;
    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        h.apply(&x, &mut y);
        previous = rho;
        // x is non-negative with unit 1-norm
        rho = y.iter().sum::<f64>();
        residual = y.iter().zip(&x).map(|(yi, xi)| (yi - rho * xi).abs()).sum();
        if residual <= tol {
            return Ok(SpectralResult {
                rho,
                iterations: iter,
                residual,
                nilpotent: false,
                perron_vector: Some(x),
            });
        }
        let scale = rho + 1.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (*xi + yi) / scale;
        }
    }
    Err(SpectralError::NotConverged {
        iterations: max_iter,
        previous_estimate: previous,
        last_estimate: rho,
        residual,
    })
}

impl HashimotoMatrix {
    /// Default budget of `100 |A|` iterations at tolerance 1e-10.
    pub fn spectral_radius(&self) -> Result<SpectralResult, SpectralError> {
        spectral_radius(self, DEFAULT_TOL, (100 * self.dimension()).max(1000))
    }
}
