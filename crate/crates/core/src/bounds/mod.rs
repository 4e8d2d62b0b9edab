//! Bounds computed from non-backtracking spectral data, and their
//! comparison against exact and Monte Carlo connectivity.

mod decay;
mod envelope;
mod sequence;
mod threshold;

pub use decay::{decay_diagnostic, DecayDiagnostic, DecayFit, DistanceRow};
pub use envelope::{
    connectivity_envelope, envelope_prefactor, exact_envelope_violations, verify_envelope,
    ConnectivityEnvelope, EnvelopeOutcome, EnvelopeVerification, FailedGate, PairBound, VerifyRow,
};
pub use sequence::{rho_sequence, RhoRow, RhoSequenceOptions, RhoSequenceReport, MONOTONE_SLACK};
pub use threshold::{threshold_bounds, threshold_bounds_sequence, GrowthSummary, ThresholdBounds};
