//! Brute-force ground truth: dense rank and residual checks for every
//! closed-form spectral claim, and exact probability-vector evolution of the
//! error model.

mod evolution;
mod rank;
mod verify;

pub use evolution::{check_probability_weights, exact_moments, ExactEvolution, ExactMoments, NORMALIZATION_TOL};
pub use rank::{numeric_rank, rayleigh_quotient, relative_residual};
pub use verify::{verify_spectrum, Check, Status, VerificationReport, Which, COINCIDENCE_TOL, PIVOT_TOL, RESIDUAL_TOL};
