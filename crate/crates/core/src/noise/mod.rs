//! The rotating-disc error model: an `r`-cell disc turns one cell per step,
//! and at each step a block of `γ` cells in a fixed zone is resampled with
//! probability `a_γ`. Its one-step evolution operator is `T·Q`.

mod equilibration;
mod model;
mod moments;
mod sim;
mod sweep;

pub use equilibration::{equilibration_report, EquilibrationReport, BOUND_SLACK};
pub use model::{DiscState, NoiseModel};
pub use moments::{
    analytic_moments, asymptotic_moments, boltzmann_limits, MomentReport, MomentSource, MAX_SERIES_TERMS,
};
pub use sim::{simulate_full_cycle, simulate_histogram, Frame};
pub use sweep::{beta_sweep, write_sweep_csv, BetaGrid, Spacing, SweepOptions, SweepRow, CSV_HEADER};
