//! Closed-form spectral data.
//!
//! * `Q` (any `p`, `r`): eigenvalues `λ^(μ) = a_0 + … + a_μ`, eigenvectors are
//!   tensor products of discrete characters.
//! * `(T·Q)^r`: one eigenvalue per zero-cluster class `(m; ν)` of the
//!   labelling word, read cyclically.
//! * `T·Q` for prime `r`: the `r`-th roots of the `(T·Q)^r` values.

mod line;
mod parisi;
mod partition;
mod rect;
mod word;

pub use line::{
    collapse_values, spectral_trace, total_multiplicity, LineLabel, LineRecord, SpectralLine, SpectrumReport,
};
pub use parisi::{character_vector, eigenvector_q, q_eigenvalues, spectrum_q, spectrum_q_qform, Eigenpair};
pub use partition::{enumerate_partitions, ClusterPartition};
pub use rect::{
    class_value, eigenbasis_qrect, eigenvector_qrect, is_prime, krylov_combination, orbit_representatives,
    power_eigenvalue, qrect_eigenvalue, spectrum_qrect, spectrum_qrect_power,
};
pub use word::{classify_word, EncodingSequence, WordClass};

/// All `p^r` eigenpairs of `Q`, one per word in basis order.
pub fn eigenbasis_q(params: &crate::HierParams) -> crate::Result<Vec<Eigenpair>> {
    EncodingSequence::all(params.p(), params.r())
        .map(|w| eigenvector_q(params, &w))
        .collect()
}
