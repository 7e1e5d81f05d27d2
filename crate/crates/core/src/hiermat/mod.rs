//! Block-hierarchical operators `S_γ`, `Q`, the rotation `T` and the
//! block-rectangular product `T·Q`, both as dense matrices and as
//! structured matrix-vector products.

mod dense;
mod fast;
mod params;

pub use dense::{build_q, build_qrect, build_s, build_t, DenseOperator, OperatorKind};
pub use fast::{apply_fast, FastKind, Scalar};
pub use params::{convert_coeffs, CoeffForm, HierParams, DEFAULT_DENSE_CAP};

pub(crate) use fast::{apply_q, rotate};
