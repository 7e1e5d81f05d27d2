//! Spectra of block-hierarchical (Parisi) matrices and of their
//! block-rectangular relatives `T·Q`, together with a rotating-disc error
//! model whose evolution operator is exactly such a matrix.
//!
//! The crate is organised around four pieces:
//!
//! - [`hiermat`]: building `S_γ`, `Q`, `T`, `T·Q` densely or matrix-free,
//!   and converting between the four coefficient forms.
//! - [`spectra`]: closed-form eigenvalues, multiplicities and eigenvectors.
//! - [`oracle`]: brute-force dense checks and exact probability evolution.
//! - [`noise`]: Monte Carlo simulation, analytic and asymptotic moments,
//!   equilibration estimates and β-sweeps.
//!
//! ```
//! use ultraspec::{HierParams, spectra};
//!
//! let params = HierParams::from_a(2, 3, vec![0.4, 0.3, 0.2, 0.1]).unwrap();
//! let lines = spectra::spectrum_q(&params).unwrap();
//! let mults: Vec<u64> = lines.iter().map(|l| l.multiplicity).collect();
//! assert_eq!(mults, vec![1, 1, 2, 4]);
//! ```

pub mod cli;
pub mod error;
pub mod hiermat;
pub mod noise;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use hiermat::{CoeffForm, DenseOperator, HierParams};
