//! Matrix-free application of `S_γ`, `Q`, `T` and `T·Q`.
//!
//! With the basis index `j = Σ j_s p^{r-s}` (slot 1 most significant), the
//! trailing γ tensor slots are the γ least significant base-`p` digits, so
//! `S_γ` replaces every aligned block of `p^γ` entries by its mean.

use std::ops::{Add, Mul};

use num_traits::Zero;

use super::params::HierParams;
use crate::error::{Error, Result};

/// Scalars the structured products accept.
pub trait Scalar: Copy + Zero + Add<Output = Self> + Mul<f64, Output = Self> + Send + Sync {}

impl<T> Scalar for T where T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T> + Send + Sync {}

/// Which structured operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastKind {
    S(usize),
    Q,
    T,
    TInverse,
    Qrect,
}

/// Applies the selected operator to `v` in `O(p^r · r)` without building it.
pub fn apply_fast<T: Scalar>(params: &HierParams, kind: FastKind, v: &[T]) -> Result<Vec<T>> {
    let dim = params.dim();
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    match kind {
        FastKind::S(gamma) => {
            if gamma > params.r() {
                return Err(Error::InvalidParams(format!(
                    "gamma = {gamma} exceeds r = {}",
                    params.r()
                )));
            }
            Ok(apply_s(params.p(), gamma, v))
        }
        FastKind::Q => Ok(apply_q(params.p(), &params.a_coeffs()?, v)),
        FastKind::T => Ok(rotate(params.p(), v)),
        FastKind::TInverse => Ok(rotate_inverse(params.p(), v)),
        FastKind::Qrect => Ok(rotate(params.p(), &apply_q(params.p(), &params.a_coeffs()?, v))),
    }
}

pub(crate) fn apply_s<T: Scalar>(p: usize, gamma: usize, v: &[T]) -> Vec<T> {
    let block = p.pow(gamma as u32);
    let scale = 1.0 / block as f64;
    let mut out = Vec::with_capacity(v.len());
    for chunk in v.chunks(block) {
        let mean = chunk.iter().fold(T::zero(), |acc, &x| acc + x) * scale;
        out.extend(std::iter::repeat_n(mean, block));
    }
    out
}

/// `Σ_γ a_γ S_γ v`, building level-γ block means from level γ−1.
pub(crate) fn apply_q<T: Scalar>(p: usize, a: &[f64], v: &[T]) -> Vec<T> {
    let mut out: Vec<T> = v.iter().map(|&x| x * a[0]).collect();
    let mut means = v.to_vec();
    let inv_p = 1.0 / p as f64;
    let mut block = 1usize;
    for &ag in &a[1..] {
        means = means
            .chunks(p)
            .map(|c| c.iter().fold(T::zero(), |acc, &x| acc + x) * inv_p)
            .collect();
        block *= p;
        if ag != 0.0 {
            for (i, o) in out.iter_mut().enumerate() {
                *o = *o + means[i / block] * ag;
            }
        }
    }
    out
}

/// Image of basis index `idx` under the right rotation of its word.
#[inline]
pub(crate) fn rotated_index(p: usize, dim: usize, idx: usize) -> usize {
    (idx % p) * (dim / p) + idx / p
}

pub(crate) fn rotate<T: Scalar>(p: usize, v: &[T]) -> Vec<T> {
    let dim = v.len();
    let mut out = vec![T::zero(); dim];
    for (idx, &x) in v.iter().enumerate() {
        out[rotated_index(p, dim, idx)] = x;
    }
    out
}

pub(crate) fn rotate_inverse<T: Scalar>(p: usize, v: &[T]) -> Vec<T> {
    let dim = v.len();
    (0..dim).map(|idx| v[rotated_index(p, dim, idx)]).collect()
}
