use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hiermat::HierParams;
use crate::oracle::check_probability_weights;
use crate::spectra::EncodingSequence;

/// Content of the disc: `r` cells holding symbols in `{0, …, p−1}`.
pub type DiscState = EncodingSequence;

/// Noise acting on the disc: at every step `γ` consecutive cells of the
/// error zone are resampled with probability `a_γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    p: usize,
    r: usize,
    weights: Vec<f64>,
    beta: Option<f64>,
}

impl NoiseModel {
    pub fn new(p: usize, r: usize, weights: Vec<f64>) -> Result<Self> {
        // validates p, r and the weight count
        HierParams::from_a(p, r, weights.clone())?;
        check_probability_weights(&weights)?;
        Ok(Self {
            p,
            r,
            weights,
            beta: None,
        })
    }

    /// `a_γ ∝ e^{−βγ}`, normalized so that the weights sum to one.
    pub fn boltzmann(p: usize, r: usize, beta: f64) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::InvalidParams(format!("beta must be positive, got {beta}")));
        }
        let raw: Vec<f64> = (0..=r).map(|g| (-beta * g as f64).exp()).collect();
        let z: f64 = raw.iter().sum();
        let weights = raw.into_iter().map(|x| x / z).collect();
        let mut model = Self::new(p, r, weights)?;
        model.beta = Some(beta);
        Ok(model)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Inverse temperature, when built by [`NoiseModel::boltzmann`].
    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    /// The evolution operator's coefficients, `a` form.
    pub fn params(&self) -> HierParams {
        HierParams::from_a(self.p, self.r, self.weights.clone()).expect("validated on construction")
    }

    /// `λ^(μ) = a_0 + … + a_μ`.
    pub fn lambdas(&self) -> Vec<f64> {
        self.weights
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// `g(ℓ) = λ^(0) ⋯ λ^(ℓ)` for `ℓ = 0..r`.
    pub fn running_products(&self) -> Vec<f64> {
        self.lambdas()
            .iter()
            .scan(1.0, |acc, &x| {
                *acc *= x;
                Some(*acc)
            })
            .collect()
    }
}
