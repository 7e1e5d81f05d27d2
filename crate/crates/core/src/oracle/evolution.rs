//! Exact evolution of the disc's probability vector, `w(t+1) = (T·Q) w(t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hiermat::{apply_q, rotate, HierParams};
use crate::spectra::EncodingSequence;

/// Weights that act as probabilities must sum to 1 within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Probability vector over the `p^r` disc contents after `t` steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactEvolution {
    pub w: Vec<f64>,
    pub t: usize,
}

impl ExactEvolution {
    /// Point mass on `initial`.
    pub fn start(params: &HierParams, initial: &EncodingSequence) -> Result<Self> {
        check_initial(params, initial)?;
        params.check_dense()?;
        let mut w = vec![0.0; params.dim()];
        w[initial.index()] = 1.0;
        Ok(Self { w, t: 0 })
    }

    /// Advances by `steps` applications of `T·Q`, clamping round-off
    /// negatives to zero.
    pub fn advance(&mut self, params: &HierParams, steps: usize) -> Result<()> {
        let a = params.a_coeffs()?;
        let p = params.p();
        for _ in 0..steps {
            self.w = rotate(p, &apply_q(p, &a, &self.w));
            for x in &mut self.w {
                if *x < 0.0 && *x >= -1e-12 {
                    *x = 0.0;
                }
            }
            self.t += 1;
        }
        Ok(())
    }

    pub fn total(&self) -> f64 {
        self.w.iter().sum()
    }
}

fn check_initial(params: &HierParams, initial: &EncodingSequence) -> Result<()> {
    if initial.p() != params.p() || initial.r() != params.r() {
        return Err(Error::InvalidWord(format!(
            "initial word {initial} does not match p = {}, r = {}",
            params.p(),
            params.r()
        )));
    }
    Ok(())
}

/// Checks that the `a` coefficients form a probability vector.
pub fn check_probability_weights(a: &[f64]) -> Result<()> {
    if let Some(bad) = a.iter().find(|&&x| x < 0.0) {
        return Err(Error::InvalidParams(format!("negative weight {bad}")));
    }
    let sum: f64 = a.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum });
    }
    Ok(())
}

/// Error-count statistics after a number of steps, computed twice: by summing
/// Hamming distances against the evolved distribution, and by differentiating
/// the moment generator `⟨e_{j0}| T^{−ℓ} E(α) (TQ)^ℓ |e_{j0}⟩` at `α = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactMoments {
    pub steps: usize,
    pub mean: f64,
    pub variance: f64,
    pub generator_mean: f64,
    pub generator_variance: f64,
    /// `P(k)` for `k = 0..=r` errors.
    pub distribution: Vec<f64>,
}

/// Exact mean and variance of the number of errors after `steps` steps,
/// starting from `initial`. Only `p = 2`.
pub fn exact_moments(params: &HierParams, steps: usize, initial: &EncodingSequence) -> Result<ExactMoments> {
    if params.p() != 2 {
        return Err(Error::UnsupportedP(params.p()));
    }
    check_probability_weights(&params.a_coeffs()?)?;
    params.check_dense()?;

    let mut evo = ExactEvolution::start(params, initial)?;
    evo.advance(params, steps)?;

    // T^ℓ moves the initial content to where it is compared
    let mut target = initial.clone();
    for _ in 0..steps % params.r() {
        target = target.rotate_right();
    }

    let r = params.r();
    let mut distribution = vec![0.0; r + 1];
    for (idx, &w) in evo.w.iter().enumerate() {
        let k = (idx ^ target.index()).count_ones() as usize;
        distribution[k] += w;
    }
    let mean: f64 = distribution.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
    let second: f64 = distribution.iter().enumerate().map(|(k, &p)| (k * k) as f64 * p).sum();

    let (d1, d2) = generator_derivatives(r, target.index(), &evo.w);

    Ok(ExactMoments {
        steps,
        mean,
        variance: second - mean * mean,
        generator_mean: d1,
        generator_variance: d2 - d1 * d1,
        distribution,
    })
}

type SlotOp = [[f64; 2]; 2];

const ONE_PLUS_FLIP: SlotOp = [[1.0, 1.0], [1.0, 1.0]];
const FLIP: SlotOp = [[0.0, 1.0], [1.0, 0.0]];

/// `⟨e_target| ⊗_s ops[s] |w⟩` by contracting one tensor slot at a time.
fn contract(ops: &[SlotOp], target: usize, w: &[f64]) -> f64 {
    let r = ops.len();
    let mut v = w.to_vec();
    for (slot, op) in ops.iter().enumerate() {
        let stride = 1usize << (r - 1 - slot);
        for base in 0..v.len() {
            if base & stride != 0 {
                continue;
            }
            let (x0, x1) = (v[base], v[base | stride]);
            v[base] = op[0][0] * x0 + op[0][1] * x1;
            v[base | stride] = op[1][0] * x0 + op[1][1] * x1;
        }
    }
    v[target]
}

/// First and second α-derivatives at 0 of `⟨e_t| E(α) |w⟩` with
/// `E(α) = ⊗ (1 + e^α P)`: each slot factor differentiates to `P`, so the
/// derivatives are sums of `P` insertions into `⊗ (1 + P)`. The second
/// derivative of a single factor is again `P`, hence the `s = t` terms.
fn generator_derivatives(r: usize, target: usize, w: &[f64]) -> (f64, f64) {
    let mut first = 0.0;
    let mut second = 0.0;
    for s in 0..r {
        let mut ops = vec![ONE_PLUS_FLIP; r];
        ops[s] = FLIP;
        let single = contract(&ops, target, w);
        first += single;
        second += single;
        for t in 0..r {
            if t == s {
                continue;
            }
            let mut ops = vec![ONE_PLUS_FLIP; r];
            ops[s] = FLIP;
            ops[t] = FLIP;
            second += contract(&ops, target, w);
        }
    }
    (first, second)
}
