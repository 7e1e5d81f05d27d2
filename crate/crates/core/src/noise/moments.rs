use serde::{Deserialize, Serialize};

use super::model::NoiseModel;
use crate::error::{Error, Result};
use crate::spectra::q_eigenvalues;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentSource {
    MonteCarlo,
    Analytic,
    Asymptotic,
}

/// Mean and variance of the number of errors after one full turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub mean: f64,
    pub variance: f64,
    /// 0 for analytic results.
    pub n_trials: u64,
    pub std_error_mean: f64,
    pub std_error_variance: f64,
    pub source: MomentSource,
}

impl MomentReport {
    fn exact(mean: f64, variance: f64, source: MomentSource) -> Self {
        Self {
            mean,
            variance,
            n_trials: 0,
            std_error_mean: 0.0,
            std_error_variance: 0.0,
            source,
        }
    }

    /// Sample statistics of a histogram of error counts (`hist[k]` trials
    /// ended with `k` errors). The variance is the unbiased sample variance.
    pub fn from_histogram(hist: &[u64]) -> Self {
        let n: u64 = hist.iter().sum();
        let nf = n as f64;
        let mean = hist.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / nf;
        let central = |power: i32| {
            hist.iter()
                .enumerate()
                .map(|(k, &c)| (k as f64 - mean).powi(power) * c as f64)
                .sum::<f64>()
                / nf
        };
        let m2 = central(2);
        let m4 = central(4);
        let variance = if n > 1 { m2 * nf / (nf - 1.0) } else { 0.0 };
        let (se_mean, se_var) = if n > 1 {
            let s4 = variance * variance;
            let var_of_var = ((m4 - s4 * (nf - 3.0) / (nf - 1.0)) / nf).max(0.0);
            ((variance / nf).sqrt(), var_of_var.sqrt())
        } else {
            (0.0, 0.0)
        };
        Self {
            mean,
            variance,
            n_trials: n,
            std_error_mean: se_mean,
            std_error_variance: se_var,
            source: MomentSource::MonteCarlo,
        }
    }
}

fn require_binary(model: &NoiseModel) -> Result<()> {
    if model.p() != 2 {
        return Err(Error::UnsupportedP(model.p()));
    }
    Ok(())
}

/// `g(0..r)` from the spectrum of `Q`, with `λ^(r) = 1` enforced.
fn running_products(model: &NoiseModel) -> Result<Vec<f64>> {
    let lambda = q_eigenvalues(&model.params())?;
    let top = lambda[model.r()];
    if (top - 1.0).abs() > crate::oracle::NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum: top });
    }
    Ok(lambda
        .iter()
        .scan(1.0, |acc, &x| {
            *acc *= x;
            Some(*acc)
        })
        .collect())
}

/// Closed-form moments after one full turn (`p = 2`):
/// `⟨k⟩ = (r/2)(1 − g(r−1))` and
/// `var = (r/4)(1 − r g(r−1)² + Σ_{j=0}^{r−2} g(r−2−j) g(j))`.
pub fn analytic_moments(model: &NoiseModel) -> Result<MomentReport> {
    require_binary(model)?;
    let g = running_products(model)?;
    let r = model.r();
    let rf = r as f64;
    let last = g[r - 1];
    let cross: f64 = (0..r.saturating_sub(1)).map(|j| g[r - 2 - j] * g[j]).sum();
    let mean = rf / 2.0 * (1.0 - last);
    let variance = rf / 4.0 * (1.0 - rf * last * last + cross);
    Ok(MomentReport::exact(mean, variance, MomentSource::Analytic))
}

/// Cap on the number of terms summed for `g_∞` and `G`.
pub const MAX_SERIES_TERMS: usize = 1_000_000;
const SERIES_TOL: f64 = 1e-15;

/// Large-`r` limits `(g_∞, G)` of the Boltzmann family:
/// `g_∞ = Π_{γ≥1} (1 − e^{−γβ})` and `G = Σ_{j≥0} (g_∞ − g(j))`
/// with `g(j) = Π_{γ=1}^{j+1} (1 − e^{−γβ})`.
pub fn boltzmann_limits(beta: f64) -> Result<(f64, f64)> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidParams(format!("beta must be positive, got {beta}")));
    }
    let mut partials = Vec::new();
    let mut g = 1.0;
    let mut gamma = 1;
    loop {
        let tail = (-(gamma as f64) * beta).exp();
        g *= 1.0 - tail;
        partials.push(g);
        if tail < SERIES_TOL {
            break;
        }
        gamma += 1;
        if gamma > MAX_SERIES_TERMS {
            return Err(Error::NonConvergent {
                terms: MAX_SERIES_TERMS,
            });
        }
    }
    let g_inf = g;
    // beyond the truncation point every term of G is below the tolerance
    let big_g = partials.iter().map(|&gj| g_inf - gj).sum();
    Ok((g_inf, big_g))
}

/// Leading large-`r` moments (`p = 2`):
/// `⟨k⟩ ≈ (r/2)(1 − g_∞)`, `var ≈ (r/4)(1 − g_∞² − 2 g_∞ G)`.
///
/// Boltzmann models use the exact infinite products. For other weights the
/// model's own `g(r−1)` stands in for `g_∞` and `G` runs over `j < r`.
pub fn asymptotic_moments(model: &NoiseModel) -> Result<MomentReport> {
    require_binary(model)?;
    let rf = model.r() as f64;
    let (g_inf, big_g) = match model.beta() {
        Some(beta) => boltzmann_limits(beta)?,
        None => {
            let g = running_products(model)?;
            let g_inf = g[model.r() - 1];
            (g_inf, g[..model.r()].iter().map(|&gj| g_inf - gj).sum())
        }
    };
    let mean = rf / 2.0 * (1.0 - g_inf);
    let variance = rf / 4.0 * (1.0 - g_inf * g_inf - 2.0 * g_inf * big_g);
    Ok(MomentReport::exact(mean, variance, MomentSource::Asymptotic))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_moments_vanish() {
        let mut a = vec![0.0; 9];
        a[0] = 1.0;
        let model = NoiseModel::new(2, 8, a).unwrap();
        let m = analytic_moments(&model).unwrap();
        assert_eq!(m.mean, 0.0);
        assert_eq!(m.variance, 0.0);
    }

    #[test]
    fn histogram_statistics() {
        // values 0, 1, 1, 2
        let m = MomentReport::from_histogram(&[1, 2, 1]);
        assert_eq!(m.n_trials, 4);
        assert!((m.mean - 1.0).abs() < 1e-15);
        assert!((m.variance - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.std_error_mean - (2.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn euler_product_converges() {
        let (g_inf, _) = boltzmann_limits(1.0).unwrap();
        // partial products up to 60 factors are converged to double precision
        let direct: f64 = (1..=60).map(|k| 1.0 - (-(k as f64)).exp()).product();
        assert!((g_inf - direct).abs() < 1e-15);
    }

    #[test]
    fn cold_noise_is_poissonian() {
        let beta = 9.0;
        let model = NoiseModel::boltzmann(2, 100, beta).unwrap();
        let expected = 50.0 * (-beta).exp();
        let m = asymptotic_moments(&model).unwrap();
        assert!((m.mean - expected).abs() / expected < 1e-3);
        assert!((m.variance - expected).abs() / expected < 1e-3);
    }

    #[test]
    fn only_binary_alphabet() {
        let model = NoiseModel::boltzmann(3, 4, 1.0).unwrap();
        assert!(matches!(analytic_moments(&model), Err(Error::UnsupportedP(3))));
        assert!(matches!(asymptotic_moments(&model), Err(Error::UnsupportedP(3))));
    }
}
