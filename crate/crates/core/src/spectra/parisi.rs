use std::f64::consts::PI;

use num_complex::Complex64;

use super::line::{LineLabel, SpectralLine};
use super::word::EncodingSequence;
use crate::error::{Error, Result};
use crate::hiermat::{CoeffForm, HierParams};

/// An eigenvector together with the eigenvalue it is claimed to carry.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
    pub label: LineLabel,
}

/// `λ^(μ) = a_0 + … + a_μ` for `μ = 0..=r`.
pub fn q_eigenvalues(params: &HierParams) -> Result<Vec<f64>> {
    let a = params.a_coeffs()?;
    Ok(a.iter()
        .scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect())
}

fn mult_prop1(p: usize, r: usize, mu: usize) -> u64 {
    if mu == r {
        1
    } else {
        (p as u64 - 1) * (p as u64).pow((r - mu - 1) as u32)
    }
}

/// Spectrum of `Q`, one line per `μ = r, r−1, …, 0`.
pub fn spectrum_q(params: &HierParams) -> Result<Vec<SpectralLine>> {
    params.check_countable()?;
    let (p, r) = (params.p(), params.r());
    let lambda = q_eigenvalues(params)?;
    Ok((0..=r)
        .rev()
        .map(|mu| SpectralLine::real(lambda[mu], mult_prop1(p, r, mu), LineLabel::Prop1 { mu }))
        .collect())
}

/// Same spectrum evaluated directly from the entry values `q_γ`:
/// `λ^(μ) = q_0 + (1 − 1/p) Σ_{γ≤μ} p^γ q_γ − p^μ q_{μ+1}` (no last term at `μ = r`).
pub fn spectrum_q_qform(params: &HierParams) -> Result<Vec<SpectralLine>> {
    params.check_countable()?;
    let q_params = params.convert(CoeffForm::Q)?;
    let q = q_params.coeffs();
    let (p, r) = (params.p(), params.r());
    let pf = p as f64;
    let mut lines = Vec::with_capacity(r + 1);
    for mu in (0..=r).rev() {
        let partial: f64 = (1..=mu).map(|g| pf.powi(g as i32) * q[g]).sum();
        let mut value = q[0] + (1.0 - 1.0 / pf) * partial;
        if mu < r {
            value -= pf.powi(mu as i32) * q[mu + 1];
        }
        lines.push(SpectralLine::real(value, mult_prop1(p, r, mu), LineLabel::Prop1 { mu }));
    }
    Ok(lines)
}

/// `e^{2πi kj/p} / √p`, the `k`-th component of the single-slot vector `|j⟩`.
fn character(p: usize, k: usize, j: usize) -> Complex64 {
    let phase = 2.0 * PI * ((k * j) % p) as f64 / p as f64;
    Complex64::from_polar(1.0 / (p as f64).sqrt(), phase)
}

/// The tensor product `|j_1⟩⊗…⊗|j_r⟩` in the computational basis.
pub fn character_vector(word: &EncodingSequence) -> Vec<Complex64> {
    let p = word.p();
    let mut v = vec![Complex64::new(1.0, 0.0)];
    for &j in word.symbols() {
        let slot: Vec<Complex64> = (0..p).map(|k| character(p, k, j as usize)).collect();
        v = v.iter().flat_map(|&x| slot.iter().map(move |&y| x * y)).collect();
    }
    v
}

/// Eigenvector of `Q` labelled by `word`; its eigenvalue is `λ^(μ)` with `μ`
/// the number of trailing zeros of the word.
pub fn eigenvector_q(params: &HierParams, word: &EncodingSequence) -> Result<Eigenpair> {
    check_word(params, word)?;
    params.check_dense()?;
    let mu = word.trailing_zeros();
    let lambda = q_eigenvalues(params)?;
    Ok(Eigenpair {
        value: Complex64::new(lambda[mu], 0.0),
        vector: character_vector(word),
        label: LineLabel::Prop1 { mu },
    })
}

pub(crate) fn check_word(params: &HierParams, word: &EncodingSequence) -> Result<()> {
    if word.p() != params.p() || word.r() != params.r() {
        return Err(Error::InvalidWord(format!(
            "word {word} (p = {}, r = {}) does not match p = {}, r = {}",
            word.p(),
            word.r(),
            params.p(),
            params.r()
        )));
    }
    Ok(())
}
