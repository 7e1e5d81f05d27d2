//! Spectra of `T·Q` and of its `r`-th power.
//!
//! In the character basis `T·Q` sends `χ(word)` to `λ^(μ) χ(rotated word)`,
//! `μ` the trailing-zero count. Over a full turn every position of the word
//! reaches the end once, so `(T·Q)^r` is diagonal there with eigenvalue
//! `(λ^(0))^{r−m} Π_clusters λ^(1)…λ^(len)`. On each rotation orbit `T·Q` is a
//! weighted cyclic shift whose eigenvalues are the `r`-th roots of that value.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::line::{LineLabel, SpectralLine};
use super::parisi::{character_vector, check_word, q_eigenvalues, Eigenpair};
use super::partition::{enumerate_partitions, ClusterPartition};
use super::word::{EncodingSequence, WordClass};
use crate::error::{Error, Result};
use crate::hiermat::{apply_q, rotate, HierParams};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Λ^(m;ν) = (λ^(0))^{r−m} Π_i (λ^(1)…λ^(i))^{ν_i}` for `0 < m < r`.
pub fn class_value(lambda: &[f64], r: usize, part: &ClusterPartition) -> f64 {
    let mut value = lambda[0].powi((r - part.m()) as i32);
    let mut running = 1.0;
    for (i, &count) in part.nu().iter().enumerate() {
        running *= lambda[i + 1];
        value *= running.powi(count as i32);
    }
    value
}

/// Eigenvalue of `(T·Q)^r` on `χ(word)`.
pub fn power_eigenvalue(params: &HierParams, word: &EncodingSequence) -> Result<f64> {
    check_word(params, word)?;
    let lambda = q_eigenvalues(params)?;
    let r = params.r();
    Ok(match word.class() {
        WordClass::ZeroFree => lambda[0].powi(r as i32),
        WordClass::AllZero => lambda[r].powi(r as i32),
        WordClass::Clustered(part) => class_value(&lambda, r, &part),
    })
}

/// Spectrum of `(T·Q)^r`, ordered by `m` and then by partition.
pub fn spectrum_qrect_power(params: &HierParams) -> Result<Vec<SpectralLine>> {
    params.check_countable()?;
    let (p, r) = (params.p(), params.r());
    let lambda = q_eigenvalues(params)?;
    let mut lines = vec![SpectralLine::real(
        lambda[0].powi(r as i32),
        (p as u64 - 1).pow(r as u32),
        LineLabel::prop2(0, None),
    )];
    for m in 1..r {
        for part in enumerate_partitions(r, m)? {
            lines.push(SpectralLine::real(
                class_value(&lambda, r, &part),
                part.multiplicity(p, r),
                LineLabel::prop2(m, Some(&part)),
            ));
        }
    }
    lines.push(SpectralLine::real(
        lambda[r].powi(r as i32),
        1,
        LineLabel::prop2(r, None),
    ));
    Ok(lines)
}

fn unit_root(j: usize, r: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / r as f64)
}

/// Principal `r`-th root, argument in `(−π/r, π/r]`.
fn principal_root(value: f64, r: usize) -> Complex64 {
    if value == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new(value, 0.0).powf(1.0 / r as f64)
}

/// Number of rotation orbits of length `r` among zero-free words (prime `r`).
fn zero_free_orbits(p: usize, r: usize) -> u64 {
    let q = p as u64 - 1;
    (q.pow(r as u32) - q) / r as u64
}

/// Spectrum of `T·Q` for prime `r`.
///
/// The zero-free class (`m = 0`) splits into `λ^(0) e^{2πij/r}`: the `j = 0`
/// line also collects the `p − 1` constant words, every other phase carries
/// one eigenvalue per orbit of length `r`. Zero multiplicities are omitted.
pub fn spectrum_qrect(params: &HierParams) -> Result<Vec<SpectralLine>> {
    let (p, r) = (params.p(), params.r());
    if !is_prime(r) {
        return Err(Error::NonPrimeR(r));
    }
    params.check_countable()?;
    let lambda = q_eigenvalues(params)?;
    let mut lines = Vec::new();

    let orbits = zero_free_orbits(p, r);
    for j in 0..r {
        let mult = if j == 0 { orbits + p as u64 - 1 } else { orbits };
        if mult > 0 {
            lines.push(SpectralLine {
                value: unit_root(j, r) * lambda[0],
                multiplicity: mult,
                label: LineLabel::prop3(j, 0, None),
            });
        }
    }
    for m in 1..r {
        for part in enumerate_partitions(r, m)? {
            let root = principal_root(class_value(&lambda, r, &part), r);
            let mult = part.multiplicity(p, r) / r as u64;
            for j in 0..r {
                lines.push(SpectralLine {
                    value: root * unit_root(j, r),
                    multiplicity: mult,
                    label: LineLabel::prop3(j, m, Some(&part)),
                });
            }
        }
    }
    lines.push(SpectralLine::real(lambda[r], 1, LineLabel::prop3(0, r, None)));
    Ok(lines)
}

/// `Σ_{k=0}^{r−1} ratio^k (T·Q)^k χ(word)`, unnormalized.
pub fn krylov_combination(params: &HierParams, word: &EncodingSequence, ratio: Complex64) -> Result<Vec<Complex64>> {
    check_word(params, word)?;
    params.check_dense()?;
    let a = params.a_coeffs()?;
    let p = params.p();
    let mut term = character_vector(word);
    let mut acc = term.clone();
    let mut weight = Complex64::new(1.0, 0.0);
    for _ in 1..params.r() {
        term = rotate(p, &apply_q(p, &a, &term));
        weight *= ratio;
        for (x, &t) in acc.iter_mut().zip(&term) {
            *x += weight * t;
        }
    }
    Ok(acc)
}

/// The `r`-th root of the class eigenvalue used for `word`, before the phase.
/// For zero-free words this is `λ^(0)` itself so that the constant words sit
/// on the `j = 0` line.
fn base_root(params: &HierParams, word: &EncodingSequence) -> Result<Complex64> {
    let lambda = q_eigenvalues(params)?;
    let r = params.r();
    Ok(match word.class() {
        WordClass::ZeroFree => Complex64::new(lambda[0], 0.0),
        WordClass::AllZero => Complex64::new(lambda[r], 0.0),
        WordClass::Clustered(part) => principal_root(class_value(&lambda, r, &part), r),
    })
}

/// Eigenvalue `Λ^{1/r} e^{2πij/r}` attached to `(word, j)`.
pub fn qrect_eigenvalue(params: &HierParams, word: &EncodingSequence, j: usize) -> Result<Complex64> {
    check_word(params, word)?;
    if word.class() == WordClass::AllZero {
        return base_root(params, word);
    }
    Ok(base_root(params, word)? * unit_root(j % params.r(), params.r()))
}

fn label_for(word: &EncodingSequence, j: usize) -> LineLabel {
    let r = word.r();
    match word.class() {
        WordClass::ZeroFree => LineLabel::prop3(j, 0, None),
        WordClass::AllZero => LineLabel::prop3(0, r, None),
        WordClass::Clustered(part) => LineLabel::prop3(j, part.m(), Some(&part)),
    }
}

/// Eigenvector of `T·Q` generated from `χ(word)` with phase `j`:
/// `ψ ∝ Σ_k e^{−2πij(k−1)/r} Λ^{−(k−1)/r} (T·Q)^k χ`, normalized to unit length.
pub fn eigenvector_qrect(params: &HierParams, word: &EncodingSequence, j: usize) -> Result<Eigenpair> {
    check_word(params, word)?;
    let r = params.r();
    if !is_prime(r) {
        return Err(Error::NonPrimeR(r));
    }
    if j >= r {
        return Err(Error::InvalidParams(format!("phase j = {j} must be below r = {r}")));
    }
    if word.class() == WordClass::AllZero {
        let dim = params.dim();
        return Ok(Eigenpair {
            value: base_root(params, word)?,
            vector: vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim],
            label: label_for(word, 0),
        });
    }
    let period = word.period();
    if period == 1 && j != 0 {
        return Err(Error::DegenerateWord {
            word: word.symbols().to_vec(),
            phase: j,
        });
    }
    assert!(period == 1 || period == r, "prime r admits only periods 1 and r");
    let delta = qrect_eigenvalue(params, word, j)?;
    if delta.norm() == 0.0 {
        return Err(Error::ZeroEigenvalueClass);
    }
    let mut vector = krylov_combination(params, word, delta.inv())?;
    let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::ZeroEigenvalueClass);
    }
    for x in &mut vector {
        *x /= norm;
    }
    Ok(Eigenpair {
        value: delta,
        vector,
        label: label_for(word, j),
    })
}

/// One eigenpair per (rotation orbit, admissible phase): `p^r` vectors in total
/// whenever no class eigenvalue vanishes.
pub fn eigenbasis_qrect(params: &HierParams) -> Result<Vec<Eigenpair>> {
    let r = params.r();
    let mut out = Vec::with_capacity(params.dim());
    for word in orbit_representatives(params.p(), r) {
        let phases = if word.period() == 1 { 1 } else { r };
        for j in 0..phases {
            out.push(eigenvector_qrect(params, &word, j)?);
        }
    }
    Ok(out)
}

/// Smallest-index word of every rotation orbit, in increasing index order.
pub fn orbit_representatives(p: usize, r: usize) -> Vec<EncodingSequence> {
    EncodingSequence::all(p, r)
        .filter(|word| {
            let mut rot = word.rotate_right();
            while rot != *word {
                if rot.index() < word.index() {
                    return false;
                }
                rot = rot.rotate_right();
            }
            true
        })
        .collect()
}
