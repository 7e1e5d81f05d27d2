use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rank::{numeric_rank, rayleigh_quotient, relative_residual};
use crate::error::{Error, Result};
use crate::hiermat::{build_q, build_qrect, HierParams};
use crate::spectra::{
    self, character_vector, collapse_values, eigenbasis_q, orbit_representatives, spectral_trace, total_multiplicity,
    EncodingSequence, LineLabel, SpectralLine, WordClass,
};

/// Residual bound for constructed eigenvectors.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Pivot threshold of the rank computation, relative to the largest entry.
pub const PIVOT_TOL: f64 = 1e-8;
/// Two eigenvalues closer than this are treated as one.
pub const COINCIDENCE_TOL: f64 = 1e-10;

/// Which operator's spectrum to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    /// `Q`
    Q,
    /// `(T·Q)^r`
    QrectPower,
    /// `T·Q` (prime `r`)
    Qrect,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Q => "Q",
            Which::QrectPower => "Qr",
            Which::Qrect => "Qrect",
        })
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(Which::Q),
            "Qr" | "qr" | "QrectPower" => Ok(Which::QrectPower),
            "Qrect" | "qrect" => Ok(Which::Qrect),
            other => Err(Error::Usage(format!("unknown operator `{other}` (Q, Qr, Qrect)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_residual: Option<f64>,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, max_residual: Option<f64>, detail: String) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            max_residual,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub which: Which,
    pub checks: Vec<Check>,
    pub params_echo: HierParams,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A vector claimed to be an eigenvector for `value`, tagged by class.
struct Candidate {
    label: LineLabel,
    value: Complex64,
    vector: Vec<Complex64>,
}

/// Checks every line of a closed-form spectrum against the dense operator:
/// eigenvector residuals, multiplicity as rank deficiency of `A − λI`,
/// completeness and the trace identity.
pub fn verify_spectrum(params: &HierParams, which: Which) -> Result<VerificationReport> {
    params.check_dense()?;
    let r = params.r();
    let (matrix, lines, candidates, unconstructed) = match which {
        Which::Q => {
            let matrix = build_q(params)?.into_entries();
            let candidates = eigenbasis_q(params)?
                .into_iter()
                .map(|e| Candidate {
                    label: e.label,
                    value: e.value,
                    vector: e.vector,
                })
                .collect();
            (matrix, spectra::spectrum_q(params)?, candidates, Vec::new())
        }
        Which::QrectPower => {
            let matrix = build_qrect(params)?.pow(r as u32).into_entries();
            let lines = spectra::spectrum_qrect_power(params)?;
            let candidates = EncodingSequence::all(params.p(), r)
                .map(|w| {
                    Ok(Candidate {
                        label: power_label(&w),
                        value: Complex64::new(spectra::power_eigenvalue(params, &w)?, 0.0),
                        vector: character_vector(&w),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (matrix, lines, candidates, Vec::new())
        }
        Which::Qrect => {
            if !spectra::is_prime(r) {
                return Err(Error::NonPrimeR(r));
            }
            let matrix = build_qrect(params)?.into_entries();
            let lines = spectra::spectrum_qrect(params)?;
            let mut candidates = Vec::new();
            let mut unconstructed = Vec::new();
            for word in orbit_representatives(params.p(), r) {
                let phases = if word.period() == 1 { 1 } else { r };
                for j in 0..phases {
                    match spectra::eigenvector_qrect(params, &word, j) {
                        Ok(e) => candidates.push(Candidate {
                            label: e.label,
                            value: e.value,
                            vector: e.vector,
                        }),
                        Err(Error::ZeroEigenvalueClass) => unconstructed.push((word.clone(), j)),
                        Err(e) => return Err(e),
                    }
                }
            }
            (matrix, lines, candidates, unconstructed)
        }
    };

    let scale = matrix.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let mut by_label: HashMap<&LineLabel, Vec<&Candidate>> = HashMap::new();
    for c in &candidates {
        by_label.entry(&c.label).or_default().push(c);
    }

    let mut checks: Vec<Check> = lines
        .par_iter()
        .map(|line| {
            line_check(
                &matrix,
                scale,
                &lines,
                line,
                by_label.get(&line.label).map(Vec::as_slice),
            )
        })
        .collect();

    let dim = params.dim() as u64;
    let total = total_multiplicity(&lines);
    checks.push(Check::new(
        "completeness",
        total == dim,
        None,
        format!("sum of multiplicities {total}, dimension {dim}"),
    ));

    let trace = matrix.trace();
    let claimed = spectral_trace(&lines);
    let err = (trace - claimed).norm();
    checks.push(Check::new(
        "trace",
        err <= RESIDUAL_TOL * trace.norm().max(1.0),
        Some(err),
        format!("dense trace {trace:.12}, spectral sum {claimed:.12}"),
    ));

    if which == Which::Qrect {
        checks.push(power_consistency(params, &lines)?);
        checks.push(basis_rank(&candidates, params.dim(), &unconstructed));
        checks.push(phase_convention(params, &matrix)?);
    }

    Ok(VerificationReport {
        which,
        checks,
        params_echo: params.clone(),
    })
}

fn power_label(word: &EncodingSequence) -> LineLabel {
    match word.class() {
        WordClass::ZeroFree => LineLabel::Prop2 { m: 0, nu: vec![] },
        WordClass::AllZero => LineLabel::Prop2 {
            m: word.r(),
            nu: vec![],
        },
        WordClass::Clustered(part) => LineLabel::Prop2 {
            m: part.m(),
            nu: part.nu().to_vec(),
        },
    }
}

fn line_check(
    matrix: &DMatrix<Complex64>,
    scale: f64,
    lines: &[SpectralLine],
    line: &SpectralLine,
    vectors: Option<&[&Candidate]>,
) -> Check {
    let n = matrix.nrows();
    let lambda = line.value;
    let aggregated: u64 = lines
        .iter()
        .filter(|l| (l.value - lambda).norm() <= COINCIDENCE_TOL * lambda.norm().max(1.0))
        .map(|l| l.multiplicity)
        .sum();
    let shifted = matrix - DMatrix::<Complex64>::identity(n, n) * lambda;
    let deficiency = (n - numeric_rank(&shifted, PIVOT_TOL * scale)) as u64;
    let mut ok = deficiency == aggregated;
    let mut detail = format!(
        "value {lambda:.12}, multiplicity {}, coinciding total {aggregated}, rank deficiency {deficiency}",
        line.multiplicity
    );

    let max_residual = match vectors {
        Some(vs) => {
            let worst = vs
                .iter()
                .map(|c| {
                    let value_gap = (c.value - lambda).norm();
                    relative_residual(matrix, &c.vector, lambda).max(value_gap)
                })
                .fold(0.0f64, f64::max);
            ok &= worst <= RESIDUAL_TOL;
            ok &= vs.len() as u64 == line.multiplicity;
            detail.push_str(&format!(", {} constructed vectors", vs.len()));
            Some(worst)
        }
        None => {
            detail.push_str(", no eigenvector constructor for this class");
            None
        }
    };
    Check::new(line.label.to_string(), ok, max_residual, detail)
}

fn power_consistency(params: &HierParams, lines: &[SpectralLine]) -> Result<Check> {
    let r = params.r() as u32;
    let raised: Vec<SpectralLine> = lines
        .iter()
        .map(|l| SpectralLine {
            value: l.value.powu(r),
            ..l.clone()
        })
        .collect();
    let power = spectra::spectrum_qrect_power(params)?;
    let lhs = collapse_values(&raised, COINCIDENCE_TOL);
    let rhs = collapse_values(&power, COINCIDENCE_TOL);
    let same_len = lhs.len() == rhs.len();
    let worst = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| {
            if a.1 != b.1 {
                f64::INFINITY
            } else {
                (a.0 - b.0).norm() / a.0.norm().max(1.0)
            }
        })
        .fold(0.0f64, f64::max);
    Ok(Check::new(
        "power-consistency",
        same_len && worst <= COINCIDENCE_TOL,
        Some(worst),
        format!(
            "r-th powers of the phase-split values vs the (TQ)^r spectrum: {} vs {} distinct values",
            lhs.len(),
            rhs.len()
        ),
    ))
}

fn basis_rank(candidates: &[Candidate], dim: usize, unconstructed: &[(EncodingSequence, usize)]) -> Check {
    let cols: Vec<nalgebra::DVector<Complex64>> = candidates
        .iter()
        .map(|c| nalgebra::DVector::from_column_slice(&c.vector))
        .collect();
    let rank = if cols.is_empty() {
        0
    } else {
        numeric_rank(&DMatrix::from_columns(&cols), PIVOT_TOL)
    };
    Check::new(
        "eigenbasis-rank",
        rank == dim,
        None,
        format!(
            "{} constructed eigenvectors span rank {rank} of {dim}; {} (word, phase) pairs lie in zero classes",
            candidates.len(),
            unconstructed.len()
        ),
    )
}

/// Determines empirically which eigenvalue the phase series carries.
///
/// `ψ = Σ_k δ^{−(k−1)} (TQ)^k χ` is compared with `δ = Λ^{1/r} e^{2πij/r}`, and
/// the forward series `Σ_k δ^k (TQ)^k χ` with the inverse `1/δ`.
fn phase_convention(params: &HierParams, matrix: &DMatrix<Complex64>) -> Result<Check> {
    let r = params.r();
    let mut backward_dev = 0.0f64;
    let mut forward_residual = 0.0f64;
    let mut forward_dev = 0.0f64;
    let mut tested = 0;
    for word in orbit_representatives(params.p(), r) {
        if word.period() == 1 {
            continue;
        }
        for j in 0..r {
            let delta = spectra::qrect_eigenvalue(params, &word, j)?;
            if delta.norm() == 0.0 {
                continue;
            }
            let psi = spectra::eigenvector_qrect(params, &word, j)?;
            backward_dev = backward_dev.max((rayleigh_quotient(matrix, &psi.vector) - delta).norm());

            let forward = spectra::krylov_combination(params, &word, delta)?;
            if forward.iter().map(|z| z.norm_sqr()).sum::<f64>() > 0.0 {
                forward_residual = forward_residual.max(relative_residual(matrix, &forward, delta.inv()));
                forward_dev = forward_dev.max((rayleigh_quotient(matrix, &forward) - delta.inv()).norm());
            }
            tested += 1;
        }
    }
    Ok(Check::new(
        "phase-convention",
        backward_dev <= RESIDUAL_TOL,
        Some(backward_dev),
        format!(
            "{tested} (orbit, phase) pairs: Rayleigh quotient of sum_k delta^-(k-1) (TQ)^k chi equals delta = Lambda^(1/r) e^(2 pi i j/r) \
             (max deviation {backward_dev:.3e}); the forward series sum_k delta^k (TQ)^k chi is not an eigenvector for 1/delta \
             (max residual {forward_residual:.3e}, max Rayleigh deviation from 1/delta {forward_dev:.3e})"
        ),
    ))
}
