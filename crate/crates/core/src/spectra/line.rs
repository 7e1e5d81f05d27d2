use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::partition::ClusterPartition;
use crate::hiermat::{CoeffForm, HierParams};

/// Which eigenvalue class a line belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LineLabel {
    /// Eigenvalue `λ^(μ)` of `Q` (words with `μ` trailing zeros).
    Prop1 { mu: usize },
    /// Eigenvalue of `(T·Q)^r` for the `(m; ν)` class.
    Prop2 { m: usize, nu: Vec<usize> },
    /// Phase `j` of the `(m; ν)` class of `T·Q`.
    Prop3 { j: usize, m: usize, nu: Vec<usize> },
}

impl LineLabel {
    pub(crate) fn prop2(m: usize, part: Option<&ClusterPartition>) -> Self {
        LineLabel::Prop2 {
            m,
            nu: part.map(|p| p.nu().to_vec()).unwrap_or_default(),
        }
    }

    pub(crate) fn prop3(j: usize, m: usize, part: Option<&ClusterPartition>) -> Self {
        LineLabel::Prop3 {
            j,
            m,
            nu: part.map(|p| p.nu().to_vec()).unwrap_or_default(),
        }
    }

    /// The `m` of a `Prop2`/`Prop3` label.
    pub fn zero_count(&self) -> Option<usize> {
        match self {
            LineLabel::Prop1 { .. } => None,
            LineLabel::Prop2 { m, .. } | LineLabel::Prop3 { m, .. } => Some(*m),
        }
    }
}

fn write_nu(f: &mut fmt::Formatter<'_>, nu: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, n) in nu.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{n}")?;
    }
    f.write_str("]")
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::Prop1 { mu } => write!(f, "P1:mu={mu}"),
            LineLabel::Prop2 { m, nu } => {
                write!(f, "P2:m={m},nu=")?;
                write_nu(f, nu)
            }
            LineLabel::Prop3 { j, m, nu } => {
                write!(f, "P3:j={j},m={m},nu=")?;
                write_nu(f, nu)
            }
        }
    }
}

/// One entry of a spectrum: a value, how often it occurs, and its class.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLine {
    pub value: Complex64,
    pub multiplicity: u64,
    pub label: LineLabel,
}

impl SpectralLine {
    pub(crate) fn real(value: f64, multiplicity: u64, label: LineLabel) -> Self {
        Self {
            value: Complex64::new(value, 0.0),
            multiplicity,
            label,
        }
    }
}

/// Sum of multiplicities over a spectrum.
pub fn total_multiplicity(lines: &[SpectralLine]) -> u64 {
    lines.iter().map(|l| l.multiplicity).sum()
}

/// `Σ value × multiplicity`, which equals the trace of the operator.
pub fn spectral_trace(lines: &[SpectralLine]) -> Complex64 {
    lines.iter().map(|l| l.value * l.multiplicity as f64).sum()
}

/// Merges lines whose values agree within `tol` into a value-keyed multiset,
/// sorted by modulus then argument. Class labels are dropped.
pub fn collapse_values(lines: &[SpectralLine], tol: f64) -> Vec<(Complex64, u64)> {
    let mut out: Vec<(Complex64, u64)> = Vec::new();
    for line in lines {
        match out.iter_mut().find(|(v, _)| (*v - line.value).norm() <= tol) {
            Some(entry) => entry.1 += line.multiplicity,
            None => out.push((line.value, line.multiplicity)),
        }
    }
    out.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()).then(a.0.arg().total_cmp(&b.0.arg())));
    out
}

/// Serialized form of a line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineRecord {
    pub re: f64,
    pub im: f64,
    pub mult: u64,
    pub label: String,
}

/// JSON document `{p, r, form, coeffs, lines: [{re, im, mult, label}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub p: usize,
    pub r: usize,
    pub form: CoeffForm,
    pub coeffs: Vec<f64>,
    pub lines: Vec<LineRecord>,
}

impl SpectrumReport {
    pub fn new(params: &HierParams, lines: &[SpectralLine]) -> Self {
        Self {
            p: params.p(),
            r: params.r(),
            form: params.form(),
            coeffs: params.coeffs().to_vec(),
            lines: lines
                .iter()
                .map(|l| LineRecord {
                    re: l.value.re,
                    im: l.value.im,
                    mult: l.multiplicity,
                    label: l.label.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_strings() {
        assert_eq!(LineLabel::Prop1 { mu: 2 }.to_string(), "P1:mu=2");
        assert_eq!(LineLabel::Prop2 { m: 2, nu: vec![0, 1] }.to_string(), "P2:m=2,nu=[0,1]");
        assert_eq!(
            LineLabel::Prop3 {
                j: 1,
                m: 2,
                nu: vec![0, 1]
            }
            .to_string(),
            "P3:j=1,m=2,nu=[0,1]"
        );
        assert_eq!(LineLabel::Prop2 { m: 0, nu: vec![] }.to_string(), "P2:m=0,nu=[]");
    }

    #[test]
    fn collapse_merges_close_values() {
        let lines = vec![
            SpectralLine::real(1.0, 2, LineLabel::Prop1 { mu: 0 }),
            SpectralLine::real(1.0 + 1e-12, 3, LineLabel::Prop1 { mu: 1 }),
            SpectralLine::real(0.5, 1, LineLabel::Prop1 { mu: 2 }),
        ];
        let merged = collapse_values(&lines, 1e-10);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged[0].1, 1);
        assert_eq!(merged[1].1, 5);
    }
}
