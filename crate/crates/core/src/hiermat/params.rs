use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `p^r` for which dense matrices are materialized by default.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// The four equivalent ways of writing the coefficients of `Q`.
///
/// * `A`: `Q = Σ a_γ S_γ`
/// * `Q`: entry values, `q_γ` at ultrametric level γ (diagonal `q_0`)
/// * `B`: `Q = Π (1 + b_γ S_γ)`
/// * `C`: `Q = exp(Σ c_γ S_γ)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffForm {
    A,
    Q,
    B,
    C,
}

impl fmt::Display for CoeffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoeffForm::A => "a",
            CoeffForm::Q => "q",
            CoeffForm::B => "b",
            CoeffForm::C => "c",
        };
        f.write_str(s)
    }
}

impl FromStr for CoeffForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(CoeffForm::A),
            "q" => Ok(CoeffForm::Q),
            "b" => Ok(CoeffForm::B),
            "c" => Ok(CoeffForm::C),
            other => Err(Error::Usage(format!("unknown coefficient form `{other}`"))),
        }
    }
}

/// Branching factor `p`, depth `r` and `r + 1` coefficients in one of the
/// four forms. Identifies one member of the operator family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierParams {
    p: usize,
    r: usize,
    coeffs: Vec<f64>,
    form: CoeffForm,
    #[serde(skip, default = "default_cap")]
    dense_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_DENSE_CAP
}

impl HierParams {
    pub fn new(p: usize, r: usize, coeffs: Vec<f64>, form: CoeffForm) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParams(format!("p must be at least 2, got {p}")));
        }
        if r < 1 {
            return Err(Error::InvalidParams("r must be at least 1".into()));
        }
        if coeffs.len() != r + 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} coefficients for r = {r}, got {}",
                r + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParams("coefficients must be finite".into()));
        }
        Ok(Self {
            p,
            r,
            coeffs,
            form,
            dense_cap: DEFAULT_DENSE_CAP,
        })
    }

    /// Shorthand for `new(p, r, a, CoeffForm::A)`.
    pub fn from_a(p: usize, r: usize, a: Vec<f64>) -> Result<Self> {
        Self::new(p, r, a, CoeffForm::A)
    }

    /// The identity member: `a = (1, 0, ..., 0)`.
    pub fn identity(p: usize, r: usize) -> Result<Self> {
        let mut a = vec![0.0; r + 1];
        a[0] = 1.0;
        Self::from_a(p, r, a)
    }

    pub fn with_dense_cap(mut self, cap: usize) -> Self {
        self.dense_cap = cap;
        self
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn form(&self) -> CoeffForm {
        self.form
    }

    pub fn dense_cap(&self) -> usize {
        self.dense_cap
    }

    /// Hilbert-space dimension `p^r`, saturating at `usize::MAX`.
    pub fn dim(&self) -> usize {
        self.p.checked_pow(self.r as u32).unwrap_or(usize::MAX)
    }

    /// Fails when `p^r` does not fit the `u64` multiplicity counters.
    pub(crate) fn check_countable(&self) -> Result<u64> {
        (self.p as u64)
            .checked_pow(self.r as u32)
            .ok_or_else(|| Error::InvalidParams(format!("p^r overflows for p = {}, r = {}", self.p, self.r)))
    }

    /// `a_0..a_r`, converting if stored in another form.
    pub fn a_coeffs(&self) -> Result<Vec<f64>> {
        Ok(self.convert(CoeffForm::A)?.coeffs)
    }

    /// `q_0..q_r`, converting if stored in another form.
    pub fn q_coeffs(&self) -> Result<Vec<f64>> {
        Ok(self.convert(CoeffForm::Q)?.coeffs)
    }

    pub(crate) fn check_dense(&self) -> Result<usize> {
        let dim = self.dim();
        if dim > self.dense_cap {
            return Err(Error::DimensionLimitExceeded {
                dim,
                cap: self.dense_cap,
            });
        }
        Ok(dim)
    }

    /// Re-express the same operator in `target` form.
    pub fn convert(&self, target: CoeffForm) -> Result<HierParams> {
        if target == self.form {
            return Ok(self.clone());
        }
        let p = self.p as f64;
        let a = match self.form {
            CoeffForm::A => self.coeffs.clone(),
            CoeffForm::Q => q_to_a(&self.coeffs, p),
            CoeffForm::B => b_to_a(&self.coeffs),
            CoeffForm::C => b_to_a(&c_to_b(&self.coeffs)),
        };
        let coeffs = match target {
            CoeffForm::A => a,
            CoeffForm::Q => a_to_q(&a, p),
            CoeffForm::B => a_to_b(&a)?,
            CoeffForm::C => b_to_c(&a_to_b(&a)?)?,
        };
        Ok(HierParams {
            coeffs,
            form: target,
            ..self.clone()
        })
    }
}

/// Free-function form of [`HierParams::convert`].
pub fn convert_coeffs(params: &HierParams, target: CoeffForm) -> Result<HierParams> {
    params.convert(target)
}

fn a_to_q(a: &[f64], p: f64) -> Vec<f64> {
    let r = a.len() - 1;
    let mut q = vec![0.0; r + 1];
    let mut tail = 0.0;
    for g in (0..=r).rev() {
        tail += a[g] * p.powi(-(g as i32));
        q[g] = tail;
    }
    q
}

fn q_to_a(q: &[f64], p: f64) -> Vec<f64> {
    let r = q.len() - 1;
    (0..=r)
        .map(|g| {
            let next = if g < r { q[g + 1] } else { 0.0 };
            p.powi(g as i32) * (q[g] - next)
        })
        .collect()
}

// The γ = r entries follow the same product pattern as γ < r.
fn a_to_b(a: &[f64]) -> Result<Vec<f64>> {
    let mut b = Vec::with_capacity(a.len());
    b.push(a[0] - 1.0);
    let mut partial = a[0];
    for (g, &ag) in a.iter().enumerate().skip(1) {
        if partial == 0.0 {
            return Err(Error::DegenerateConversion(format!(
                "partial sum a_0 + ... + a_{} vanishes",
                g - 1
            )));
        }
        b.push(ag / partial);
        partial += ag;
    }
    Ok(b)
}

fn b_to_a(b: &[f64]) -> Vec<f64> {
    let mut a = Vec::with_capacity(b.len());
    let mut prod = 1.0 + b[0];
    a.push(prod);
    for &bg in &b[1..] {
        a.push(bg * prod);
        prod *= 1.0 + bg;
    }
    a
}

fn b_to_c(b: &[f64]) -> Result<Vec<f64>> {
    b.iter()
        .enumerate()
        .map(|(g, &bg)| {
            if bg <= -1.0 {
                Err(Error::DegenerateConversion(format!(
                    "b_{g} = {bg} <= -1 has no logarithm"
                )))
            } else {
                Ok(bg.ln_1p())
            }
        })
        .collect()
}

fn c_to_b(c: &[f64]) -> Vec<f64> {
    c.iter().map(|cg| cg.exp_m1()).collect()
}
