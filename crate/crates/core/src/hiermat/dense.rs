use nalgebra::DMatrix;
use num_complex::Complex64;

use super::params::HierParams;
use crate::error::{Error, Result};

/// What a dense matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    SGamma(usize),
    Q,
    T,
    Qrect,
    Power(u32),
    Custom,
}

/// A materialized `p^r × p^r` operator with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    entries: DMatrix<Complex64>,
    kind: OperatorKind,
}

impl DenseOperator {
    pub fn new(entries: DMatrix<Complex64>, kind: OperatorKind) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidParams(format!(
                "operator must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { entries, kind })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator {
            entries: &self.entries * &other.entries,
            kind: OperatorKind::Custom,
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> DenseOperator {
        let n = self.dim();
        let mut result = DMatrix::<Complex64>::identity(n, n);
        let mut base = self.entries.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        DenseOperator {
            entries: result,
            kind: OperatorKind::Power(k),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let x = nalgebra::DVector::from_column_slice(v);
        Ok((&self.entries * x).as_slice().to_vec())
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// True when every row and column holds exactly one entry equal to 1 and
    /// the rest are 0.
    pub fn is_permutation(&self) -> bool {
        let n = self.dim();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if self.entries.iter().any(|&z| z != one && z != zero) {
            return false;
        }
        let rows_ok = (0..n).all(|i| self.entries.row(i).iter().filter(|&&z| z == one).count() == 1);
        let cols_ok = (0..n).all(|j| self.entries.column(j).iter().filter(|&&z| z == one).count() == 1);
        rows_ok && cols_ok
    }
}

/// `S_γ = 1^{⊗(r−γ)} ⊗ s^{⊗γ}` with `s` the `p × p` matrix of entries `1/p`.
pub fn build_s(params: &HierParams, gamma: usize) -> Result<DenseOperator> {
    params.check_dense()?;
    let (p, r) = (params.p(), params.r());
    if gamma > r {
        return Err(Error::InvalidParams(format!("gamma = {gamma} exceeds r = {r}")));
    }
    let identity = DMatrix::<Complex64>::identity(p, p);
    let s = DMatrix::<Complex64>::from_element(p, p, Complex64::new(1.0 / p as f64, 0.0));
    let mut m = DMatrix::<Complex64>::identity(1, 1);
    for slot in 0..r {
        let factor = if slot < r - gamma { &identity } else { &s };
        m = m.kronecker(factor);
    }
    DenseOperator::new(m, OperatorKind::SGamma(gamma))
}

/// `Q = Σ a_γ S_γ`.
pub fn build_q(params: &HierParams) -> Result<DenseOperator> {
    let dim = params.check_dense()?;
    let a = params.a_coeffs()?;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (gamma, &ag) in a.iter().enumerate() {
        if ag != 0.0 {
            m += build_s(params, gamma)?.entries * Complex64::new(ag, 0.0);
        }
    }
    DenseOperator::new(m, OperatorKind::Q)
}

/// Permutation matrix of `ω_1⊗…⊗ω_r ↦ ω_r⊗ω_1⊗…⊗ω_{r−1}`.
pub fn build_t(params: &HierParams) -> Result<DenseOperator> {
    let dim = params.check_dense()?;
    let (p, r) = (params.p(), params.r());
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut word = vec![0usize; r];
    for col in 0..dim {
        // digits of col, slot 1 most significant
        let mut rest = col;
        for slot in (0..r).rev() {
            word[slot] = rest % p;
            rest /= p;
        }
        word.rotate_right(1);
        let row = word.iter().fold(0, |acc, &d| acc * p + d);
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    DenseOperator::new(m, OperatorKind::T)
}

/// Block-rectangular hierarchical matrix `T·Q`.
pub fn build_qrect(params: &HierParams) -> Result<DenseOperator> {
    let t = build_t(params)?;
    let q = build_q(params)?;
    DenseOperator::new(t.entries * q.entries, OperatorKind::Qrect)
}
