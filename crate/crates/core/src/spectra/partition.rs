use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structure of the zeros in a cyclic word: `m` zeros in `ℓ` clusters, with
/// `nu[i-1]` clusters of length exactly `i`.
///
/// Valid partitions satisfy `Σ i·ν_i = m` and `Σ ν_i ≤ r − m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterPartition {
    m: usize,
    nu: Vec<usize>,
}

impl ClusterPartition {
    /// `nu` is padded or trimmed to length `m`; entries past `m` must be zero.
    pub(crate) fn new(m: usize, mut nu: Vec<usize>) -> Self {
        debug_assert!(nu.iter().skip(m).all(|&x| x == 0));
        nu.resize(m, 0);
        Self { m, nu }
    }

    /// Validating constructor.
    pub fn try_new(r: usize, m: usize, nu: Vec<usize>) -> Result<Self> {
        let part = Self::new(m, nu);
        let weight: usize = part.nu.iter().enumerate().map(|(i, &n)| (i + 1) * n).sum();
        if weight != m || m == 0 || m >= r || part.ell() > r - m {
            return Err(Error::InvalidParams(format!(
                "nu = {:?} is not a constrained partition of m = {m} for r = {r}",
                part.nu
            )));
        }
        Ok(part)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `ν_1, …, ν_m`.
    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// Number of clusters `ℓ = Σ ν_i`.
    pub fn ell(&self) -> usize {
        self.nu.iter().sum()
    }

    /// Number of length-`r` words over a `p`-letter alphabet with this cyclic
    /// zero structure: `r (p−1)^{r−m} (r−m−1)! / ((r−m−ℓ)! Π ν_i!)`.
    pub fn multiplicity(&self, p: usize, r: usize) -> u64 {
        let free = (r - self.m) as u128;
        let ell = self.ell() as u128;
        // (free-1)! / (free-ell)! / Π ν_i!  =  C(free-1, ell-1) · ℓ!/Πν_i! / ℓ
        let num = r as u128 * binomial(free - 1, ell - 1) * multinomial(&self.nu) * (p as u128 - 1).pow(free as u32);
        debug_assert_eq!(num % ell, 0);
        u64::try_from(num / ell).expect("multiplicity fits in u64")
    }
}

impl fmt::Display for ClusterPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},nu=[", self.m)?;
        for (i, n) in self.nu.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("]")
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn multinomial(parts: &[usize]) -> u128 {
    let mut total = 0u128;
    let mut acc = 1u128;
    for &n in parts {
        let n = n as u128;
        total += n;
        acc *= binomial(total, n);
    }
    acc
}

/// All constrained partitions of `m` for depth `r`, in lexicographic order
/// of `(ν_1, ν_2, …, ν_m)`.
pub fn enumerate_partitions(r: usize, m: usize) -> Result<Vec<ClusterPartition>> {
    if m == 0 || m >= r {
        return Err(Error::InvalidParams(format!(
            "need 1 <= m <= r-1, got m = {m}, r = {r}"
        )));
    }
    let mut out = Vec::new();
    let mut nu = vec![0usize; m];
    fill(1, m, r - m, &mut nu, &mut out);
    Ok(out)
}

fn fill(len: usize, remaining: usize, clusters_left: usize, nu: &mut Vec<usize>, out: &mut Vec<ClusterPartition>) {
    if len > nu.len() {
        if remaining == 0 {
            out.push(ClusterPartition {
                m: nu.len(),
                nu: nu.clone(),
            });
        }
        return;
    }
    let max = (remaining / len).min(clusters_left);
    for count in 0..=max {
        nu[len - 1] = count;
        fill(len + 1, remaining - count * len, clusters_left - count, nu, out);
    }
    nu[len - 1] = 0;
}
