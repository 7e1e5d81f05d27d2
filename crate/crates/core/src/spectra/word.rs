use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::ClusterPartition;
use crate::error::{Error, Result};

/// A word `j_1 … j_r` over `{0, …, p−1}`.
///
/// The same word labels the computational basis vector `|e_{j_1}⟩⊗…⊗|e_{j_r}⟩`
/// and the character-basis vector `|j_1⟩⊗…⊗|j_r⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EncodingSequence {
    p: usize,
    word: Vec<u8>,
}

/// Where a word falls in the zero-cluster classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordClass {
    /// No zeros at all (`m = 0`).
    ZeroFree,
    /// `0 < m < r` zeros, with their cyclic cluster structure.
    Clustered(ClusterPartition),
    /// The all-zeros word (`m = r`).
    AllZero,
}

impl EncodingSequence {
    pub fn new(p: usize, word: Vec<u8>) -> Result<Self> {
        if p < 2 || p > u8::MAX as usize + 1 {
            return Err(Error::InvalidWord(format!("alphabet size {p} out of range")));
        }
        if word.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if let Some(&bad) = word.iter().find(|&&d| d as usize >= p) {
            return Err(Error::InvalidWord(format!("symbol {bad} not below p = {p}")));
        }
        Ok(Self { p, word })
    }

    pub fn zeros(p: usize, r: usize) -> Self {
        Self { p, word: vec![0; r] }
    }

    /// Word whose 0-based basis index is `index`.
    pub fn from_index(p: usize, r: usize, index: usize) -> Result<Self> {
        let dim = p
            .checked_pow(r as u32)
            .ok_or_else(|| Error::InvalidWord("p^r overflows".into()))?;
        if index >= dim {
            return Err(Error::InvalidWord(format!("index {index} >= p^r = {dim}")));
        }
        let mut word = vec![0u8; r];
        let mut rest = index;
        for slot in (0..r).rev() {
            word[slot] = (rest % p) as u8;
            rest /= p;
        }
        Ok(Self { p, word })
    }

    /// Parses a string of digits, e.g. `"0110"`.
    pub fn parse(p: usize, s: &str) -> Result<Self> {
        let word = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidWord(format!("bad symbol `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, word)
    }

    pub fn all(p: usize, r: usize) -> impl Iterator<Item = EncodingSequence> {
        let dim = p.pow(r as u32);
        (0..dim).map(move |i| EncodingSequence::from_index(p, r, i).expect("index in range"))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn r(&self) -> usize {
        self.word.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.word
    }

    /// 0-based position `Σ j_s p^{r−s}` in the computational basis.
    pub fn index(&self) -> usize {
        self.word.iter().fold(0, |acc, &d| acc * self.p + d as usize)
    }

    /// 1-based index `1 + Σ j_s p^{r−s}`.
    pub fn basis_index(&self) -> usize {
        self.index() + 1
    }

    /// Number of consecutive zeros at the end of the word.
    pub fn trailing_zeros(&self) -> usize {
        self.word.iter().rev().take_while(|&&d| d == 0).count()
    }

    pub fn zero_count(&self) -> usize {
        self.word.iter().filter(|&&d| d == 0).count()
    }

    /// `j_1 … j_r ↦ j_r j_1 … j_{r−1}`, the action of `T`.
    pub fn rotate_right(&self) -> Self {
        let mut word = self.word.clone();
        word.rotate_right(1);
        Self { p: self.p, word }
    }

    /// Smallest `d ≥ 1` with `T^d` fixing the word.
    pub fn period(&self) -> usize {
        let r = self.r();
        (1..=r)
            .find(|&d| r.is_multiple_of(d) && (0..r).all(|i| self.word[i] == self.word[(i + d) % r]))
            .unwrap_or(r)
    }

    /// Hamming distance to another word of the same length.
    pub fn hamming(&self, other: &EncodingSequence) -> usize {
        self.word.iter().zip(&other.word).filter(|(a, b)| a != b).count()
    }

    pub fn class(&self) -> WordClass {
        let r = self.r();
        let m = self.zero_count();
        if m == 0 {
            return WordClass::ZeroFree;
        }
        if m == r {
            return WordClass::AllZero;
        }
        // Start scanning just after a nonzero symbol so the cluster that
        // wraps around the end is read in one piece.
        let start = self
            .word
            .iter()
            .position(|&d| d != 0)
            .expect("word has a nonzero symbol")
            + 1;
        let mut nu = vec![0usize; m];
        let mut run = 0;
        for k in 0..r {
            if self.word[(start + k) % r] == 0 {
                run += 1;
            } else if run > 0 {
                nu[run - 1] += 1;
                run = 0;
            }
        }
        if run > 0 {
            nu[run - 1] += 1;
        }
        WordClass::Clustered(ClusterPartition::new(m, nu))
    }
}

impl fmt::Display for EncodingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.word {
            write!(f, "{}", char::from_digit(d as u32, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

/// Zero count and cyclic cluster structure of a word with `0 < m < r`.
pub fn classify_word(word: &EncodingSequence) -> Result<ClusterPartition> {
    match word.class() {
        WordClass::Clustered(part) => Ok(part),
        WordClass::ZeroFree => Err(Error::InvalidWord(format!(
            "{word} has no zeros; it belongs to the m = 0 class"
        ))),
        WordClass::AllZero => Err(Error::InvalidWord(format!(
            "{word} is all zeros; it belongs to the m = r class"
        ))),
    }
}
