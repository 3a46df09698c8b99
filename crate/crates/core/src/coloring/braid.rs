use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::Perm;

/// A braid on `k` strands as a word in `σ₁^{±1}, …, σ_{k−1}^{±1}`; letter
/// `i` stands for `σ_i` and `−i` for its inverse. Text form: `B3: s1 -s2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Malformed("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Malformed(format!("generator {l} out of range for {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Every crossing flipped.
    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Markov stabilization: one more strand and a trailing `σ_k^{±1}`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let k = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { k } else { -k });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Where each strand position ends up after the whole word.
    pub fn permutation(&self) -> Perm {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in images.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        Perm::from_images(images).expect("transpositions compose to a permutation")
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        self.permutation().cycle_count()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            if *l < 0 {
                write!(f, " -s{}", -l)?;
            } else {
                write!(f, " s{l}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("expected a braid like \"B3: s1 -s2\", got {s:?}"));
        let (head, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let strands = head.trim().strip_prefix('B').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?;
        let letters = body
            .split_whitespace()
            .map(|tok| {
                let (neg, rest) = match tok.strip_prefix('-') {
                    Some(r) => (true, r),
                    None => (false, tok),
                };
                let i: i32 = rest.strip_prefix('s').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if i <= 0 {
                    return Err(bad());
                }
                Ok(if neg { -i } else { i })
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }
}

impl From<BraidWord> for String {
    fn from(b: BraidWord) -> Self {
        b.to_string()
    }
}

impl TryFrom<String> for BraidWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
