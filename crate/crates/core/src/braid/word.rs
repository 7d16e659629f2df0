use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Artin generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn signed(self) -> i64 {
        if self.inverse {
            -(self.gen as i64)
        } else {
            self.gen as i64
        }
    }
}

/// A word in the Artin generators, read left to right. As an operator on a
/// set the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if letters.iter().any(|l| l.gen == 0) {
            return Err(Error::InvalidParameter("generator indices start at 1".into()));
        }
        Ok(BraidWord { letters })
    }

    /// Positive word from generator indices.
    pub fn positive(gens: impl IntoIterator<Item = usize>) -> Result<Self> {
        BraidWord::from_letters(gens.into_iter().map(Letter::pos).collect())
    }

    /// Parses the signed-integer form, e.g. `[1, 2, -1]`.
    pub fn from_signed(v: &[i64]) -> Result<Self> {
        let letters = v
            .iter()
            .map(|&g| match g {
                0 => Err(Error::Parse("0 is not a generator".into())),
                g if g > 0 => Ok(Letter::pos(g as usize)),
                g => Ok(Letter::neg(g.unsigned_abs() as usize)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BraidWord { letters })
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn max_gen(&self) -> usize {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// The formal inverse: reversed with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Shifts every generator index up by `by`.
    pub fn shifted(&self, by: usize) -> BraidWord {
        BraidWord {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    gen: l.gen + by,
                    inverse: l.inverse,
                })
                .collect(),
        }
    }
}

impl From<BraidWord> for Vec<i64> {
    fn from(w: BraidWord) -> Self {
        w.to_signed()
    }
}

impl TryFrom<Vec<i64>> for BraidWord {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        BraidWord::from_signed(&v)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_signed().iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `σ_{k+1} σ_{k+2} ... σ_{n+1}`, the word of the coface `δ^k` into level `n`.
pub fn coface_word(k: usize, n: usize) -> Result<BraidWord> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("coface index {k} exceeds level {n}")));
    }
    BraidWord::positive(k + 1..=n + 1)
}

/// `σ_{hi} σ_{hi-1} ... σ_{lo}`.
pub fn descending_word(hi: usize, lo: usize) -> Result<BraidWord> {
    BraidWord::positive((lo..=hi).rev())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coface_words() {
        assert_eq!(coface_word(0, 1).unwrap().to_signed(), vec![1, 2]);
        assert_eq!(coface_word(2, 2).unwrap().to_signed(), vec![3]);
        assert_eq!(coface_word(1, 3).unwrap().to_signed(), vec![2, 3, 4]);
        assert!(coface_word(3, 2).is_err());
    }

    #[test]
    fn signed_round_trip_and_json() {
        let w = BraidWord::from_signed(&[1, 2, -1]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,2,-1]");
        let back: BraidWord = serde_json::from_str("[1,2,-1]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<BraidWord>("[0]").is_err());
        assert_eq!(w.to_string(), "[1, 2, -1]");
    }

    #[test]
    fn inverse_and_concat() {
        let w = BraidWord::from_signed(&[1, -3, 2]).unwrap();
        assert_eq!(w.inverse().to_signed(), vec![-2, 3, -1]);
        let e = BraidWord::empty();
        assert_eq!(w.concat(&e), w);
        assert_eq!(e.concat(&w), w);
        assert!(!w.is_positive());
        assert_eq!(w.max_gen(), 3);
    }
}
