use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A bijection of `{0..n-1}`, stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange(format!("({a} {b}) in S_{n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    /// The cycle `(k k+1 ... n-1)` on `{0..n-1}`: `k -> k+1 -> ... -> n-1 -> k`.
    pub fn cycle_to_end(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange(format!("cycle start {k} in S_{n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (i, img) in images.iter_mut().enumerate().skip(k) {
            *img = if i + 1 == n { k } else { i + 1 };
        }
        Ok(Permutation { images })
    }

    /// Every permutation of `{0..n-1}` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(format!(
                "composing S_{} with S_{}",
                self.size(),
                other.size()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Permutation { images }
    }

    /// Extends to `{0..n-1}` by fixing the new points.
    pub fn extend(&self, n: usize) -> Result<Permutation> {
        if n < self.size() {
            return Err(Error::DimensionMismatch(format!("cannot shrink S_{} to S_{n}", self.size())));
        }
        let mut images = self.images.clone();
        images.extend(self.size()..n);
        Ok(Permutation { images })
    }

    /// The matrix with `P e_i = e_{p(i)}`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.size();
        let mut m = Matrix::zeros(n, n);
        for (i, &p) in self.images.iter().enumerate() {
            m.set(p, i, Scalar::one());
        }
        m
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_counts() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(5).len(), 120);
    }

    #[test]
    fn cycle_images() {
        let c = Permutation::cycle_to_end(4, 1).unwrap();
        assert_eq!(c.images(), &[0, 2, 3, 1]);
    }

    #[test]
    fn matrix_is_a_homomorphism() {
        let ps = Permutation::all(3);
        for p in &ps {
            for q in &ps {
                let pq = p.compose(q).unwrap();
                assert_eq!(pq.to_matrix(), p.to_matrix().mul(&q.to_matrix()).unwrap());
            }
            assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(3));
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,2]").is_err());
        let p: Permutation = serde_json::from_str("[1,0,2]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,2]");
    }
}
