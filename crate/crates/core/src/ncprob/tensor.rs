use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::distribution::Distribution;
use super::word::MomentWord;
use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::simplicial::{Carrier, Sco};

/// The generator algebra `M_dim` with the diagonal state `φ_B(x) = Σ w_i x_ii`
/// and a finite alphabet of named elements.
#[derive(Clone, Debug)]
pub struct TensorModel {
    dim: usize,
    weights: Vec<Scalar>,
    letters: Vec<(String, Matrix)>,
}

fn unit(dim: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    m.set(i, j, Scalar::one());
    m
}

impl TensorModel {
    /// `weights` must be nonnegative rationals summing to 1.
    pub fn new(dim: usize, weights: Vec<Scalar>, letters: Vec<(String, Matrix)>) -> Result<Self> {
        if weights.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} weights for dimension {dim}", weights.len())));
        }
        let total = weights.iter().fold(Scalar::zero(), |acc, w| &acc + w);
        if !total.is_one() || weights.iter().any(|w| !w.is_real() || w.re().is_negative()) {
            return Err(Error::InvalidParameter(format!(
                "state weights {weights:?} are not a probability vector"
            )));
        }
        for (name, m) in &letters {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("letter {name} is not {dim}x{dim}")));
            }
        }
        Ok(TensorModel { dim, weights, letters })
    }

    /// All matrix units `E{i}{j}`, numbered from 1.
    pub fn matrix_units(dim: usize, weights: Vec<Scalar>) -> Result<Self> {
        let letters = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (format!("E{}{}", i + 1, j + 1), unit(dim, i, j))))
            .collect();
        TensorModel::new(dim, weights, letters)
    }

    /// The diagonal matrix units `E{i}{i}` only.
    pub fn diagonal(dim: usize, weights: Vec<Scalar>) -> Result<Self> {
        let letters = (0..dim).map(|i| (format!("E{}{}", i + 1, i + 1), unit(dim, i, i))).collect();
        TensorModel::new(dim, weights, letters)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn letters(&self) -> &[(String, Matrix)] {
        &self.letters
    }

    pub fn letter(&self, name: &str) -> Result<&Matrix> {
        self.letters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown letter {name}")))
    }

    pub fn phi(&self, m: &Matrix) -> Scalar {
        (0..self.dim).fold(Scalar::zero(), |acc, i| &acc + &(&self.weights[i] * m.get(i, i)))
    }

    /// Moments of the sequence placing each letter in its own tensor leg:
    /// the product over positions of `φ_B` of the letters at that position,
    /// multiplied in word order. Star mode uses the conjugate transpose when
    /// it is again a letter.
    pub fn distribution(&self) -> Result<Distribution> {
        let model = self.clone();
        let names = self.letters.iter().map(|(n, _)| n.clone()).collect();
        let d = Distribution::new(format!("tensor model M_{}", self.dim), names, move |w| model.moment(w))?;
        let pairs: Vec<(String, String)> = self
            .letters
            .iter()
            .filter_map(|(n, m)| {
                let a = m.conj_transpose();
                self.letters.iter().find(|(_, x)| *x == a).map(|(o, _)| (n.clone(), o.clone()))
            })
            .collect();
        if pairs.len() != self.letters.len() {
            return Ok(d);
        }
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        d.with_involution(&refs)
    }

    fn moment(&self, w: &MomentWord) -> Result<Scalar> {
        let mut legs: BTreeMap<usize, Matrix> = BTreeMap::new();
        for f in w.factors() {
            let m = self.letter(&f.letter)?;
            let leg = legs.entry(f.pos).or_insert_with(|| Matrix::identity(self.dim));
            *leg = leg.mul(m)?;
        }
        Ok(legs.values().fold(Scalar::one(), |acc, m| &acc * &self.phi(m)))
    }
}

/// An element of `M_dim^{⊗legs}` in the basis of tensor products of matrix
/// units; each key lists `i * dim + j` per leg. Zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    dim: usize,
    legs: usize,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl TensorElem {
    pub fn zero(dim: usize, legs: usize) -> Self {
        TensorElem {
            dim,
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ∈ M_dim^{⊗0}`, the unit of the augmentation.
    pub fn scalar_unit(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Scalar::one());
        TensorElem { dim, legs: 0, terms }
    }

    pub fn basis(dim: usize, key: Vec<u16>) -> Self {
        let legs = key.len();
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        TensorElem { dim, legs, terms }
    }

    /// Every tensor product of matrix units on `legs` legs.
    pub fn all_basis(dim: usize, legs: usize) -> Vec<TensorElem> {
        let d2 = (dim * dim) as u16;
        let mut keys = vec![Vec::new()];
        for _ in 0..legs {
            keys = keys
                .into_iter()
                .flat_map(|k: Vec<u16>| {
                    (0..d2).map(move |u| {
                        let mut k = k.clone();
                        k.push(u);
                        k
                    })
                })
                .collect();
        }
        keys.into_iter().map(|k| TensorElem::basis(dim, k)).collect()
    }

    /// A matrix placed on a single leg.
    pub fn from_matrix(m: &Matrix) -> Self {
        let dim = m.rows();
        let mut e = TensorElem::zero(dim, 1);
        for i in 0..dim {
            for j in 0..dim {
                e.add_term(vec![(i * dim + j) as u16], m.get(i, j).clone());
            }
        }
        e
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, Scalar> {
        &self.terms
    }

    fn add_term(&mut self, key: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Inserts `1` as a new leg at position `k`.
    pub fn insert_unit(&self, k: usize) -> Result<TensorElem> {
        if k > self.legs {
            return Err(Error::IndexOutOfRange(format!("leg {k} of {}", self.legs)));
        }
        let mut out = TensorElem::zero(self.dim, self.legs + 1);
        for (key, c) in &self.terms {
            for i in 0..self.dim {
                let mut nk = key.clone();
                nk.insert(k, (i * self.dim + i) as u16);
                out.add_term(nk, c.clone());
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &TensorElem) -> Result<TensorElem> {
        if self.legs != rhs.legs || self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplying {} legs by {} legs",
                self.legs, rhs.legs
            )));
        }
        let d = self.dim as u16;
        let mut out = TensorElem::zero(self.dim, self.legs);
        for (ka, ca) in &self.terms {
            'terms: for (kb, cb) in &rhs.terms {
                let mut key = Vec::with_capacity(self.legs);
                for (&a, &b) in ka.iter().zip(kb) {
                    // E_{ij} E_{kl} = δ_{jk} E_{il}
                    if a % d != b / d {
                        continue 'terms;
                    }
                    key.push((a / d) * d + b % d);
                }
                out.add_term(key, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> TensorElem {
        let d = self.dim as u16;
        let mut out = TensorElem::zero(self.dim, self.legs);
        for (k, c) in &self.terms {
            out.add_term(k.iter().map(|&u| (u % d) * d + u / d).collect(), c.conj());
        }
        out
    }

    /// `⊗ φ_B` with the given diagonal weights.
    pub fn state(&self, weights: &[Scalar]) -> Scalar {
        let d = self.dim as u16;
        let mut total = Scalar::zero();
        'terms: for (k, c) in &self.terms {
            let mut v = c.clone();
            for &u in k {
                if u / d != u % d {
                    continue 'terms;
                }
                v = &v * &weights[(u / d) as usize];
            }
            total += &v;
        }
        total
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let d = self.dim as u16;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k.iter().map(|u| format!("E{}{}", u / d + 1, u % d + 1)).collect();
                let body = if legs.is_empty() { "1".to_string() } else { legs.join("⊗") };
                if c.is_one() {
                    body
                } else {
                    format!("{c}·{body}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Largest level whose full basis is enumerated; above it carriers are sampled.
const FULL_BASIS_LEGS: usize = 6;

/// Level `n` is `M_dim^{⊗(n+1)}` and `δ^k` inserts `1` as leg `k`; the
/// augmentation is the scalars. Levels with at most six legs carry their
/// full matrix-unit basis, higher levels a sample of basis tensors.
pub fn tensor_sco(dim: usize, n_max: usize, samples: usize) -> Sco<TensorElem> {
    let d2 = (dim * dim) as u16;
    let levels = (0..=n_max)
        .map(|n| {
            let legs = n + 1;
            if legs <= FULL_BASIS_LEGS && (d2 as usize).pow(legs as u32) <= 1 << 14 {
                Carrier::finite(TensorElem::all_basis(dim, legs))
            } else {
                Carrier::sampled(samples, move |rng| {
                    use rand::Rng as _;
                    TensorElem::basis(dim, (0..legs).map(|_| rng.gen_range(0..d2)).collect())
                })
            }
        })
        .collect();
    Sco::new(format!("tensor powers of M_{dim}"), levels, move |k, n, x: &TensorElem| {
        if x.legs() != n {
            return Err(Error::DimensionMismatch(format!("δ^{k} into level {n} needs {n} legs, got {}", x.legs())));
        }
        x.insert_unit(k)
    })
    .expect("at least one level")
    .with_augmentation(Carrier::finite(vec![TensorElem::scalar_unit(dim)]))
    .with_membership(|n, x: &TensorElem| x.legs() as isize == n + 1)
}
