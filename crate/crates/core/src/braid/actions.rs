use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use rand::Rng as _;

use super::action::BraidAction;
use crate::algebra::{Matrix, Scalar, Vector};
use crate::error::{Error, Result};
use crate::simplicial::Carrier;

/// A sequence `x_0, x_1, ...` that is constant from some position on, stored
/// as the shortest prefix followed by the repeated tail value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventuallyConstant {
    prefix: Vec<u32>,
    tail: u32,
}

impl EventuallyConstant {
    pub fn new(mut prefix: Vec<u32>, tail: u32) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        EventuallyConstant { prefix, tail }
    }

    pub fn constant(tail: u32) -> Self {
        EventuallyConstant::new(Vec::new(), tail)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    /// Every sequence over `{0..alphabet-1}` that is constant from position `len` on.
    pub fn enumerate(alphabet: u32, len: usize) -> Vec<EventuallyConstant> {
        let mut out = Vec::new();
        let mut digits = vec![0u32; len + 1];
        loop {
            let (tail, prefix) = digits.split_last().unwrap();
            out.push(EventuallyConstant::new(prefix.to_vec(), *tail));
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < alphabet {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for EventuallyConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for x in &self.prefix {
            write!(f, "{x},")?;
        }
        write!(f, "{}...)", self.tail)
    }
}

/// `σ_i` swaps positions `i-1` and `i` of an eventually constant sequence.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlipAction;

impl FlipAction {
    /// Carrier of level `n`: sequences constant from position `n+1` on.
    pub fn level_carrier(alphabet: u32, n: isize) -> Carrier<EventuallyConstant> {
        Carrier::finite(EventuallyConstant::enumerate(alphabet, (n + 1).max(0) as usize))
    }
}

impl BraidAction for FlipAction {
    type Elem = EventuallyConstant;

    fn name(&self) -> String {
        "flip".into()
    }

    fn apply_generator(&self, gen: usize, x: &EventuallyConstant) -> Result<EventuallyConstant> {
        if gen > x.prefix.len() {
            return Ok(x.clone());
        }
        let mut p = x.prefix.clone();
        if p.len() < gen + 1 {
            p.resize(gen + 1, x.tail);
        }
        p.swap(gen - 1, gen);
        Ok(EventuallyConstant::new(p, x.tail))
    }

    fn apply_generator_inverse(&self, gen: usize, x: &EventuallyConstant) -> Result<EventuallyConstant> {
        self.apply_generator(gen, x)
    }

    fn generator_bound(&self) -> Option<usize> {
        None
    }

    fn stable_beyond(&self, x: &EventuallyConstant) -> Option<usize> {
        Some(x.prefix.len())
    }

    fn truncated(&self) -> bool {
        false
    }
}

/// Every generator acts as the identity.
pub struct TrivialAction<T>(PhantomData<fn() -> T>);

impl<T> Default for TrivialAction<T> {
    fn default() -> Self {
        TrivialAction(PhantomData)
    }
}

impl<T: Clone + fmt::Debug + PartialEq + Send + Sync + 'static> BraidAction for TrivialAction<T> {
    type Elem = T;

    fn name(&self) -> String {
        "trivial".into()
    }

    fn apply_generator(&self, _gen: usize, x: &T) -> Result<T> {
        Ok(x.clone())
    }

    fn apply_generator_inverse(&self, _gen: usize, x: &T) -> Result<T> {
        Ok(x.clone())
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(0)
    }

    fn truncated(&self) -> bool {
        false
    }
}

pub type GeneratorFn<T> = Arc<dyn Fn(usize, &T) -> Result<T> + Send + Sync>;

/// An action given by a closure on generators. Used for ad hoc models and mutants.
#[derive(Clone)]
pub struct FnAction<T> {
    name: String,
    bound: usize,
    truncated: bool,
    forward: GeneratorFn<T>,
    backward: Option<GeneratorFn<T>>,
}

impl<T> FnAction<T> {
    pub fn new(
        name: impl Into<String>,
        bound: usize,
        forward: impl Fn(usize, &T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        FnAction {
            name: name.into(),
            bound,
            truncated: true,
            forward: Arc::new(forward),
            backward: None,
        }
    }

    pub fn with_inverse(mut self, backward: impl Fn(usize, &T) -> Result<T> + Send + Sync + 'static) -> Self {
        self.backward = Some(Arc::new(backward));
        self
    }

    /// Declares that generators above the bound genuinely act as the identity.
    pub fn untruncated(mut self) -> Self {
        self.truncated = false;
        self
    }
}

impl<T: Clone + fmt::Debug + PartialEq + Send + Sync + 'static> BraidAction for FnAction<T> {
    type Elem = T;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn apply_generator(&self, gen: usize, x: &T) -> Result<T> {
        (self.forward)(gen, x)
    }

    fn apply_generator_inverse(&self, gen: usize, x: &T) -> Result<T> {
        match &self.backward {
            Some(b) => b(gen, x),
            None => Err(Error::InvalidParameter(format!("{} has no inverses", self.name))),
        }
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(self.bound)
    }

    fn truncated(&self) -> bool {
        self.truncated
    }
}

/// A linear action on column vectors: `σ_k` acts by the `k`-th matrix.
#[derive(Clone, Debug)]
pub struct MatrixAction {
    name: String,
    dim: usize,
    generators: Vec<Matrix>,
    inverses: Vec<Matrix>,
    truncated: bool,
}

impl MatrixAction {
    /// `generators[k-1]` is the matrix of `σ_k`. All must be invertible.
    pub fn new(name: impl Into<String>, dim: usize, generators: Vec<Matrix>, truncated: bool) -> Result<Self> {
        let mut inverses = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            inverses.push(g.inverse()?);
        }
        Ok(MatrixAction {
            name: name.into(),
            dim,
            generators,
            inverses,
            truncated,
        })
    }

    /// Coordinate swaps on `Q^dim`: `σ_k` exchanges `e_{k-1}` and `e_k`.
    pub fn flip(dim: usize) -> Self {
        let gens = (1..dim)
            .map(|k| {
                let mut m = Matrix::identity(dim);
                m.set(k - 1, k - 1, Scalar::zero());
                m.set(k, k, Scalar::zero());
                m.set(k - 1, k, Scalar::one());
                m.set(k, k - 1, Scalar::one());
                m
            })
            .collect();
        MatrixAction::new(format!("flip on Q^{dim}"), dim, gens, true).expect("permutation matrices")
    }

    /// The one-dimensional trivial representation.
    pub fn trivial() -> Self {
        MatrixAction::new("trivial", 1, Vec::new(), false).expect("no generators")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// The matrix of `σ_k`; the identity above the bound of an untruncated action.
    pub fn generator(&self, k: usize) -> Result<Matrix> {
        match self.generators.get(k.wrapping_sub(1)) {
            Some(m) => Ok(m.clone()),
            None if k >= 1 && !self.truncated => Ok(Matrix::identity(self.dim)),
            None => Err(Error::TruncationExceeded(format!("σ_{k} is not modelled by {}", self.name))),
        }
    }

    /// Replaces the matrix of `σ_k`. Used to build mutants.
    pub fn with_generator(mut self, k: usize, m: Matrix) -> Result<Self> {
        let inv = m.inverse()?;
        self.generators[k - 1] = m;
        self.inverses[k - 1] = inv;
        self.name = format!("{} (σ_{k} replaced)", self.name);
        Ok(self)
    }

    /// Basis of `{v : σ_k v = v for n+2 <= k <= K}`.
    pub fn level_basis(&self, n: isize) -> Result<Vec<Vector>> {
        let k_max = self.generators.len();
        let from = (n + 2).max(1) as usize;
        if from > k_max {
            return Ok((0..self.dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); self.dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect());
        }
        let id = Matrix::identity(self.dim);
        let blocks: Vec<Matrix> = (from..=k_max)
            .map(|k| self.generators[k - 1].sub(&id))
            .collect::<Result<_>>()?;
        let stacked = Matrix::vstack(self.dim, &blocks)?;
        Ok(stacked.rank_kernel().1)
    }

    /// Random small integer combinations of the level basis.
    pub fn level_carrier(&self, n: isize, samples: usize) -> Result<Carrier<Vector>> {
        let basis = self.level_basis(n)?;
        let dim = self.dim;
        Ok(Carrier::sampled(samples, move |rng| {
            let mut v = vec![Scalar::zero(); dim];
            for b in &basis {
                let c = Scalar::from_int(rng.gen_range(-3..=3));
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &(&c * bi);
                }
            }
            v
        }))
    }
}

impl BraidAction for MatrixAction {
    type Elem = Vector;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn apply_generator(&self, gen: usize, x: &Vector) -> Result<Vector> {
        self.generators[gen - 1].mul_vec(x)
    }

    fn apply_generator_inverse(&self, gen: usize, x: &Vector) -> Result<Vector> {
        self.inverses[gen - 1].mul_vec(x)
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(self.generators.len())
    }

    fn truncated(&self) -> bool {
        self.truncated
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{apply_word, check_braid_relations, level_of, BraidWord};

    fn seq(p: &[u32], t: u32) -> EventuallyConstant {
        EventuallyConstant::new(p.to_vec(), t)
    }

    #[test]
    fn normal_form_drops_tail_copies() {
        assert_eq!(seq(&[0, 1, 2, 2], 2), seq(&[0, 1], 2));
        assert_eq!(seq(&[2, 2], 2).prefix(), &[] as &[u32]);
    }

    #[test]
    fn flip_levels() {
        let a = FlipAction;
        assert_eq!(level_of(&seq(&[0, 1], 2), &a).unwrap(), 1);
        assert_eq!(level_of(&EventuallyConstant::constant(4), &a).unwrap(), -1);
        assert_eq!(level_of(&seq(&[1], 0), &a).unwrap(), 0);
    }

    #[test]
    fn trivial_levels() {
        let a = TrivialAction::<u8>::default();
        for x in 0..4u8 {
            assert_eq!(level_of(&x, &a).unwrap(), -1);
        }
    }

    #[test]
    fn flip_three_swaps() {
        let w = BraidWord::positive([1, 2, 3]).unwrap();
        let y = apply_word(&FlipAction, &w, &seq(&[0, 1], 2)).unwrap();
        assert_eq!(y, seq(&[2, 0, 1], 2));
    }

    #[test]
    fn enumeration_counts() {
        // sequences constant from position 2 over 3 letters: 3^3 distinct
        let all = EventuallyConstant::enumerate(3, 2);
        assert_eq!(all.len(), 27);
        let mut sorted: Vec<_> = all.iter().map(|s| format!("{s:?}")).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 27);
    }

    #[test]
    fn relations_hold_for_builtin_actions() {
        let xs = EventuallyConstant::enumerate(3, 4);
        assert!(check_braid_relations(&FlipAction, 6, &xs).unwrap().1.is_none());
        let m = MatrixAction::flip(5);
        let basis = m.level_basis(10).unwrap();
        assert!(check_braid_relations(&m, 4, &basis).unwrap().1.is_none());
    }

    #[test]
    fn mutant_generator_breaks_relations() {
        let m = MatrixAction::flip(4)
            .with_generator(2, Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 1, 1]]))
            .unwrap();
        let basis = m.level_basis(10).unwrap();
        let (_, w) = check_braid_relations(&m, 3, &basis).unwrap();
        assert_eq!(w.unwrap().relation, "braid relation B1");
    }

    #[test]
    fn truncated_generators_are_errors() {
        let m = MatrixAction::flip(3);
        assert!(matches!(m.apply(3, &vec![Scalar::zero(); 3]), Err(Error::TruncationExceeded(_))));
        let t = MatrixAction::trivial();
        assert_eq!(t.apply(7, &vec![Scalar::one()]).unwrap(), vec![Scalar::one()]);
    }

    #[test]
    fn flip_matrix_levels() {
        let m = MatrixAction::flip(5);
        // fixed by σ_3, σ_4: coordinates 2, 3, 4 equal
        assert_eq!(m.level_basis(1).unwrap().len(), 3);
        assert_eq!(m.level_basis(-1).unwrap().len(), 1);
        assert_eq!(m.level_basis(3).unwrap().len(), 5);
    }
}
