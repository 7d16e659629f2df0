use std::fmt::Debug;
use std::sync::Arc;

use rayon::prelude::*;

use super::distribution::Distribution;
use super::tensor::{tensor_sco, TensorElem, TensorModel};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::report::Witness;
use crate::simplicial::Sco;

type StateFn<T> = Arc<dyn Fn(usize, &T) -> Result<Scalar> + Send + Sync>;
type MulFn<T> = Arc<dyn Fn(&T, &T) -> Result<T> + Send + Sync>;
type AdjFn<T> = Arc<dyn Fn(&T) -> Result<T> + Send + Sync>;

/// An SCO of unital algebras with a state on every level, plus named level-0
/// elements that generate the random variables.
#[derive(Clone)]
pub struct ProbabilitySco<T> {
    sco: Sco<T>,
    letters: Vec<(String, T)>,
    state: StateFn<T>,
    mul: MulFn<T>,
    adjoint: Option<AdjFn<T>>,
}

impl<T> ProbabilitySco<T>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    /// `state(n, x)` is `φ_n(x)` for `x` at level `n`; `mul` multiplies two
    /// elements of the same level.
    pub fn new(
        sco: Sco<T>,
        letters: Vec<(String, T)>,
        state: impl Fn(usize, &T) -> Result<Scalar> + Send + Sync + 'static,
        mul: impl Fn(&T, &T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        ProbabilitySco {
            sco,
            letters,
            state: Arc::new(state),
            mul: Arc::new(mul),
            adjoint: None,
        }
    }

    pub fn with_adjoint(mut self, adjoint: impl Fn(&T) -> Result<T> + Send + Sync + 'static) -> Self {
        self.adjoint = Some(Arc::new(adjoint));
        self
    }

    pub fn sco(&self) -> &Sco<T> {
        &self.sco
    }

    pub fn letters(&self) -> &[(String, T)] {
        &self.letters
    }

    pub fn state(&self, n: usize, x: &T) -> Result<Scalar> {
        (self.state)(n, x)
    }

    /// `φ_n ∘ δ^k = φ_{n-1}` on every tested element of every level below `n_max`.
    /// The augmentation level is skipped; its state is not modelled.
    pub fn verify_state(&self, seed: u64) -> Result<usize> {
        let mut checked = 0;
        for n in 1..=self.sco.n_max() {
            let xs = self.sco.elements(n as isize - 1, seed)?;
            let counts: Vec<Result<usize>> = xs
                .par_iter()
                .map(|x| {
                    let before = (self.state)(n - 1, x)?;
                    for k in 0..=n {
                        let after = (self.state)(n, &self.sco.coface(k, n, x)?)?;
                        if after != before {
                            return Err(Error::StateNotInvariant {
                                k,
                                n,
                                element: format!("{x:?}"),
                            });
                        }
                    }
                    Ok(n + 1)
                })
                .collect();
            for c in counts {
                checked += c?;
            }
        }
        Ok(checked)
    }

    /// Whether every coface commutes with the adjoint on tested elements.
    pub fn star_witness(&self, seed: u64) -> Result<Option<Witness>> {
        let adj = self
            .adjoint
            .as_ref()
            .ok_or_else(|| Error::StarUnavailable(format!("{} has no adjoint", self.sco.name())))?;
        for n in 1..=self.sco.n_max() {
            for x in self.sco.elements(n as isize - 1, seed)? {
                let xa = adj(&x)?;
                for k in 0..=n {
                    let lhs = self.sco.coface(k, n, &xa)?;
                    let rhs = adj(&self.sco.coface(k, n, &x)?)?;
                    if !self.sco.equiv(&lhs, &rhs) {
                        return Ok(Some(
                            Witness::new("δ^k(x*) = δ^k(x)*", format!("{x:?}"))
                                .k(k)
                                .level(n as isize)
                                .sides(format!("{lhs:?}"), format!("{rhs:?}")),
                        ));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `ι_N(x) = α_0^N μ_0 x`, realised at level `N` by `N` applications of `δ^0`.
    pub fn iota(&self, big_n: usize, x: &T) -> Result<T> {
        (1..=big_n).try_fold(x.clone(), |y, m| self.sco.coface(0, m, &y))
    }

    /// Carries `x` from level `from` to level `to` along the inclusions `δ^n`.
    pub fn lift(&self, x: &T, from: usize, to: usize) -> Result<T> {
        (from + 1..=to).try_fold(x.clone(), |y, m| self.sco.coface(m, m, &y))
    }

    fn letter(&self, name: &str) -> Result<&T> {
        self.letters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown letter {name}")))
    }

    fn moment(&self, w: &super::MomentWord) -> Result<Scalar> {
        let Some(top) = w.max_pos() else {
            return Ok(Scalar::one());
        };
        if top > self.sco.n_max() {
            return Err(Error::TruncationExceeded(format!(
                "{w} needs level {top} but n_max={}",
                self.sco.n_max()
            )));
        }
        let mut acc: Option<T> = None;
        for f in w.factors() {
            let y = self.lift(&self.iota(f.pos, self.letter(&f.letter)?)?, f.pos, top)?;
            acc = Some(match acc {
                None => y,
                Some(a) => (self.mul)(&a, &y)?,
            });
        }
        (self.state)(top, &acc.expect("nonempty word"))
    }

    /// Moments `φ(ι_{N_1}(b_1) ... ι_{N_R}(b_R))` computed at level `max N_r`.
    ///
    /// Star mode is switched on when an adjoint is present, the letters are
    /// closed under it and the cofaces commute with it on tested elements.
    pub fn distribution(&self, seed: u64) -> Result<Distribution> {
        let me = self.clone();
        let names = self.letters.iter().map(|(n, _)| n.clone()).collect();
        let d = Distribution::new(format!("sequence from {}", self.sco.name()), names, move |w| me.moment(w))?;
        let Some(adj) = &self.adjoint else {
            return Ok(d);
        };
        if self.star_witness(seed)?.is_some() {
            return Ok(d);
        }
        let mut pairs = Vec::new();
        for (n, x) in &self.letters {
            let xa = adj(x)?;
            match self.letters.iter().find(|(_, y)| self.sco.equiv(y, &xa)) {
                Some((m, _)) => pairs.push((n.clone(), m.clone())),
                None => return Ok(d),
            }
        }
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        d.with_involution(&refs)
    }

    /// Like [`distribution`](Self::distribution) but fails with the
    /// incompatibility witness when star mode is not available.
    pub fn star_distribution(&self, seed: u64) -> Result<Distribution> {
        if let Some(w) = self.star_witness(seed)? {
            return Err(Error::StarUnavailable(w.to_string()));
        }
        let d = self.distribution(seed)?;
        if !d.star_mode() {
            return Err(Error::StarUnavailable("letters are not closed under the adjoint".into()));
        }
        Ok(d)
    }
}

/// The random variable `ι_N` of the sequence defined by `s`.
pub fn sco_to_sequence<T>(s: &ProbabilitySco<T>, big_n: usize) -> impl Fn(&T) -> Result<T> + '_
where
    T: Clone + Debug + Send + Sync + 'static,
{
    move |x| s.iota(big_n, x)
}

/// The tensor SCO of `model` with its product state.
pub fn tensor_probability_sco(model: &TensorModel, n_max: usize) -> ProbabilitySco<TensorElem> {
    let weights = model.weights().to_vec();
    let letters = model
        .letters()
        .iter()
        .map(|(n, m)| (n.clone(), TensorElem::from_matrix(m)))
        .collect();
    ProbabilitySco::new(
        tensor_sco(model.dim(), n_max, 32),
        letters,
        move |_, x: &TensorElem| Ok(x.state(&weights)),
        |a: &TensorElem, b: &TensorElem| a.mul(b),
    )
    .with_adjoint(|x: &TensorElem| Ok(x.adjoint()))
}
