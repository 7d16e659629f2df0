use std::fmt::Debug;

use rayon::prelude::*;

use super::word::BraidWord;
use crate::error::{Error, Result};
use crate::report::Witness;

/// An action of the positive braid monoid (or the braid group) on a set.
///
/// `generator_bound` is the index `K` up to which generators are modelled.
/// For a truncated action, generators above `K` are outside the model and
/// applying them is an error; otherwise they act as the identity.
pub trait BraidAction: Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn name(&self) -> String;

    /// `σ_gen x` for `1 <= gen <= K`.
    fn apply_generator(&self, gen: usize, x: &Self::Elem) -> Result<Self::Elem>;

    fn apply_generator_inverse(&self, gen: usize, _x: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::InvalidParameter(format!(
            "{} is a monoid action; σ_{gen} has no inverse here",
            self.name()
        )))
    }

    fn generator_bound(&self) -> Option<usize>;

    /// An index beyond which every generator fixes `x`. Defaults to `K`.
    fn stable_beyond(&self, _x: &Self::Elem) -> Option<usize> {
        self.generator_bound()
    }

    /// True when generators above `K` are not part of the model.
    fn truncated(&self) -> bool {
        true
    }

    fn apply(&self, gen: usize, x: &Self::Elem) -> Result<Self::Elem> {
        self.dispatch(gen, x, false)
    }

    fn apply_inverse(&self, gen: usize, x: &Self::Elem) -> Result<Self::Elem> {
        self.dispatch(gen, x, true)
    }

    #[doc(hidden)]
    fn dispatch(&self, gen: usize, x: &Self::Elem, inverse: bool) -> Result<Self::Elem> {
        if gen == 0 {
            return Err(Error::InvalidParameter("generator indices start at 1".into()));
        }
        match self.generator_bound() {
            Some(k) if gen > k => {
                if self.truncated() {
                    Err(Error::TruncationExceeded(format!(
                        "σ_{gen} is beyond the modelled generators σ_1..σ_{k} of {}",
                        self.name()
                    )))
                } else {
                    Ok(x.clone())
                }
            }
            _ if inverse => self.apply_generator_inverse(gen, x),
            _ => self.apply_generator(gen, x),
        }
    }
}

/// Applies `w` to `x`, rightmost letter first.
pub fn apply_word<A: BraidAction + ?Sized>(a: &A, w: &BraidWord, x: &A::Elem) -> Result<A::Elem> {
    let mut y = x.clone();
    for l in w.letters().iter().rev() {
        y = if l.inverse {
            a.apply_inverse(l.gen, &y)?
        } else {
            a.apply(l.gen, &y)?
        };
    }
    Ok(y)
}

/// The smallest `n >= -1` with `σ_k x = x` for every `k >= n + 2`, where the
/// check runs up to the element's stabilization index.
pub fn level_of<A: BraidAction + ?Sized>(x: &A::Elem, a: &A) -> Result<isize> {
    let top = a.stable_beyond(x).ok_or(Error::NoStabilizationBound)?;
    for k in (1..=top).rev() {
        if a.apply(k, x)? != *x {
            // σ_k moves x, so n + 2 > k
            return Ok(k as isize - 1);
        }
    }
    Ok(-1)
}

/// Checks (B1) for `|i - j| = 1` and (B2) for `|i - j| >= 2` with
/// `1 <= i < j <= bound` on every element. Returns the number of checks and
/// the first violation.
pub fn check_braid_relations<A: BraidAction + ?Sized>(
    a: &A,
    bound: usize,
    elements: &[A::Elem],
) -> Result<(usize, Option<Witness>)> {
    let results: Vec<Result<(usize, Option<Witness>)>> = elements
        .par_iter()
        .map(|x| {
            let mut count = 0;
            for i in 1..=bound {
                for j in i + 1..=bound {
                    count += 1;
                    let (rel, lhs, rhs) = if j == i + 1 {
                        let l = a.apply(i, &a.apply(j, &a.apply(i, x)?)?)?;
                        let r = a.apply(j, &a.apply(i, &a.apply(j, x)?)?)?;
                        ("B1", l, r)
                    } else {
                        let l = a.apply(i, &a.apply(j, x)?)?;
                        let r = a.apply(j, &a.apply(i, x)?)?;
                        ("B2", l, r)
                    };
                    if lhs != rhs {
                        let w = Witness::new(format!("braid relation {rel}"), format!("{x:?}"))
                            .ij(i, j)
                            .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                        return Ok((count, Some(w)));
                    }
                }
            }
            Ok((count, None))
        })
        .collect();
    let mut total = 0;
    for r in results {
        let (c, w) = r?;
        total += c;
        if w.is_some() {
            return Ok((total, w));
        }
    }
    Ok((total, None))
}

/// Like [`check_braid_relations`] but as an error carrying the witness.
pub fn require_braid_relations<A: BraidAction + ?Sized>(
    a: &A,
    bound: usize,
    elements: &[A::Elem],
) -> Result<usize> {
    let (count, w) = check_braid_relations(a, bound, elements)?;
    match w {
        None => Ok(count),
        Some(w) => Err(Error::BraidRelation {
            relation: if w.relation.ends_with("B1") { "B1" } else { "B2" },
            i: w.i.unwrap_or(0),
            j: w.j.unwrap_or(0),
            element: w.element,
        }),
    }
}
