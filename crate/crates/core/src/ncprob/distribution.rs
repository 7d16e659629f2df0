use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::word::{free_coface, Factor, MomentWord};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::report::{Status, VerifyReport, Witness};
use crate::simplicial::CheckMode;

pub type EvalFn = Arc<dyn Fn(&MomentWord) -> Result<Scalar> + Send + Sync>;

/// The moments of a random sequence, given as an evaluation oracle.
#[derive(Clone)]
pub struct Distribution {
    name: String,
    alphabet: Vec<String>,
    /// `involution[i]` is the index of the adjoint of letter `i`; present iff star mode.
    involution: Option<Vec<usize>>,
    eval: EvalFn,
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Distribution")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .field("star_mode", &self.star_mode())
            .finish()
    }
}

impl Distribution {
    /// Fails unless the empty word evaluates to 1.
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        eval: impl Fn(&MomentWord) -> Result<Scalar> + Send + Sync + 'static,
    ) -> Result<Self> {
        let d = Distribution {
            name: name.into(),
            alphabet,
            involution: None,
            eval: Arc::new(eval),
        };
        let unit = (d.eval)(&MomentWord::empty())?;
        if !unit.is_one() {
            return Err(Error::InvalidParameter(format!("{}: empty moment is {unit}, not 1", d.name)));
        }
        Ok(d)
    }

    /// A finite table of moments; unlisted nonempty words get `default`.
    pub fn from_table(
        name: impl Into<String>,
        alphabet: Vec<String>,
        entries: Vec<(MomentWord, Scalar)>,
        default: Scalar,
    ) -> Result<Self> {
        let table: HashMap<MomentWord, Scalar> = entries.into_iter().collect();
        Distribution::new(name, alphabet, move |w| {
            Ok(if w.is_empty() {
                Scalar::one()
            } else {
                table.get(w).cloned().unwrap_or_else(|| default.clone())
            })
        })
    }

    /// Turns on star mode. `pairs` lists `(letter, adjoint letter)`; letters
    /// not mentioned are self-adjoint.
    pub fn with_involution(mut self, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut inv: Vec<usize> = (0..self.alphabet.len()).collect();
        for (a, b) in pairs {
            let (i, j) = (self.letter_index(a)?, self.letter_index(b)?);
            inv[i] = j;
            inv[j] = i;
        }
        self.involution = Some(inv);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn star_mode(&self) -> bool {
        self.involution.is_some()
    }

    fn letter_index(&self, l: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|a| a == l)
            .ok_or_else(|| Error::InvalidParameter(format!("letter {l} not in {:?}", self.alphabet)))
    }

    /// The moment of `w`. Letters must belong to the alphabet, and starred
    /// letters are only accepted in star mode, where they are replaced by
    /// their adjoint letters before the oracle sees the word.
    pub fn eval(&self, w: &MomentWord) -> Result<Scalar> {
        let mut plain = Vec::with_capacity(w.len());
        for f in w.factors() {
            let i = self.letter_index(&f.letter)?;
            match (&self.involution, f.star) {
                (_, false) => plain.push(f.clone()),
                (Some(inv), true) => plain.push(Factor::new(f.pos, self.alphabet[inv[i]].clone())),
                (None, true) => {
                    return Err(Error::StarUnavailable(format!("{} has no involution; got {w}", self.name)))
                }
            }
        }
        (self.eval)(&MomentWord::new(plain)).map_err(|e| match e {
            Error::Oracle { .. } => e,
            other => Error::Oracle {
                word: w.to_string(),
                reason: other.to_string(),
            },
        })
    }

    /// Every word of length `1..=degree` with positions `0..=pos_bound`, ordered
    /// by length and then lexicographically; starred letters only when `star`.
    pub fn words(&self, degree: usize, pos_bound: usize, star: bool) -> Vec<MomentWord> {
        let mut choices = Vec::new();
        for pos in 0..=pos_bound {
            for l in &self.alphabet {
                choices.push(Factor::new(pos, l.clone()));
                if star {
                    choices.push(Factor::starred(pos, l.clone()));
                }
            }
        }
        let mut out = Vec::new();
        let mut layer = vec![MomentWord::empty()];
        for _ in 0..degree {
            layer = layer
                .iter()
                .flat_map(|w| choices.iter().map(move |c| w.concat(&MomentWord::new(vec![c.clone()]))))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// A failing `(word, reindexing)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadWitness {
    pub word: MomentWord,
    /// The reindexing skips this position.
    pub skip: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpreadabilityReport {
    pub verdict: Status,
    /// Number of `(word, reindexing)` pairs compared.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SpreadWitness>,
    pub degree: usize,
    pub pos_bound: usize,
    pub star: bool,
    pub notes: Vec<String>,
}

impl SpreadabilityReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn to_verify_report(&self, suite: impl Into<String>) -> VerifyReport {
        let mut r = VerifyReport::new(suite, CheckMode::Exhaustive);
        r.checked_count = self.checked;
        if let Some(w) = &self.witness {
            r.fail(
                Witness::new("spreadability", w.word.to_string())
                    .k(w.skip)
                    .sides(w.lhs.clone(), w.rhs.clone()),
            );
        }
        for n in &self.notes {
            r = r.note(n.clone());
        }
        r
    }
}

fn check_bounds(d: &Distribution, degree: usize, pos_bound: usize, star: bool) -> Result<()> {
    if degree == 0 || pos_bound == 0 {
        return Err(Error::InvalidParameter("degree and pos_bound must be at least 1".into()));
    }
    if star && !d.star_mode() {
        return Err(Error::StarUnavailable(format!("{} has no involution", d.name)));
    }
    Ok(())
}

/// Compares `eval(w)` with `eval(w skipping k)` for every word in range and
/// every `k <= pos_bound`.
///
/// Every strictly increasing reindexing of a finite range is a composition of
/// single skips, so these pairs generate the full subsequence condition up to the bounds.
pub fn spreadability_check(d: &Distribution, degree: usize, pos_bound: usize, star: bool) -> Result<SpreadabilityReport> {
    check_bounds(d, degree, pos_bound, star)?;
    let words = d.words(degree, pos_bound, star);
    let per_word: Vec<Result<(usize, Option<SpreadWitness>)>> = words
        .par_iter()
        .map(|w| {
            let base = d.eval(w)?;
            for k in 0..=pos_bound {
                let moved = d.eval(&w.skip(k))?;
                if moved != base {
                    let wit = SpreadWitness {
                        word: w.clone(),
                        skip: k,
                        lhs: base.to_string(),
                        rhs: moved.to_string(),
                    };
                    return Ok((k + 1, Some(wit)));
                }
            }
            Ok((pos_bound + 1, None))
        })
        .collect();
    let mut checked = 0;
    let mut witness = None;
    for r in per_word {
        let (c, w) = r?;
        checked += c;
        if w.is_some() {
            witness = w;
            break;
        }
    }
    Ok(SpreadabilityReport {
        verdict: Status::from_bool(witness.is_none()),
        checked,
        witness,
        degree,
        pos_bound,
        star,
        notes: vec![format!(
            "words of length <= {degree} at positions 0..={pos_bound}{}; reindexings reduced to single skips k <= {pos_bound}",
            if star { " with starred letters" } else { "" }
        )],
    })
}

/// Whether `eval ∘ δ^k = eval` for the free-product cofaces into every level
/// `n` that holds the word, up to level `pos_bound + 1`.
pub fn coface_invariance_check(d: &Distribution, degree: usize, pos_bound: usize, star: bool) -> Result<bool> {
    check_bounds(d, degree, pos_bound, star)?;
    let words = d.words(degree, pos_bound, star);
    let bad = words.par_iter().map(|w| -> Result<bool> {
        let base = d.eval(w)?;
        let lowest = w.max_pos().map_or(0, |p| p + 1);
        for n in lowest..=pos_bound + 1 {
            for k in 0..=n {
                if d.eval(&free_coface(k, n, w)?)? != base {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    });
    let found: Vec<bool> = bad.collect::<Result<_>>()?;
    Ok(!found.into_iter().any(|b| b))
}

/// Confirms `d` is a *-distribution before star-mode spreadability checks.
///
/// On every word `w` of length at most 2 at positions `0..=2`, including
/// starred letters, checks `eval(w*) = conj(eval(w))` and that `eval(w* w)` is
/// a nonnegative real.
pub fn star_spreadability_mode(d: &Distribution) -> Result<Distribution> {
    if !d.star_mode() {
        return Err(Error::StarUnavailable(format!("{} has no involution", d.name)));
    }
    for w in d.words(2, 2, true) {
        let v = d.eval(&w)?;
        let a = d.eval(&w.adjoint())?;
        if a != v.conj() {
            return Err(Error::NotStarDistribution(format!("φ({}) = {a} but φ({w}) = {v}", w.adjoint())));
        }
        let p = d.eval(&w.adjoint().concat(&w))?;
        if !p.is_nonnegative_real() {
            return Err(Error::NotStarDistribution(format!("φ(w*w) = {p} for w = {w}")));
        }
    }
    Ok(d.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    /// Adjacent pairs have moment 1, every other nonempty word 0.
    pub(crate) fn broken_table() -> Distribution {
        let entries = (0..6)
            .map(|n| (MomentWord::plain([(n, "b"), (n + 1, "b")]), Scalar::one()))
            .collect();
        Distribution::from_table("broken table", letters(&["b"]), entries, Scalar::zero()).unwrap()
    }

    #[test]
    fn broken_table_fails_at_skip_one() {
        let r = spreadability_check(&broken_table(), 2, 2, false).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!(w.word, MomentWord::plain([(0, "b"), (1, "b")]));
        assert_eq!(w.skip, 1);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "0"));
        assert!(!coface_invariance_check(&broken_table(), 2, 2, false).unwrap());
    }

    #[test]
    fn constant_moments_are_spreadable() {
        let d = Distribution::new("constant", letters(&["a", "b"]), |w| {
            Ok(Scalar::ratio(1, 1 + w.len() as i64))
        })
        .unwrap();
        let r = spreadability_check(&d, 3, 2, false).unwrap();
        assert!(r.passed());
        // words: 6 + 36 + 216, each against 3 skips
        assert_eq!(r.checked, (6 + 36 + 216) * 3);
        assert!(coface_invariance_check(&d, 3, 2, false).unwrap());
    }

    #[test]
    fn unital_and_alphabet_errors() {
        assert!(Distribution::new("bad", letters(&["a"]), |_| Ok(Scalar::zero())).is_err());
        let d = broken_table();
        assert!(d.eval(&MomentWord::plain([(0, "z")])).is_err());
        assert!(matches!(
            spreadability_check(&d, 2, 2, true),
            Err(Error::StarUnavailable(_))
        ));
        assert!(spreadability_check(&d, 0, 2, false).is_err());
    }

    #[test]
    fn oracle_failure_names_the_word() {
        let d = Distribution::new("partial", letters(&["a"]), |w| {
            if w.len() > 1 {
                Err(Error::DivisionByZero)
            } else {
                Ok(Scalar::one())
            }
        })
        .unwrap();
        match spreadability_check(&d, 2, 1, false) {
            Err(Error::Oracle { word, .. }) => assert_eq!(word, "(0,a)(0,a)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn positivity_spot_check() {
        // φ(a) = -1 for every nonempty word in a self-adjoint letter: φ(a a) < 0
        let d = Distribution::new("negative", letters(&["a"]), |w| {
            Ok(if w.is_empty() { Scalar::one() } else { Scalar::from_int(-1) })
        })
        .unwrap()
        .with_involution(&[])
        .unwrap();
        assert!(matches!(star_spreadability_mode(&d), Err(Error::NotStarDistribution(_))));
        assert!(matches!(
            star_spreadability_mode(&broken_table()),
            Err(Error::StarUnavailable(_))
        ));
    }
}
