use std::sync::Arc;

use super::action::{apply_word, level_of, require_braid_relations, BraidAction};
use super::word::{coface_word, descending_word, BraidWord};
use crate::error::{Error, Result};
use crate::simplicial::{level_seed, Carrier, MemberFn, PartialShiftSystem, Sco};

/// Largest generator index the relation check covers for `a` on an SCO
/// truncated at `n_max`.
fn relation_bound<A: BraidAction + ?Sized>(a: &A, n_max: usize) -> usize {
    match a.generator_bound() {
        Some(k) if a.truncated() => k,
        // one step past the bound catches a claimed identity that is not one
        Some(k) => k + 1,
        None => n_max + 2,
    }
}

/// The augmented SCO of an action: level `n` holds elements fixed by every
/// `σ_k` with `k >= n + 2`, and `δ^k` into level `n` applies `σ_{k+1} ... σ_{n+1}`.
///
/// `carriers(n)` supplies the tested elements of level `n` for `n = -1..=n_max`.
/// `restriction` optionally narrows each level to a subset; membership of
/// every coface image is then part of the closure check in `sco_verify`.
pub fn braid_sco_build<A>(
    action: Arc<A>,
    n_max: usize,
    carriers: impl Fn(isize) -> Result<Carrier<A::Elem>>,
    restriction: Option<MemberFn<A::Elem>>,
    seed: u64,
) -> Result<Sco<A::Elem>>
where
    A: BraidAction + 'static,
{
    if let (Some(k), true) = (action.generator_bound(), action.truncated()) {
        if n_max + 1 > k {
            return Err(Error::TruncationExceeded(format!(
                "level {n_max} needs σ_{} but {} models only σ_1..σ_{k}",
                n_max + 1,
                action.name()
            )));
        }
    }
    let levels: Vec<Carrier<A::Elem>> = (-1..=n_max as isize).map(&carriers).collect::<Result<_>>()?;
    for (idx, c) in levels.iter().enumerate() {
        let n = idx as isize - 1;
        for x in c.elements(level_seed(seed, n)) {
            let l = level_of(&x, action.as_ref())?;
            let allowed = restriction.as_ref().map_or(true, |r| r(n, &x));
            if l > n || !allowed {
                return Err(Error::InvalidParameter(format!(
                    "carrier of level {n} contains {x:?} of level {l}"
                )));
            }
        }
    }
    let top = levels[n_max + 1].elements(level_seed(seed, n_max as isize));
    require_braid_relations(action.as_ref(), relation_bound(action.as_ref(), n_max), &top)?;

    let mut levels = levels.into_iter();
    let augmentation = levels.next().expect("level -1");
    let name = format!("braid {}", action.name());
    let bound_note = match action.generator_bound() {
        Some(k) if action.truncated() => format!("levels computed from σ_1..σ_{k}"),
        _ => "levels computed from each element's stabilization index".to_string(),
    };
    let a = Arc::clone(&action);
    let m = Arc::clone(&action);
    Sco::new(name, levels.collect(), move |k, n, x| apply_word(a.as_ref(), &coface_word(k, n)?, x))
        .map(|s| {
            s.with_augmentation(augmentation)
                .with_membership(move |n, y| {
                    level_of(y, m.as_ref()).map_or(false, |l| l <= n)
                        && restriction.as_ref().map_or(true, |r| r(n, y))
                })
                .with_note(bound_note)
        })
}

/// `α_n^N x` computed with the canonical shifts of `p` against the single word
/// `σ_{n+N} ... σ_{n+1}` applied to `x`, for `x` at level `n`.
pub fn lemma_power_check<A>(
    action: &A,
    p: &PartialShiftSystem<A::Elem>,
    n: usize,
    big_n: usize,
    x: &A::Elem,
) -> Result<bool>
where
    A: BraidAction + ?Sized,
{
    if big_n == 0 {
        return Err(Error::InvalidParameter("the power must be at least 1".into()));
    }
    if n + big_n > p.n_max() {
        return Err(Error::TruncationExceeded(format!(
            "α_{n}^{big_n} reaches level {} beyond n_max={}",
            n + big_n,
            p.n_max()
        )));
    }
    let lhs = p.apply_pow(n, big_n, &p.mu(n, x.clone()))?.value;
    let rhs = apply_word(action, &descending_word(n + big_n, n + 1)?, x)?;
    Ok(lhs == rhs)
}

/// The two words `(σ_{j+1}..σ_{n+1})(σ_{i+1}..σ_{n+1})σ_{n+1}` and
/// `(σ_{i+1}..σ_{n+1})(σ_j..σ_{n+1})`.
pub fn diagram_words(i: usize, j: usize, n: usize) -> Result<(BraidWord, BraidWord)> {
    if !(i < j && j <= n) {
        return Err(Error::IndexOutOfRange(format!("need i < j <= n, got i={i} j={j} n={n}")));
    }
    let lhs = BraidWord::positive((j + 1..=n + 1).chain(i + 1..=n + 1).chain([n + 1]))?;
    let rhs = BraidWord::positive((i + 1..=n + 1).chain(j..=n + 1))?;
    Ok((lhs, rhs))
}

/// Whether the two words of [`diagram_words`] agree on `x`, which must have level at most `n - 1`.
pub fn diagram_identity_check<A>(action: &A, i: usize, j: usize, n: usize, x: &A::Elem) -> Result<bool>
where
    A: BraidAction + ?Sized,
{
    let (lw, rw) = diagram_words(i, j, n)?;
    let l = level_of(x, action)?;
    if l > n as isize - 1 {
        return Err(Error::InvalidParameter(format!("{x:?} has level {l} > {}", n as isize - 1)));
    }
    Ok(apply_word(action, &lw, x)? == apply_word(action, &rw, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{ybe_action, EventuallyConstant, FlipAction, MatrixAction, PairRule, TrivialAction};
    use crate::simplicial::{sco_verify, shifts_from_sco};

    fn flip_sco(n_max: usize) -> Sco<EventuallyConstant> {
        braid_sco_build(Arc::new(FlipAction), n_max, |n| Ok(FlipAction::level_carrier(3, n)), None, 0).unwrap()
    }

    #[test]
    fn flip_sco_passes() {
        let s = flip_sco(5);
        let r = sco_verify(&s, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checked_count > 1000);
    }

    #[test]
    fn flip_coface_inserts_tail_value() {
        let s = flip_sco(3);
        let x = EventuallyConstant::new(vec![0, 1], 2);
        assert_eq!(s.coface(0, 2, &x).unwrap(), EventuallyConstant::new(vec![2, 0, 1], 2));
        // δ^n is the inclusion
        assert_eq!(s.coface(2, 2, &x).unwrap(), x);
    }

    #[test]
    fn trivial_action_cofaces_are_identities() {
        let a = Arc::new(TrivialAction::<u8>::default());
        let s = braid_sco_build(a, 3, |_| Ok(Carrier::finite(vec![0u8, 1, 2])), None, 0).unwrap();
        for n in 0..=3 {
            for k in 0..=n {
                assert_eq!(s.coface(k, n, &2).unwrap(), 2);
            }
        }
        assert!(sco_verify(&s, 0).unwrap().passed());
    }

    #[test]
    fn lemma_power_on_flip() {
        let s = flip_sco(5);
        let p = shifts_from_sco(&s, 0).unwrap();
        for n in 0..=3 {
            for big_n in 1..=2 {
                for x in FlipAction::level_carrier(3, n as isize).elements(0) {
                    assert!(lemma_power_check(&FlipAction, &p, n, big_n, &x).unwrap(), "n={n} N={big_n} {x:?}");
                }
            }
        }
        assert!(lemma_power_check(&FlipAction, &p, 3, 3, &EventuallyConstant::constant(0)).is_err());
    }

    #[test]
    fn diagram_identity_on_flip_and_trivial() {
        for x in FlipAction::level_carrier(3, 0).elements(0) {
            assert!(diagram_identity_check(&FlipAction, 0, 1, 1, &x).unwrap());
        }
        for n in 1..4 {
            for j in 1..=n {
                for i in 0..j {
                    assert!(diagram_identity_check(&TrivialAction::<u8>::default(), i, j, n, &5).unwrap());
                }
            }
        }
        assert!(diagram_words(1, 1, 2).is_err());
    }

    #[test]
    fn ybe_sco_on_four_coordinates() {
        let a = Arc::new(ybe_action(PairRule::cyclic3(), 4).unwrap());
        let u = a.universe();
        let b = Arc::clone(&a);
        let s = braid_sco_build(
            a,
            2,
            move |n| {
                let keep: Vec<Vec<u32>> =
                    u.iter().filter(|x| level_of(*x, b.as_ref()).unwrap() <= n).cloned().collect();
                Ok(Carrier::finite(keep))
            },
            None,
            0,
        )
        .unwrap();
        assert!(sco_verify(&s, 0).unwrap().passed());
    }

    #[test]
    fn truncation_is_enforced() {
        let a = Arc::new(MatrixAction::flip(4));
        let b = Arc::clone(&a);
        let r = braid_sco_build(a, 3, move |n| b.level_carrier(n, 5), None, 0);
        assert!(matches!(r, Err(Error::TruncationExceeded(_))));
    }

    #[test]
    fn relation_violation_is_an_error() {
        let bad = crate::braid::FnAction::new("bad", 3, |g, x: &u8| Ok(if g == 1 { x ^ 1 } else { (x + 1) % 4 }));
        let r = braid_sco_build(Arc::new(bad), 2, |_| Ok(Carrier::finite(vec![0u8, 1, 2, 3])), None, 0);
        assert!(matches!(r, Err(Error::BraidRelation { .. }) | Err(Error::InvalidParameter(_))));
    }
}
