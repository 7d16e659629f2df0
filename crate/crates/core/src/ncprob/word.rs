use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::nat_partial_shift;

/// One factor `λ_N(b)` or `λ_N(b)*` of a moment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub pos: usize,
    pub letter: String,
    #[serde(default)]
    pub star: bool,
}

impl Factor {
    pub fn new(pos: usize, letter: impl Into<String>) -> Self {
        Factor {
            pos,
            letter: letter.into(),
            star: false,
        }
    }

    pub fn starred(pos: usize, letter: impl Into<String>) -> Self {
        Factor {
            star: true,
            ..Factor::new(pos, letter)
        }
    }
}

/// A word in the free product of copies of the generator algebra, one copy per position.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentWord(Vec<Factor>);

impl MomentWord {
    pub fn empty() -> Self {
        MomentWord(Vec::new())
    }

    pub fn new(factors: Vec<Factor>) -> Self {
        MomentWord(factors)
    }

    /// `(pos, letter)` pairs without stars.
    pub fn plain<'a>(pairs: impl IntoIterator<Item = (usize, &'a str)>) -> Self {
        MomentWord(pairs.into_iter().map(|(p, l)| Factor::new(p, l)).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.0.iter().map(|f| f.pos).max()
    }

    pub fn has_star(&self) -> bool {
        self.0.iter().any(|f| f.star)
    }

    /// Sorted distinct positions.
    pub fn positions(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.0.iter().map(|f| f.pos).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    pub fn reindexed(&self, f: impl Fn(usize) -> usize) -> MomentWord {
        MomentWord(
            self.0
                .iter()
                .map(|x| Factor {
                    pos: f(x.pos),
                    ..x.clone()
                })
                .collect(),
        )
    }

    /// The word with position `k` skipped: `N -> N` below `k`, `N -> N + 1` from `k` on.
    pub fn skip(&self, k: usize) -> MomentWord {
        self.reindexed(|n| nat_partial_shift(k, n))
    }

    /// `w*`: reversed order, stars toggled.
    pub fn adjoint(&self) -> MomentWord {
        MomentWord(
            self.0
                .iter()
                .rev()
                .map(|f| Factor {
                    star: !f.star,
                    ..f.clone()
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &MomentWord) -> MomentWord {
        MomentWord(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl fmt::Display for MomentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for x in &self.0 {
            write!(f, "({},{}{})", x.pos, x.letter, if x.star { "*" } else { "" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for MomentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `δ^k` on the free product: `λ_N(b)` goes to `λ_N(b)` for `N < k` and to
/// `λ_{N+1}(b)` otherwise. `w` must live in level `n - 1`.
pub fn free_coface(k: usize, n: usize, w: &MomentWord) -> Result<MomentWord> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("δ^{k} into level {n}")));
    }
    if let Some(p) = w.max_pos() {
        if p + 1 > n {
            return Err(Error::IndexOutOfRange(format!("{w} has position {p}, beyond level {}", n as isize - 1)));
        }
    }
    Ok(w.skip(k))
}

/// One step `α_M^p` of a subsequence witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftPower {
    pub index: usize,
    pub power: usize,
}

impl ShiftPower {
    pub fn apply(&self, pos: usize) -> usize {
        (0..self.power).fold(pos, |p, _| nat_partial_shift(self.index, p))
    }
}

/// Partial-shift powers whose composition, applied first to last, moves the
/// positions `N_1 < .. < N_R` to `i(N_1) < .. < i(N_R)`.
///
/// `targets[N]` is `i(N)` and must be strictly increasing on `0..=N_R`.
/// Step `r` shifts from `M_r = N_r + i(N_{r-1}) - N_{r-1}` by `i(N_r) - M_r`.
pub fn subsequence_witness(targets: &[usize], positions: &[usize]) -> Result<Vec<ShiftPower>> {
    if targets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("{targets:?} is not strictly increasing")));
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("positions {positions:?} are not strictly increasing")));
    }
    if let Some(&last) = positions.last() {
        if last >= targets.len() {
            return Err(Error::IndexOutOfRange(format!("position {last} outside the reindexing domain")));
        }
    }
    let mut offset = 0;
    let mut out = Vec::with_capacity(positions.len());
    for &n in positions {
        let m = n + offset;
        let power = targets[n] - m;
        out.push(ShiftPower { index: m, power });
        offset = targets[n] - n;
    }
    Ok(out)
}

/// Applies the steps of [`subsequence_witness`] in order.
pub fn apply_shift_powers(steps: &[ShiftPower], pos: usize) -> usize {
    steps.iter().fold(pos, |p, s| s.apply(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> MomentWord {
        MomentWord::plain([(0, "b"), (1, "c")])
    }

    #[test]
    fn free_coface_examples() {
        assert_eq!(free_coface(1, 2, &pair()).unwrap(), MomentWord::plain([(0, "b"), (2, "c")]));
        assert_eq!(free_coface(0, 2, &pair()).unwrap(), MomentWord::plain([(1, "b"), (2, "c")]));
        assert_eq!(free_coface(2, 2, &pair()).unwrap(), pair());
        assert!(free_coface(0, 1, &pair()).is_err());
        assert!(free_coface(3, 2, &pair()).is_err());
    }

    #[test]
    fn witness_examples() {
        let s = subsequence_witness(&[0, 3], &[0, 1]).unwrap();
        assert_eq!(s, vec![ShiftPower { index: 0, power: 0 }, ShiftPower { index: 1, power: 2 }]);
        assert_eq!(apply_shift_powers(&s, 0), 0);
        assert_eq!(apply_shift_powers(&s, 1), 3);

        let s = subsequence_witness(&[0, 1, 5], &[2]).unwrap();
        assert_eq!(s, vec![ShiftPower { index: 2, power: 3 }]);

        let id = subsequence_witness(&[0, 1, 2, 3], &[0, 2, 3]).unwrap();
        assert!(id.iter().all(|s| s.power == 0));
    }

    #[test]
    fn witness_rejects_bad_maps() {
        assert!(subsequence_witness(&[0, 0], &[0]).is_err());
        assert!(subsequence_witness(&[0, 1], &[1, 0]).is_err());
        assert!(subsequence_witness(&[0, 1], &[2]).is_err());
    }

    #[test]
    fn adjoint_reverses_and_toggles() {
        let w = MomentWord::new(vec![Factor::new(0, "a"), Factor::starred(2, "b")]);
        assert_eq!(w.adjoint(), MomentWord::new(vec![Factor::new(2, "b"), Factor::starred(0, "a")]));
        assert_eq!(w.adjoint().adjoint(), w);
        assert_eq!(w.to_string(), "(0,a)(2,b*)");
    }

    #[test]
    fn json_shape() {
        let w = MomentWord::new(vec![Factor::starred(1, "E12")]);
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"[{"pos":1,"letter":"E12","star":true}]"#);
        let back: MomentWord = serde_json::from_str(r#"[{"pos":1,"letter":"E12"}]"#).unwrap();
        assert!(!back.has_star());
    }
}
