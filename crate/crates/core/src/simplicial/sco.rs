use std::fmt::Debug;
use std::sync::Arc;

use rayon::prelude::*;

use super::carrier::{level_seed, Carrier, CheckMode};
use crate::error::{Error, Result};
use crate::report::{VerifyReport, Witness};

/// `(k, n, x) -> δ^k x` for `x` at level `n - 1`.
pub type CofaceFn<T> = Arc<dyn Fn(usize, usize, &T) -> Result<T> + Send + Sync>;
pub type EqFn<T> = Arc<dyn Fn(&T, &T) -> bool + Send + Sync>;
/// `(level, x)`; level `-1` is the augmentation.
pub type MemberFn<T> = Arc<dyn Fn(isize, &T) -> bool + Send + Sync>;

/// A semi-cosimplicial object truncated at level `n_max`.
pub struct Sco<T> {
    name: String,
    n_max: usize,
    levels: Vec<Carrier<T>>,
    augmentation: Option<Carrier<T>>,
    coface: CofaceFn<T>,
    equiv: EqFn<T>,
    member: Option<MemberFn<T>>,
    notes: Vec<String>,
}

impl<T> Clone for Sco<T> {
    fn clone(&self) -> Self {
        Sco {
            name: self.name.clone(),
            n_max: self.n_max,
            levels: self.levels.clone(),
            augmentation: self.augmentation.clone(),
            coface: Arc::clone(&self.coface),
            equiv: Arc::clone(&self.equiv),
            member: self.member.clone(),
            notes: self.notes.clone(),
        }
    }
}

impl<T> Sco<T>
where
    T: Clone + Debug + PartialEq + Send + Sync + 'static,
{
    /// `levels[n]` is the carrier of level `n` for `n = 0..=n_max`.
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Carrier<T>>,
        coface: impl Fn(usize, usize, &T) -> Result<T> + Send + Sync + 'static,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter("an SCO needs at least one level".into()));
        }
        Ok(Sco {
            name: name.into(),
            n_max: levels.len() - 1,
            levels,
            augmentation: None,
            coface: Arc::new(coface),
            equiv: Arc::new(|a: &T, b: &T| a == b),
            member: None,
            notes: Vec::new(),
        })
    }
}

impl<T> Sco<T>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    /// Like [`Sco::new`] for element types without `PartialEq`; equality is supplied.
    pub fn with_equality_fn(
        name: impl Into<String>,
        levels: Vec<Carrier<T>>,
        coface: impl Fn(usize, usize, &T) -> Result<T> + Send + Sync + 'static,
        equiv: impl Fn(&T, &T) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter("an SCO needs at least one level".into()));
        }
        Ok(Sco {
            name: name.into(),
            n_max: levels.len() - 1,
            levels,
            augmentation: None,
            coface: Arc::new(coface),
            equiv: Arc::new(equiv),
            member: None,
            notes: Vec::new(),
        })
    }

    pub fn with_augmentation(mut self, carrier: Carrier<T>) -> Self {
        self.augmentation = Some(carrier);
        self
    }

    pub fn with_equality(mut self, equiv: impl Fn(&T, &T) -> bool + Send + Sync + 'static) -> Self {
        self.equiv = Arc::new(equiv);
        self
    }

    /// Adds a level-membership predicate used for the closure check.
    pub fn with_membership(
        mut self,
        member: impl Fn(isize, &T) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.member = Some(Arc::new(member));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Replaces one coface `δ^k` at level `n` by another map. Used to build mutants.
    pub fn with_coface_override(
        mut self,
        k: usize,
        n: usize,
        f: impl Fn(&T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        let base = Arc::clone(&self.coface);
        self.coface = Arc::new(move |kk, nn, x| if kk == k && nn == n { f(x) } else { base(kk, nn, x) });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_augmented(&self) -> bool {
        self.augmentation.is_some()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn levels(&self) -> &[Carrier<T>] {
        &self.levels
    }

    /// Carrier at `level`, with `-1` meaning the augmentation.
    pub fn carrier(&self, level: isize) -> Result<&Carrier<T>> {
        if level == -1 {
            return self
                .augmentation
                .as_ref()
                .ok_or_else(|| Error::IndexOutOfRange("object is not augmented".into()));
        }
        if level < -1 || level as usize > self.n_max {
            return Err(Error::IndexOutOfRange(format!(
                "level {level} outside 0..={}",
                self.n_max
            )));
        }
        Ok(&self.levels[level as usize])
    }

    /// Tested elements of `level` for the given run seed.
    pub fn elements(&self, level: isize, seed: u64) -> Result<Vec<T>> {
        Ok(self.carrier(level)?.elements(level_seed(seed, level)))
    }

    pub fn equiv(&self, a: &T, b: &T) -> bool {
        (self.equiv)(a, b)
    }

    pub fn equality_fn(&self) -> EqFn<T> {
        Arc::clone(&self.equiv)
    }

    pub fn is_member(&self, level: isize, x: &T) -> bool {
        self.member.as_ref().map_or(true, |m| m(level, x))
    }

    /// `δ^k: F^{n-1} -> F^n`.
    pub fn coface(&self, k: usize, n: usize, x: &T) -> Result<T> {
        if k > n {
            return Err(Error::IndexOutOfRange(format!("coface index {k} exceeds level {n}")));
        }
        if n > self.n_max {
            return Err(Error::TruncationExceeded(format!(
                "coface into level {n} beyond n_max={}",
                self.n_max
            )));
        }
        if n == 0 && !self.is_augmented() {
            return Err(Error::IndexOutOfRange("level 0 has no coface without augmentation".into()));
        }
        (self.coface)(k, n, x)
    }

    pub fn mode(&self, seed: u64) -> CheckMode {
        CheckMode::for_carriers(self.levels.iter().chain(self.augmentation.iter()), seed)
    }

    /// Compares the cofaces of two objects on the tested elements of `self`.
    pub fn agrees_with(&self, other: &Sco<T>, seed: u64) -> Result<Option<Witness>> {
        let top = self.n_max.min(other.n_max);
        let start = if self.is_augmented() && other.is_augmented() { 0 } else { 1 };
        for n in start..=top {
            for x in self.elements(n as isize - 1, seed)? {
                for k in 0..=n {
                    let a = self.coface(k, n, &x)?;
                    let b = other.coface(k, n, &x)?;
                    if !self.equiv(&a, &b) {
                        return Ok(Some(
                            Witness::new("coface agreement", format!("{x:?}"))
                                .k(k)
                                .level(n as isize)
                                .sides(format!("{a:?}"), format!("{b:?}")),
                        ));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Checks `δ^j δ^i = δ^i δ^{j-1}` for all `i < j <= n + 1` on tested
/// elements of level `n - 1`, for every `n` with `n + 1 <= n_max`. When a
/// membership predicate is present, closure of every coface image is checked too.
pub fn sco_verify<T>(s: &Sco<T>, seed: u64) -> Result<VerifyReport>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let mut report = VerifyReport::new(format!("cosimplicial identities: {}", s.name), s.mode(seed));
    let start = if s.is_augmented() { 0 } else { 1 };
    for n in start..s.n_max {
        let xs = s.elements(n as isize - 1, seed)?;
        let results: Vec<Result<(usize, Option<Witness>)>> =
            xs.par_iter().map(|x| check_identities_at(s, n, x)).collect();
        for r in results {
            let (count, w) = r?;
            report.checked_count += count;
            if let Some(w) = w {
                report.fail(w);
            }
        }
        if !report.passed() {
            break;
        }
    }
    Ok(report)
}

fn check_identities_at<T>(s: &Sco<T>, n: usize, x: &T) -> Result<(usize, Option<Witness>)>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let mut count = 0;
    let mut lower = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let y = s.coface(k, n, x)?;
        if !s.is_member(n as isize, &y) {
            let w = Witness::new("level closure", format!("{x:?}"))
                .k(k)
                .level(n as isize)
                .sides(format!("{y:?}"), format!("an element of level {n}"));
            return Ok((count, Some(w)));
        }
        lower.push(y);
    }
    for j in 1..=n + 1 {
        for i in 0..j {
            count += 1;
            let lhs = s.coface(j, n + 1, &lower[i])?;
            let rhs = s.coface(i, n + 1, &lower[j - 1])?;
            for (kk, src, img) in [(j, &lower[i], &lhs), (i, &lower[j - 1], &rhs)] {
                if !s.is_member(n as isize + 1, img) {
                    let w = Witness::new("level closure", format!("{src:?}"))
                        .k(kk)
                        .level(n as isize + 1)
                        .sides(format!("{img:?}"), format!("an element of level {}", n + 1));
                    return Ok((count, Some(w)));
                }
            }
            if !s.equiv(&lhs, &rhs) {
                let w = Witness::new("cosimplicial identity", format!("{x:?}"))
                    .ij(i, j)
                    .level(n as isize)
                    .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                return Ok((count, Some(w)));
            }
        }
    }
    Ok((count, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::ordinal_sco;

    #[test]
    fn ordinal_object_passes() {
        let s = ordinal_sco(6);
        let r = sco_verify(&s, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.mode, CheckMode::Exhaustive);
        assert!(r.checked_count > 0);
    }

    #[test]
    fn swapped_coface_is_caught() {
        // δ^1 at level 1 replaced by δ^0. The pair (0, 1) cannot see this
        // change, so the first failing pair is (0, 2).
        let s = ordinal_sco(4).with_coface_override(1, 1, |&m| Ok(m + 1));
        let r = sco_verify(&s, 0).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!((w.i, w.j), (Some(0), Some(2)));
        assert_eq!(w.n, Some(1));
    }

    #[test]
    fn one_level_is_vacuous() {
        let s = ordinal_sco(1);
        let r = sco_verify(&s, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked_count, 0);
    }

    #[test]
    fn report_json_shape() {
        let r = sco_verify(&ordinal_sco(3), 0).unwrap();
        let v = r.to_json();
        assert_eq!(v["status"], "pass");
        assert!(v["checked_count"].as_u64().unwrap() > 0);
        assert!(v.get("witness").is_none());
    }

    #[test]
    fn closure_failure_is_reported() {
        let s = ordinal_sco(3).with_membership(|n, &m| (m as isize) <= n);
        assert!(sco_verify(&s, 0).unwrap().passed());
        let bad = ordinal_sco(3)
            .with_membership(|n, &m| (m as isize) <= n)
            .with_coface_override(0, 2, |&m| Ok(m + 5));
        let r = sco_verify(&bad, 0).unwrap();
        assert_eq!(r.witness.unwrap().relation, "level closure");
    }

    #[test]
    fn coface_range_errors() {
        let s = ordinal_sco(3);
        assert!(s.coface(3, 2, &0).is_err());
        assert!(matches!(s.coface(0, 4, &0), Err(Error::TruncationExceeded(_))));
        assert!(s.coface(0, 0, &0).is_err());
    }
}
