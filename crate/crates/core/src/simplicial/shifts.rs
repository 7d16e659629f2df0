use std::fmt::Debug;
use std::sync::Arc;

use rayon::prelude::*;

use super::carrier::{level_seed, Carrier, CheckMode};
use super::sco::{sco_verify, EqFn, Sco};
use crate::error::{Error, Result};
use crate::report::{VerifyReport, Witness};

/// `(n, x) -> i_n x` for `x` at level `n - 1`.
pub type ConnectFn<T> = Arc<dyn Fn(usize, &T) -> Result<T> + Send + Sync>;
/// `(k, n, x) -> α_k^{(n)} x` for `x` at level `n - 1`.
pub type ShiftFn<T> = Arc<dyn Fn(usize, usize, &T) -> Result<T> + Send + Sync>;

/// A truncated filtration `F_0 -> F_1 -> ... -> F_{n_max}` together with the
/// level restrictions of a sequence of adapted endomorphisms of its colimit.
///
/// The colimit is modelled as pairs (level, value); two pairs are the same
/// point when their images at a common higher level agree.
pub struct PartialShiftSystem<T> {
    name: String,
    levels: Vec<Carrier<T>>,
    connect: ConnectFn<T>,
    shift: ShiftFn<T>,
    equiv: EqFn<T>,
    shift_bound: usize,
}

impl<T> Clone for PartialShiftSystem<T> {
    fn clone(&self) -> Self {
        PartialShiftSystem {
            name: self.name.clone(),
            levels: self.levels.clone(),
            connect: Arc::clone(&self.connect),
            shift: Arc::clone(&self.shift),
            equiv: Arc::clone(&self.equiv),
            shift_bound: self.shift_bound,
        }
    }
}

/// The image `μ_level(value)` of a level element in the colimit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitPoint<T> {
    pub level: usize,
    pub value: T,
}

impl<T> PartialShiftSystem<T>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Carrier<T>>,
        connect: impl Fn(usize, &T) -> Result<T> + Send + Sync + 'static,
        shift: impl Fn(usize, usize, &T) -> Result<T> + Send + Sync + 'static,
        equiv: impl Fn(&T, &T) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter("a filtration needs at least one level".into()));
        }
        let shift_bound = levels.len();
        Ok(PartialShiftSystem {
            name: name.into(),
            levels,
            connect: Arc::new(connect),
            shift: Arc::new(shift),
            equiv: Arc::new(equiv),
            shift_bound,
        })
    }

    /// Largest shift index exercised by the checks. Defaults to `n_max + 1`.
    pub fn with_shift_bound(mut self, bound: usize) -> Self {
        self.shift_bound = bound;
        self
    }

    /// Replaces `α_k^{(n)}` by another map. Used to build mutants.
    pub fn with_shift_override(
        mut self,
        k: usize,
        n: usize,
        f: impl Fn(&T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        let base = Arc::clone(&self.shift);
        self.shift = Arc::new(move |kk, nn, x| if kk == k && nn == n { f(x) } else { base(kk, nn, x) });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn shift_bound(&self) -> usize {
        self.shift_bound
    }

    pub fn levels(&self) -> &[Carrier<T>] {
        &self.levels
    }

    pub fn elements(&self, level: usize, seed: u64) -> Result<Vec<T>> {
        let c = self.levels.get(level).ok_or_else(|| {
            Error::IndexOutOfRange(format!("level {level} outside 0..={}", self.n_max()))
        })?;
        Ok(c.elements(level_seed(seed, level as isize)))
    }

    pub fn equiv(&self, a: &T, b: &T) -> bool {
        (self.equiv)(a, b)
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("level maps start at n = 1".into()));
        }
        if n > self.n_max() {
            return Err(Error::TruncationExceeded(format!(
                "level {n} beyond n_max={}",
                self.n_max()
            )));
        }
        Ok(())
    }

    /// `i_n: F_{n-1} -> F_n`.
    pub fn connect(&self, n: usize, x: &T) -> Result<T> {
        self.check_level(n)?;
        (self.connect)(n, x)
    }

    /// `α_k^{(n)}: F_{n-1} -> F_n`.
    pub fn shift_at(&self, k: usize, n: usize, x: &T) -> Result<T> {
        self.check_level(n)?;
        (self.shift)(k, n, x)
    }

    pub fn mu(&self, level: usize, value: T) -> ColimitPoint<T> {
        ColimitPoint { level, value }
    }

    /// The representative of `p` at a level `>= p.level`.
    pub fn lift(&self, p: &ColimitPoint<T>, level: usize) -> Result<T> {
        if level < p.level {
            return Err(Error::IndexOutOfRange(format!(
                "cannot lift from level {} down to {level}",
                p.level
            )));
        }
        let mut v = p.value.clone();
        for n in p.level + 1..=level {
            v = self.connect(n, &v)?;
        }
        Ok(v)
    }

    /// `α_k` on the colimit: a point at level `m` goes to level `m + 1`.
    pub fn apply(&self, k: usize, p: &ColimitPoint<T>) -> Result<ColimitPoint<T>> {
        let n = p.level + 1;
        Ok(ColimitPoint {
            level: n,
            value: self.shift_at(k, n, &p.value)?,
        })
    }

    pub fn apply_pow(&self, k: usize, power: usize, p: &ColimitPoint<T>) -> Result<ColimitPoint<T>> {
        let mut q = p.clone();
        for _ in 0..power {
            q = self.apply(k, &q)?;
        }
        Ok(q)
    }

    /// Equality in the colimit, decided at the higher of the two levels.
    pub fn same(&self, a: &ColimitPoint<T>, b: &ColimitPoint<T>) -> Result<bool> {
        let top = a.level.max(b.level);
        Ok(self.equiv(&self.lift(a, top)?, &self.lift(b, top)?))
    }

    fn mode(&self, seed: u64) -> CheckMode {
        CheckMode::for_carriers(self.levels.iter(), seed)
    }

    /// Whether `α_k μ_n = μ_n` on the tested elements of `F_n`.
    pub fn acts_trivially_on(&self, k: usize, n: usize, seed: u64) -> Result<bool> {
        for x in self.elements(n, seed)? {
            let p = self.mu(n, x);
            if !self.same(&self.apply(k, &p)?, &p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks adaptedness, triviality of `α_k` on level `k - 1`, and the
    /// exchange law `α_j α_i = α_i α_{j-1}` for `i < j <= shift_bound`.
    pub fn verify(&self, seed: u64) -> Result<VerifyReport> {
        let mut report = VerifyReport::new(format!("partial shifts: {}", self.name), self.mode(seed));
        let kb = self.shift_bound;
        // adaptedness: α^{(n+1)} i_n = i_{n+1} α^{(n)} on F_{n-1}
        for n in 1..self.n_max() {
            let xs = self.elements(n - 1, seed)?;
            let found = first_failure(&xs, |x| {
                let mut count = 0;
                let up = self.connect(n, x)?;
                for k in 0..=kb {
                    count += 1;
                    let lhs = self.shift_at(k, n + 1, &up)?;
                    let rhs = self.connect(n + 1, &self.shift_at(k, n, x)?)?;
                    if !self.equiv(&lhs, &rhs) {
                        let w = Witness::new("adaptedness", format!("{x:?}"))
                            .k(k)
                            .level(n as isize)
                            .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                        return Ok((count, Some(w)));
                    }
                }
                Ok((count, None))
            })?;
            if absorb(&mut report, found) {
                return Ok(report);
            }
        }
        // triviality: α_k^{(k)} = i_k on F_{k-1}
        for k in 1..=self.n_max() {
            let xs = self.elements(k - 1, seed)?;
            let found = first_failure(&xs, |x| {
                let lhs = self.shift_at(k, k, x)?;
                let rhs = self.connect(k, x)?;
                if self.equiv(&lhs, &rhs) {
                    Ok((1, None))
                } else {
                    let w = Witness::new("triviality", format!("{x:?}"))
                        .k(k)
                        .level(k as isize - 1)
                        .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                    Ok((1, Some(w)))
                }
            })?;
            if absorb(&mut report, found) {
                return Ok(report);
            }
        }
        // exchange law on points of level n - 1
        for n in 1..self.n_max() {
            let xs = self.elements(n - 1, seed)?;
            let found = first_failure(&xs, |x| {
                let mut count = 0;
                let once: Vec<T> = (0..=kb).map(|k| self.shift_at(k, n, x)).collect::<Result<_>>()?;
                for j in 1..=kb {
                    for i in 0..j {
                        count += 1;
                        let lhs = self.shift_at(j, n + 1, &once[i])?;
                        let rhs = self.shift_at(i, n + 1, &once[j - 1])?;
                        if !self.equiv(&lhs, &rhs) {
                            let w = Witness::new("exchange law", format!("{x:?}"))
                                .ij(i, j)
                                .level(n as isize - 1)
                                .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                            return Ok((count, Some(w)));
                        }
                    }
                }
                Ok((count, None))
            })?;
            if absorb(&mut report, found) {
                return Ok(report);
            }
        }
        Ok(report)
    }

    /// The square `i_{n+1} α_k^{(n)} = α_k^{(n+1)} i_n` for `0 <= k <= n`.
    pub fn commuting_square(&self, seed: u64) -> Result<VerifyReport> {
        let mut report =
            VerifyReport::new(format!("commuting squares: {}", self.name), self.mode(seed));
        for n in 1..self.n_max() {
            for x in self.elements(n - 1, seed)? {
                let up = self.connect(n, &x)?;
                for k in 0..=n {
                    report.checked_count += 1;
                    let lhs = self.connect(n + 1, &self.shift_at(k, n, &x)?)?;
                    let rhs = self.shift_at(k, n + 1, &up)?;
                    if !self.equiv(&lhs, &rhs) {
                        report.fail(
                            Witness::new("commuting square", format!("{x:?}"))
                                .k(k)
                                .level(n as isize)
                                .sides(format!("{lhs:?}"), format!("{rhs:?}")),
                        );
                        return Ok(report);
                    }
                }
            }
        }
        Ok(report)
    }

    /// If `α_k` is trivial on level `n` it must be trivial on every lower level.
    pub fn downward_triviality(&self, k: usize, seed: u64) -> Result<VerifyReport> {
        let mut report =
            VerifyReport::new(format!("downward triviality: {}", self.name), self.mode(seed));
        let top = self.n_max().saturating_sub(1);
        let trivial: Vec<bool> = (0..=top)
            .map(|n| self.acts_trivially_on(k, n, seed))
            .collect::<Result<_>>()?;
        for n in 0..=top {
            if !trivial[n] {
                continue;
            }
            for m in 0..n {
                report.checked_count += 1;
                if !trivial[m] {
                    report.fail(
                        Witness::new("downward triviality", format!("trivial on level {n}"))
                            .k(k)
                            .level(m as isize),
                    );
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }

    /// The system `(α_{k + ell})_k` on the filtration `F_ell -> F_{ell+1} -> ...`.
    pub fn relabeled(&self, ell: usize) -> Result<PartialShiftSystem<T>> {
        if ell > self.n_max() {
            return Err(Error::TruncationExceeded(format!(
                "cannot drop {ell} levels from a system with n_max={}",
                self.n_max()
            )));
        }
        let connect = Arc::clone(&self.connect);
        let shift = Arc::clone(&self.shift);
        Ok(PartialShiftSystem {
            name: format!("{} relabeled by {ell}", self.name),
            levels: self.levels[ell..].to_vec(),
            connect: Arc::new(move |n, x| connect(n + ell, x)),
            shift: Arc::new(move |k, n, x| shift(k + ell, n + ell, x)),
            equiv: Arc::clone(&self.equiv),
            shift_bound: self.shift_bound.saturating_sub(ell),
        })
    }
}

/// Runs `check` over `xs` in parallel and returns the total count and the
/// first failure in input order.
fn first_failure<T, F>(xs: &[T], check: F) -> Result<(usize, Option<Witness>)>
where
    T: Sync,
    F: Fn(&T) -> Result<(usize, Option<Witness>)> + Sync,
{
    let results: Vec<Result<(usize, Option<Witness>)>> = xs.par_iter().map(&check).collect();
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

/// Adds a partial result to the report; true when it failed.
fn absorb(report: &mut VerifyReport, found: (usize, Option<Witness>)) -> bool {
    report.checked_count += found.0;
    match found.1 {
        Some(w) => {
            report.fail(w);
            true
        }
        None => false,
    }
}

/// The system canonically attached to an SCO: `i_n = δ^n` and
/// `α_k^{(n)} = δ^{min(k, n)}`. The augmentation, if any, is not part of the filtration.
pub fn shifts_from_sco<T>(s: &Sco<T>, seed: u64) -> Result<PartialShiftSystem<T>>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let r = sco_verify(s, seed)?;
    if let Some(w) = r.witness {
        return Err(Error::NotCosimplicial(w.to_string()));
    }
    let a = s.clone();
    let b = s.clone();
    let eq = s.equality_fn();
    PartialShiftSystem::new(
        s.name().to_string(),
        s.levels().to_vec(),
        move |n, x| a.coface(n, n, x),
        move |k, n, x| b.coface(k.min(n), n, x),
        move |x, y| eq(x, y),
    )
}

/// Injectivity of `μ_n` on tested elements: distinct elements of a level
/// must stay distinct at the top level. Only a partial guarantee for sampled carriers.
pub fn check_monic<T>(p: &PartialShiftSystem<T>, seed: u64) -> Result<()>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let top = p.n_max();
    for n in 0..top {
        let xs = p.elements(n, seed)?;
        let lifted: Vec<T> = xs
            .par_iter()
            .map(|x| p.lift(&p.mu(n, x.clone()), top))
            .collect::<Result<_>>()?;
        let hit = (0..xs.len()).into_par_iter().find_map_first(|a| {
            (a + 1..xs.len()).find_map(|b| {
                (!p.equiv(&xs[a], &xs[b]) && p.equiv(&lifted[a], &lifted[b])).then_some((a, b))
            })
        });
        if let Some((a, b)) = hit {
            return Err(Error::NotMonic {
                level: n,
                left: format!("{:?}", xs[a]),
                right: format!("{:?}", xs[b]),
            });
        }
    }
    Ok(())
}

/// The SCO with `δ^k = α_k^{(n)}` for `k <= n`, after checking that the
/// colimit injections are monic on tested elements.
pub fn sco_from_shifts<T>(p: &PartialShiftSystem<T>, seed: u64) -> Result<Sco<T>>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    check_monic(p, seed)?;
    let q = p.clone();
    let eq = Arc::clone(&p.equiv);
    let s = Sco::with_equality_fn(
        p.name().to_string(),
        p.levels().to_vec(),
        move |k, n, x| q.shift_at(k, n, x),
        move |x, y| eq(x, y),
    )?;
    let r = sco_verify(&s, seed)?;
    if let Some(w) = r.witness {
        return Err(Error::NotPartialShifts(format!("derived object fails: {w}")));
    }
    Ok(s)
}

/// Compares the level maps of two systems over the shared levels and all
/// shift indices up to the smaller bound.
pub fn systems_agree<T>(
    a: &PartialShiftSystem<T>,
    b: &PartialShiftSystem<T>,
    seed: u64,
) -> Result<Option<Witness>>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let top = a.n_max().min(b.n_max());
    let kb = a.shift_bound.min(b.shift_bound);
    for n in 1..=top {
        for x in a.elements(n - 1, seed)? {
            let (l, r) = (a.connect(n, &x)?, b.connect(n, &x)?);
            if !a.equiv(&l, &r) {
                return Ok(Some(
                    Witness::new("connecting map agreement", format!("{x:?}"))
                        .level(n as isize)
                        .sides(format!("{l:?}"), format!("{r:?}")),
                ));
            }
            for k in 0..=kb {
                let (l, r) = (a.shift_at(k, n, &x)?, b.shift_at(k, n, &x)?);
                if !a.equiv(&l, &r) {
                    return Ok(Some(
                        Witness::new("shift agreement", format!("{x:?}"))
                            .k(k)
                            .level(n as isize)
                            .sides(format!("{l:?}"), format!("{r:?}")),
                    ));
                }
            }
        }
    }
    Ok(None)
}

/// `α_k α_0^N μ_0 x` equals `α_0^N μ_0 x` when `N < k` and `α_0^{N+1} μ_0 x` otherwise.
pub fn prop_partial_check<T>(p: &PartialShiftSystem<T>, k: usize, big_n: usize, x: &T) -> Result<bool>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    if big_n + 1 > p.n_max() {
        return Err(Error::TruncationExceeded(format!(
            "power {big_n} needs level {} but n_max={}",
            big_n + 1,
            p.n_max()
        )));
    }
    let base = p.apply_pow(0, big_n, &p.mu(0, x.clone()))?;
    let lhs = p.apply(k, &base)?;
    let rhs = if big_n < k { base } else { p.apply(0, &base)? };
    p.same(&lhs, &rhs)
}

/// The canonical filtration of a family of maps on a finite set: level `n`
/// is the fixed-point set of `α_{n+1}`, for `n = 0..k_max-1`.
///
/// The exchange law is checked first for `i < j <= k_max`. Elements fixed by
/// no `α_{n+1}` are reported as an error rather than silently dropped.
pub fn fixed_point_filtration<T>(
    name: impl Into<String>,
    carrier: Vec<T>,
    maps: impl Fn(usize, &T) -> T + Send + Sync + 'static,
    k_max: usize,
) -> Result<PartialShiftSystem<T>>
where
    T: Clone + Debug + PartialEq + Send + Sync + 'static,
{
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    for x in &carrier {
        for j in 1..=k_max {
            for i in 0..j {
                if maps(j, &maps(i, x)) != maps(i, &maps(j - 1, x)) {
                    return Err(Error::ExchangeLaw {
                        i,
                        j,
                        element: format!("{x:?}"),
                    });
                }
            }
        }
    }
    let levels: Vec<Vec<T>> = (0..k_max)
        .map(|n| carrier.iter().filter(|x| maps(n + 1, x) == **x).cloned().collect())
        .collect();
    for n in 1..levels.len() {
        if let Some(x) = levels[n - 1].iter().find(|x| !levels[n].contains(x)) {
            return Err(Error::NotPartialShifts(format!(
                "{x:?} is fixed at level {} but not at level {n}",
                n - 1
            )));
        }
    }
    if let Some(x) = carrier.iter().find(|x| !levels.last().unwrap().contains(x)) {
        return Err(Error::OutsideFiltration(format!("{x:?}")));
    }
    let members = Arc::new(levels.clone());
    let maps = Arc::new(maps);
    let p = PartialShiftSystem::new(
        name,
        levels.into_iter().map(Carrier::finite).collect(),
        |_, x: &T| Ok(x.clone()),
        move |k, n, x| {
            let y = maps(k, x);
            if members[n].contains(&y) {
                Ok(y)
            } else {
                Err(Error::LevelClosure {
                    k,
                    n,
                    element: format!("{x:?}"),
                    level: -1,
                })
            }
        },
        |a: &T, b: &T| a == b,
    )?;
    Ok(p.with_shift_bound(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{nat_partial_shift, nat_shift_system, ordinal_sco};

    #[test]
    fn ordinal_shifts_are_nat_shifts() {
        let p = shifts_from_sco(&ordinal_sco(10), 0).unwrap();
        for k in 0..=4 {
            for m in 0..=8 {
                let q = p.apply(k, &p.mu(m, m)).unwrap();
                assert_eq!(p.lift(&q, 10).unwrap(), nat_partial_shift(k, m), "k={k} m={m}");
            }
        }
        assert!(p.verify(0).unwrap().passed());
        assert!(p.commuting_square(0).unwrap().passed());
    }

    #[test]
    fn triviality_after_correspondence() {
        let p = shifts_from_sco(&ordinal_sco(6), 0).unwrap();
        for k in 0..5 {
            for x in 0..=k {
                let pt = p.mu(k, x);
                assert!(p.same(&p.apply(k + 1, &pt).unwrap(), &pt).unwrap());
            }
        }
    }

    #[test]
    fn round_trip_through_nat_system() {
        let p = nat_shift_system(7);
        assert!(p.verify(0).unwrap().passed());
        let s = sco_from_shifts(&p, 0).unwrap();
        let back = shifts_from_sco(&s, 0).unwrap();
        assert_eq!(systems_agree(&p, &back, 0).unwrap(), None);
        assert_eq!(s.agrees_with(&ordinal_sco(7), 0).unwrap(), None);
    }

    #[test]
    fn single_level_system() {
        let p = nat_shift_system(0);
        let s = sco_from_shifts(&p, 0).unwrap();
        assert_eq!(s.n_max(), 0);
        assert!(sco_verify(&s, 0).unwrap().passed());
    }

    #[test]
    fn non_monic_system_is_rejected() {
        // collapse everything at the top level
        let p = PartialShiftSystem::new(
            "collapse",
            (0..=3).map(|n| Carrier::finite((0..=n).collect::<Vec<usize>>())).collect(),
            |n, &x| Ok(if n == 3 { 0 } else { x }),
            |k, n, &x| Ok(if n == 3 { 0 } else { nat_partial_shift(k, x) }),
            |a, b| a == b,
        )
        .unwrap();
        match sco_from_shifts(&p, 0) {
            Err(Error::NotMonic { level, left, right }) => {
                assert_eq!(level, 1);
                assert_eq!((left.as_str(), right.as_str()), ("0", "1"));
            }
            other => panic!("expected NotMonic, got {:?}", other.map(|s| s.n_max())),
        }
    }

    #[test]
    fn prop_partial_on_nat() {
        let p = nat_shift_system(6);
        assert!(prop_partial_check(&p, 2, 3, &0).unwrap());
        assert!(prop_partial_check(&p, 2, 1, &0).unwrap());
        let q = p.apply_pow(0, 3, &p.mu(0, 0)).unwrap();
        assert_eq!(p.lift(&p.apply(2, &q).unwrap(), 6).unwrap(), 4);
        assert!(matches!(
            prop_partial_check(&p, 1, 6, &0),
            Err(Error::TruncationExceeded(_))
        ));
    }

    #[test]
    fn mutated_shift_fails_exchange_or_triviality() {
        let p = nat_shift_system(5).with_shift_override(1, 3, |&x| Ok(x + 1));
        let r = p.verify(0).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn relabeled_systems_pass() {
        let p = shifts_from_sco(&ordinal_sco(7), 0).unwrap();
        for ell in 0..=3 {
            let q = p.relabeled(ell).unwrap();
            assert!(q.verify(0).unwrap().passed(), "ell={ell}");
        }
    }

    #[test]
    fn downward_triviality_holds() {
        let p = shifts_from_sco(&ordinal_sco(6), 0).unwrap();
        for k in 0..=6 {
            assert!(p.downward_triviality(k, 0).unwrap().passed());
        }
        assert!(p.acts_trivially_on(3, 2, 0).unwrap());
        assert!(!p.acts_trivially_on(3, 3, 0).unwrap());
    }

    fn truncated_shift(k: usize, m: &usize) -> usize {
        if *m < k {
            *m
        } else {
            (*m + 1).min(9)
        }
    }

    #[test]
    fn fixed_points_of_truncated_shifts() {
        let p = fixed_point_filtration("truncated", (0..10).collect(), truncated_shift, 9).unwrap();
        assert_eq!(p.n_max(), 8);
        for n in 0..=p.n_max() {
            let mut expected: Vec<usize> = (0..=n).collect();
            expected.push(9);
            assert_eq!(p.elements(n, 0).unwrap(), expected, "level {n}");
        }
        assert!(p.verify(0).unwrap().passed());
    }

    #[test]
    fn fixed_points_of_identities() {
        let p = fixed_point_filtration("identity", (0..5).collect(), |_, &x: &usize| x, 3).unwrap();
        for n in 0..=p.n_max() {
            assert_eq!(p.elements(n, 0).unwrap(), (0..5).collect::<Vec<_>>());
        }
        assert!(p.verify(0).unwrap().passed());
    }

    #[test]
    fn exchange_violation_is_reported() {
        let r = fixed_point_filtration("bad", (0..4).collect(), |k, &x: &usize| if k == 0 { (x + 1) % 4 } else { 0 }, 3);
        match r {
            Err(Error::ExchangeLaw { i, j, element }) => {
                assert_eq!((i, j), (0, 1));
                assert_eq!(element, "0");
            }
            other => panic!("expected an exchange-law error, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn unreached_elements_are_reported() {
        // the full shift on Z/3 fixes nothing
        let r = fixed_point_filtration("rotation", (0..3).collect(), |_, &x: &usize| (x + 1) % 3, 2);
        assert!(matches!(r, Err(Error::OutsideFiltration(_))));
    }
}
