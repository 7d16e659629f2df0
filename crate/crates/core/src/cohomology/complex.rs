use rayon::prelude::*;
use serde::Serialize;

use super::module::ModuleSco;
use crate::algebra::Matrix;
use crate::braid::MatrixAction;
use crate::error::{Error, Result};
use crate::report::{VerifyReport, Witness};
use crate::simplicial::CheckMode;

/// `d^n = Σ_k (-1)^k δ^k: V^{n-1} -> V^n` in the level bases of `s`.
pub fn differential(s: &ModuleSco, n: usize) -> Result<Matrix> {
    let mut d = s.coface(0, n)?.clone();
    for k in 1..=n {
        let m = s.coface(k, n)?;
        d = if k % 2 == 0 { d.add(m)? } else { d.sub(m)? };
    }
    Ok(d)
}

/// Consecutive differentials `d^first, d^{first+1}, ...`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    first: usize,
    maps: Vec<Matrix>,
}

impl CochainComplex {
    /// Checks only that consecutive maps compose.
    pub fn new(first: usize, maps: Vec<Matrix>) -> Result<Self> {
        for (i, pair) in maps.windows(2).enumerate() {
            if pair[1].cols() != pair[0].rows() {
                return Err(Error::DimensionMismatch(format!(
                    "d^{} has {} rows but d^{} has {} columns",
                    first + i,
                    pair[0].rows(),
                    first + i + 1,
                    pair[1].cols()
                )));
            }
        }
        Ok(CochainComplex { first, maps })
    }

    /// `d^0 ..= d^{n_max}` of `s`.
    pub fn from_sco(s: &ModuleSco) -> Result<Self> {
        let maps = (0..=s.n_max())
            .into_par_iter()
            .map(|n| differential(s, n))
            .collect::<Result<_>>()?;
        CochainComplex::new(0, maps)
    }

    pub fn range(&self) -> std::ops::RangeInclusive<usize> {
        self.first..=self.first + self.maps.len() - 1
    }

    pub fn d(&self, n: usize) -> Result<&Matrix> {
        n.checked_sub(self.first)
            .and_then(|i| self.maps.get(i))
            .ok_or_else(|| Error::IndexOutOfRange(format!("d^{n} outside {:?}", self.range())))
    }

    /// Replaces `d^n`. Used to build mutants.
    pub fn with_differential(mut self, n: usize, m: Matrix) -> Result<Self> {
        let i = self.d(n).map(|_| n - self.first)?;
        self.maps[i] = m;
        CochainComplex::new(self.first, self.maps)
    }
}

/// Checks `d^{n+1} d^n = 0` exactly for every consecutive pair.
pub fn verify_dd_zero(c: &CochainComplex) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("d∘d = 0", CheckMode::Exhaustive);
    for (i, pair) in c.maps.windows(2).enumerate() {
        let n = c.first + i;
        let prod = pair[1].mul(&pair[0])?;
        report.checked_count += prod.rows() * prod.cols();
        if let Some((r, col, v)) = prod.first_nonzero() {
            report.fail(
                Witness::new(format!("d^{} d^{n} = 0", n + 1), format!("entry ({r}, {col})"))
                    .level(n as isize)
                    .sides(v.to_string(), "0"),
            );
            break;
        }
    }
    if c.maps.len() < 2 {
        report = report.note("fewer than two differentials; nothing to compose");
    }
    Ok(report)
}

/// `dim ker d^{n+1} - rank d^n`.
pub fn cohomology_dim(c: &CochainComplex, n: usize) -> Result<usize> {
    Ok(cohomology_row(c, n)?.h)
}

/// One line of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub n: usize,
    pub dim_v: usize,
    pub rank_d: usize,
    pub dim_ker_next: usize,
    pub h: usize,
}

fn cohomology_row(c: &CochainComplex, n: usize) -> Result<CohomologyRow> {
    let d = c.d(n)?;
    let next = c.d(n + 1)?;
    let rank_d = d.rank();
    let dim_v = next.cols();
    let dim_ker_next = dim_v - next.rank();
    if !next.mul(d)?.is_zero() {
        return Err(Error::BrokenComplex(format!("d^{} d^{n} is nonzero", n + 1)));
    }
    let h = dim_ker_next.checked_sub(rank_d).ok_or_else(|| {
        Error::BrokenComplex(format!("rank d^{n} = {rank_d} exceeds dim ker d^{} = {dim_ker_next}", n + 1))
    })?;
    Ok(CohomologyRow {
        n,
        dim_v,
        rank_d,
        dim_ker_next,
        h,
    })
}

/// `H^n` for every `n` where both `d^n` and `d^{n+1}` are available.
pub fn cohomology_table(c: &CochainComplex) -> Result<Vec<CohomologyRow>> {
    let r = c.range();
    (*r.start()..*r.end()).into_par_iter().map(|n| cohomology_row(c, n)).collect()
}

/// `dim H^1` from the closed description: the solutions of
/// `(σ_2 - σ_1 σ_2) x = x` in `V^1` modulo `{σ_1 y - y : y ∈ V^0}`.
///
/// Works in the ambient space and does not use the coface matrices.
pub fn h1_explicit(a: &MatrixAction, s: &ModuleSco) -> Result<usize> {
    let s1 = a.generator(1)?;
    let s2 = a.generator(2)?;
    let id = Matrix::identity(a.dim());
    let cocycle = s2.sub(&s1.mul(&s2)?)?.sub(&id)?;
    let v1 = s.basis(1)?;
    let v0 = s.basis(0)?;
    let closed = v1.cols() - cocycle.mul(v1)?.rank();
    let exact = s1.sub(&id)?.mul(v0)?.rank();
    closed
        .checked_sub(exact)
        .ok_or_else(|| Error::BrokenComplex(format!("{exact} coboundaries but only {closed} cocycles")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::braid::BraidAction;
    use crate::groups::burau_action;

    fn trivial_complex(n_max: usize) -> (ModuleSco, CochainComplex) {
        let s = ModuleSco::from_action(&MatrixAction::trivial(), n_max).unwrap();
        let c = CochainComplex::from_sco(&s).unwrap();
        (s, c)
    }

    #[test]
    fn trivial_differentials_alternate() {
        let (_, c) = trivial_complex(5);
        for n in 0..=5 {
            let expected = if n % 2 == 0 { Matrix::identity(1) } else { Matrix::zeros(1, 1) };
            assert_eq!(c.d(n).unwrap(), &expected, "d^{n}");
        }
        assert!(verify_dd_zero(&c).unwrap().passed());
        for n in 0..5 {
            assert_eq!(cohomology_dim(&c, n).unwrap(), 0);
        }
    }

    #[test]
    fn low_differentials_match_closed_forms() {
        let a = MatrixAction::flip(5);
        let s = ModuleSco::from_action(&a, 3).unwrap();
        let c = CochainComplex::from_sco(&s).unwrap();
        // d^0 is the inclusion
        let inc = s.basis(0).unwrap().mul(c.d(0).unwrap()).unwrap();
        assert_eq!(&inc, s.basis(-1).unwrap());
        // d^1 x = σ_1 x - x
        let s1 = a.generator(1).unwrap();
        let b0 = s.basis(0).unwrap();
        let lhs = s.basis(1).unwrap().mul(c.d(1).unwrap()).unwrap();
        let rhs = s1.mul(b0).unwrap().sub(b0).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn flip_complex_is_a_complex() {
        let s = ModuleSco::from_action(&MatrixAction::flip(7), 5).unwrap();
        let c = CochainComplex::from_sco(&s).unwrap();
        let r = verify_dd_zero(&c).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked_count, (0..5).map(|n| c.d(n + 1).unwrap().rows() * c.d(n).unwrap().cols()).sum::<usize>());
    }

    #[test]
    fn perturbed_differential_is_caught() {
        let s = ModuleSco::from_action(&MatrixAction::flip(4), 2).unwrap();
        let c = CochainComplex::from_sco(&s).unwrap();
        let mut m = c.d(1).unwrap().clone();
        let v = m.get(0, 0) + &Scalar::one();
        m.set(0, 0, v);
        let bad = c.with_differential(1, m).unwrap();
        let r = verify_dd_zero(&bad).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!(w.n, Some(0));
        assert_ne!(w.lhs.as_deref(), Some("0"));
        assert!(matches!(cohomology_dim(&bad, 0), Err(Error::BrokenComplex(_))));
    }

    #[test]
    fn h0_vanishes_and_h1_routes_agree() {
        let t = Scalar::from_int(2);
        for a in [MatrixAction::flip(5), burau_action(5, &t).unwrap(), MatrixAction::flip(4), burau_action(4, &t).unwrap()] {
            let s = ModuleSco::from_action(&a, 2).unwrap();
            let c = CochainComplex::from_sco(&s).unwrap();
            assert_eq!(cohomology_dim(&c, 0).unwrap(), 0, "{}", a.name());
            assert_eq!(cohomology_dim(&c, 1).unwrap(), h1_explicit(&a, &s).unwrap(), "{}", a.name());
        }
    }

    #[test]
    fn dimensions_survive_a_change_of_basis() {
        let s = ModuleSco::from_action(&MatrixAction::flip(6), 4).unwrap();
        let c = CochainComplex::from_sco(&s).unwrap();
        let r = CochainComplex::from_sco(&s.rebased(3).unwrap()).unwrap();
        assert!(verify_dd_zero(&r).unwrap().passed());
        assert_eq!(cohomology_table(&c).unwrap(), cohomology_table(&r).unwrap());
    }

    #[test]
    fn range_errors() {
        let (_, c) = trivial_complex(2);
        assert!(c.d(3).is_err());
        assert!(cohomology_dim(&c, 2).is_err());
    }
}
