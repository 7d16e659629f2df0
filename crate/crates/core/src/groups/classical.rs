use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng as _;
use rayon::prelude::*;

use super::perm::Permutation;
use crate::algebra::{Matrix, Scalar};
use crate::braid::BraidAction;
use crate::error::{Error, Result};
use crate::report::{VerifyReport, Witness};
use crate::simplicial::{Carrier, CheckMode, FaceMap, Rng, Sco};

/// Inserts a new row and column at index `k` carrying a 1 on the diagonal.
pub fn gl_coface(k: usize, m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    let f = FaceMap::new(k, n)?;
    let mut out = Matrix::zeros(n + 1, n + 1);
    out.set(k, k, Scalar::one());
    for a in 0..n {
        let fa = f.apply(a)?;
        for b in 0..n {
            out.set(fa, f.apply(b)?, m.get(a, b).clone());
        }
    }
    Ok(out)
}

/// `q(k) = k` and `q(δ^k i) = δ^k p(i)`.
pub fn sym_coface(k: usize, p: &Permutation) -> Result<Permutation> {
    let n = p.size();
    let f = FaceMap::new(k, n)?;
    let mut images = vec![k; n + 1];
    for i in 0..n {
        images[f.apply(i)?] = f.apply(p.apply(i))?;
    }
    Permutation::new(images)
}

/// The Coxeter generator `(N-1 N)` in `S_size`.
pub fn coxeter(size: usize, big_n: usize) -> Result<Permutation> {
    if big_n == 0 {
        return Err(Error::InvalidParameter("Coxeter generators start at 1".into()));
    }
    Permutation::transposition(size, big_n - 1, big_n)
}

/// The star generator `(0 N)` in `S_size`.
pub fn star(size: usize, big_n: usize) -> Result<Permutation> {
    if big_n == 0 {
        return Err(Error::InvalidParameter("star generators start at 1".into()));
    }
    Permutation::transposition(size, 0, big_n)
}

/// A random invertible matrix with entries in `-3..=3`.
pub fn random_invertible(rng: &mut Rng, size: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..size)
            .map(|_| (0..size).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("rectangular");
        if m.rank() == size {
            return m;
        }
    }
}

/// Level `n` holds sampled elements of `GL(n+1, Q)`; cofaces are [`gl_coface`].
pub fn gl_sco(n_max: usize, samples: usize) -> Sco<Matrix> {
    let levels = (0..=n_max)
        .map(|n| Carrier::sampled(samples, move |rng| random_invertible(rng, n + 1)))
        .collect();
    Sco::new("GL over Q", levels, |k, _, m| gl_coface(k, m))
        .expect("levels")
        .with_membership(|n, m: &Matrix| {
            m.rows() as isize == n + 1 && m.is_square() && m.rank() == m.rows()
        })
}

/// Level `n` is all of `S_{n+1}`; cofaces are [`sym_coface`].
pub fn sym_sco(n_max: usize) -> Sco<Permutation> {
    let levels = (0..=n_max)
        .map(|n| Carrier::generated(move || Permutation::all(n + 1)))
        .collect();
    Sco::new("symmetric groups", levels, |k, _, p| sym_coface(k, p))
        .expect("levels")
        .with_membership(|n, p: &Permutation| p.size() as isize == n + 1)
}

/// Checks `δ^k(gh) = δ^k(g) δ^k(h)` on pairs of consecutive tested elements
/// of each level, together with closure of the level under the product.
pub fn homomorphism_check<T>(
    s: &Sco<T>,
    mul: impl Fn(&T, &T) -> Result<T> + Sync,
    seed: u64,
) -> Result<VerifyReport>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let exhaustive = s.levels().iter().all(Carrier::is_exhaustive);
    let mode = if exhaustive {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled { seed }
    };
    let mut report = VerifyReport::new(format!("coface homomorphisms: {}", s.name()), mode);
    let start = if s.is_augmented() { 0 } else { 1 };
    for n in start..=s.n_max() {
        let xs = s.elements(n as isize - 1, seed)?;
        if xs.is_empty() {
            continue;
        }
        let results: Vec<Result<(usize, Option<Witness>)>> = (0..xs.len())
            .into_par_iter()
            .map(|idx| {
                let (g, h) = (&xs[idx], &xs[(idx + 1) % xs.len()]);
                let gh = mul(g, h)?;
                if !s.is_member(n as isize - 1, &gh) {
                    let w = Witness::new("closure under product", format!("{g:?} * {h:?}"))
                        .level(n as isize - 1);
                    return Ok((0, Some(w)));
                }
                let mut count = 0;
                for k in 0..=n {
                    count += 1;
                    let lhs = s.coface(k, n, &gh)?;
                    let rhs = mul(&s.coface(k, n, g)?, &s.coface(k, n, h)?)?;
                    if !s.equiv(&lhs, &rhs) {
                        let w = Witness::new("coface homomorphism", format!("{g:?} * {h:?}"))
                            .k(k)
                            .level(n as isize)
                            .sides(format!("{lhs:?}"), format!("{rhs:?}"));
                        return Ok((count, Some(w)));
                    }
                }
                Ok((count, None))
            })
            .collect();
        for r in results {
            let (c, w) = r?;
            report.checked_count += c;
            if let Some(w) = w {
                report.fail(w);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// `σ_k` acts on `size x size` matrices by conjugation with the permutation
/// matrix of the transposition `(k-1 k)`.
#[derive(Clone, Copy, Debug)]
pub struct PermConjugationAction {
    pub size: usize,
}

impl PermConjugationAction {
    /// Matrices `diag(M, I)` with `M` of size `n + 1`, the levels used with this action.
    pub fn embedded_carrier(&self, n: isize, samples: usize) -> Carrier<Matrix> {
        let size = self.size;
        let inner = (n + 1).max(0) as usize;
        Carrier::sampled(samples, move |rng| {
            random_invertible(rng, inner).embed(size).expect("fits")
        })
    }

    /// Whether `m` has the block form `diag(M, I)` with `M` of size `n + 1`.
    pub fn is_embedded(&self, n: isize, m: &Matrix) -> bool {
        let inner = (n + 1).max(0) as usize;
        (0..self.size).all(|r| {
            (0..self.size).all(|c| {
                if r < inner && c < inner {
                    true
                } else if r == c {
                    m.get(r, c).is_one()
                } else {
                    m.get(r, c).is_zero()
                }
            })
        })
    }
}

fn swap_rows_cols(m: &Matrix, a: usize, b: usize) -> Matrix {
    let n = m.rows();
    let idx = |i: usize| if i == a { b } else if i == b { a } else { i };
    let mut out = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, m.get(idx(r), idx(c)).clone());
        }
    }
    out
}

impl BraidAction for PermConjugationAction {
    type Elem = Matrix;

    fn name(&self) -> String {
        format!("permutation conjugation on GL({})", self.size)
    }

    fn apply_generator(&self, gen: usize, x: &Matrix) -> Result<Matrix> {
        if x.rows() != self.size || x.cols() != self.size {
            return Err(Error::DimensionMismatch(format!("expected {0}x{0}", self.size)));
        }
        Ok(swap_rows_cols(x, gen - 1, gen))
    }

    fn apply_generator_inverse(&self, gen: usize, x: &Matrix) -> Result<Matrix> {
        self.apply_generator(gen, x)
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(self.size.saturating_sub(1))
    }
}

/// Restriction predicate matching [`PermConjugationAction::embedded_carrier`].
pub fn embedded_restriction(a: PermConjugationAction) -> Arc<dyn Fn(isize, &Matrix) -> bool + Send + Sync> {
    Arc::new(move |n, m| a.is_embedded(n, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_sco_build;
    use crate::simplicial::sco_verify;
    use rand::SeedableRng;

    #[test]
    fn gl_coface_examples() {
        let a = Matrix::from_i64(&[&[7]]);
        assert_eq!(gl_coface(0, &a).unwrap(), Matrix::from_i64(&[&[1, 0], &[0, 7]]));
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            gl_coface(1, &m).unwrap(),
            Matrix::from_i64(&[&[1, 0, 2], &[0, 1, 0], &[3, 0, 4]])
        );
        assert_eq!(gl_coface(2, &m).unwrap(), m.embed(3).unwrap());
        assert!(gl_coface(3, &m).is_err());
    }

    #[test]
    fn gl_coface_is_cycle_conjugation() {
        let mut rng = Rng::seed_from_u64(3);
        for n in 1..=4 {
            let m = random_invertible(&mut rng, n);
            for k in 0..=n {
                let c = Permutation::cycle_to_end(n + 1, k).unwrap().to_matrix();
                let conj = c
                    .mul(&m.embed(n + 1).unwrap())
                    .unwrap()
                    .mul(&c.inverse().unwrap())
                    .unwrap();
                assert_eq!(gl_coface(k, &m).unwrap(), conj, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn sym_coface_rules() {
        let s1 = coxeter(2, 1).unwrap();
        assert_eq!(sym_coface(0, &s1).unwrap(), coxeter(3, 2).unwrap());
        let g1 = star(2, 1).unwrap();
        assert_eq!(sym_coface(1, &g1).unwrap(), star(3, 2).unwrap());
        assert_eq!(sym_coface(2, &g1).unwrap(), star(3, 1).unwrap());
    }

    #[test]
    fn sym_and_gl_cofaces_agree() {
        for n in 1..=4 {
            for p in Permutation::all(n) {
                for k in 0..=n {
                    assert_eq!(
                        sym_coface(k, &p).unwrap().to_matrix(),
                        gl_coface(k, &p.to_matrix()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn star_and_coxeter_generator_rules() {
        for n in 2..=5 {
            for big_n in 1..n {
                assert_eq!(sym_coface(0, &coxeter(n, big_n).unwrap()).unwrap(), coxeter(n + 1, big_n + 1).unwrap());
                for k in 1..=n {
                    let expected = if big_n < k { big_n } else { big_n + 1 };
                    assert_eq!(sym_coface(k, &star(n, big_n).unwrap()).unwrap(), star(n + 1, expected).unwrap());
                }
            }
        }
    }

    #[test]
    fn group_scos_pass() {
        assert!(sco_verify(&gl_sco(4, 20), 1).unwrap().passed());
        assert!(sco_verify(&sym_sco(5), 0).unwrap().passed());
    }

    #[test]
    fn cofaces_are_homomorphisms() {
        let r = homomorphism_check(&gl_sco(4, 10), |a, b| a.mul(b), 5).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = homomorphism_check(&sym_sco(4), |a, b| a.compose(b), 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.mode, CheckMode::Exhaustive);
    }

    #[test]
    fn conjugation_action_reproduces_gl_cofaces() {
        let a = PermConjugationAction { size: 5 };
        let s = braid_sco_build(
            Arc::new(a),
            3,
            |n| Ok(a.embedded_carrier(n, 8)),
            Some(embedded_restriction(a)),
            2,
        )
        .unwrap();
        assert!(sco_verify(&s, 2).unwrap().passed());
        let mut rng = Rng::seed_from_u64(9);
        for n in 1..=3 {
            let m = random_invertible(&mut rng, n);
            for k in 0..=n {
                let via_action = s.coface(k, n, &m.embed(5).unwrap()).unwrap();
                assert_eq!(via_action, gl_coface(k, &m).unwrap().embed(5).unwrap());
            }
        }
    }
}
