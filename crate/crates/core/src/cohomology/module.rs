use rayon::prelude::*;
use rand::SeedableRng;

use crate::algebra::{Matrix, Vector};
use crate::braid::{coface_word, BraidAction, MatrixAction};
use crate::error::{Error, Result};
use crate::groups::random_invertible;
use crate::simplicial::{level_seed, Carrier, Rng, Sco};

/// A semi-cosimplicial vector space inside a fixed ambient space.
///
/// Level `n` (for `n = -1..=n_max`) is the column span of `basis(n)`, and
/// `coface(k, n)` is the matrix of `δ^k: V^{n-1} -> V^n` in those bases.
#[derive(Clone, Debug)]
pub struct ModuleSco {
    name: String,
    ambient: usize,
    bases: Vec<Matrix>,
    cofaces: Vec<Vec<Matrix>>,
}

fn unit_vectors(dim: usize) -> Vec<Vector> {
    Matrix::identity(dim).columns()
}

/// Coordinates of `v` in the column basis `b`, which has full column rank.
fn coordinates(b: &Matrix, v: &Vector) -> Result<Option<Vector>> {
    let rhs = Matrix::from_columns(b.rows(), std::slice::from_ref(v))?;
    Ok(b.solve(&rhs)?.map(|c| c.column(0)))
}

impl ModuleSco {
    /// The SCO of a linear braid action: `V^n` is the joint fixed space of
    /// `σ_k` for `k >= n + 2` and `δ^k` applies `σ_{k+1} ... σ_{n+1}`.
    pub fn from_action(a: &MatrixAction, n_max: usize) -> Result<Self> {
        if let (Some(k), true) = (a.generator_bound(), a.truncated()) {
            if n_max + 1 > k {
                return Err(Error::TruncationExceeded(format!(
                    "level {n_max} needs σ_{} but {} models only σ_1..σ_{k}",
                    n_max + 1,
                    a.name()
                )));
            }
        }
        let dim = a.dim();
        let bases: Vec<Matrix> = (-1..=n_max as isize)
            .into_par_iter()
            .map(|n| Matrix::from_columns(dim, &a.level_basis(n)?))
            .collect::<Result<_>>()?;
        let cofaces: Vec<Vec<Matrix>> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let mut m = Matrix::identity(dim);
                        for l in coface_word(k, n)?.letters() {
                            m = m.mul(&a.generator(l.gen)?)?;
                        }
                        restrict(&m, &bases[n], &bases[n + 1], k, n)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(ModuleSco {
            name: a.name(),
            ambient: dim,
            bases,
            cofaces,
        })
    }

    /// Builds a module SCO from explicit coordinate matrices.
    /// `cofaces[n][k]` is `δ^k` into level `n` and `dims[n + 1]` is `dim V^n`.
    pub fn from_matrices(name: impl Into<String>, dims: &[usize], cofaces: Vec<Vec<Matrix>>) -> Result<Self> {
        if dims.len() != cofaces.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} level dimensions for {} coface levels",
                dims.len(),
                cofaces.len()
            )));
        }
        for (n, row) in cofaces.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!("level {n} needs {} cofaces", n + 1)));
            }
            for m in row {
                if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                    return Err(Error::DimensionMismatch(format!(
                        "coface into level {n} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        dims[n + 1],
                        dims[n]
                    )));
                }
            }
        }
        let ambient = dims.iter().copied().max().unwrap_or(0);
        let bases = dims
            .iter()
            .map(|&d| Matrix::identity(ambient).columns().into_iter().take(d).collect::<Vec<_>>())
            .map(|cols| Matrix::from_columns(ambient, &cols))
            .collect::<Result<_>>()?;
        Ok(ModuleSco {
            name: name.into(),
            ambient,
            bases,
            cofaces,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_max(&self) -> usize {
        self.cofaces.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn index(&self, n: isize) -> Result<usize> {
        if n < -1 || n > self.n_max() as isize {
            return Err(Error::IndexOutOfRange(format!("level {n} outside -1..={}", self.n_max())));
        }
        Ok((n + 1) as usize)
    }

    /// Columns span `V^n` inside the ambient space.
    pub fn basis(&self, n: isize) -> Result<&Matrix> {
        Ok(&self.bases[self.index(n)?])
    }

    pub fn level_dim(&self, n: isize) -> Result<usize> {
        Ok(self.basis(n)?.cols())
    }

    /// Matrix of `δ^k: V^{n-1} -> V^n`.
    pub fn coface(&self, k: usize, n: usize) -> Result<&Matrix> {
        if n > self.n_max() || k > n {
            return Err(Error::IndexOutOfRange(format!("δ^{k} into level {n}")));
        }
        Ok(&self.cofaces[n][k])
    }

    /// The same SCO in a random basis of every level, drawn from `seed`.
    pub fn rebased(&self, seed: u64) -> Result<Self> {
        let changes: Vec<Matrix> = self
            .bases
            .iter()
            .enumerate()
            .map(|(i, b)| random_invertible(&mut Rng::seed_from_u64(level_seed(seed, i as isize - 1)), b.cols()))
            .collect();
        let inverses: Vec<Matrix> = changes.iter().map(Matrix::inverse).collect::<Result<_>>()?;
        let bases = self.bases.iter().zip(&changes).map(|(b, p)| b.mul(p)).collect::<Result<_>>()?;
        let cofaces = self
            .cofaces
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .map(|m| inverses[n + 1].mul(m)?.mul(&changes[n]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(ModuleSco {
            name: format!("{} (rebased)", self.name),
            ambient: self.ambient,
            bases,
            cofaces,
        })
    }

    /// Replaces one coface matrix. Used to build mutants.
    pub fn with_coface(mut self, k: usize, n: usize, m: Matrix) -> Result<Self> {
        let old = self.coface(k, n)?;
        if (old.rows(), old.cols()) != (m.rows(), m.cols()) {
            return Err(Error::DimensionMismatch(format!("replacement for δ^{k} into level {n}")));
        }
        self.cofaces[n][k] = m;
        Ok(self)
    }

    /// The coordinate SCO: level `n` is `Q^{dim V^n}` with its unit vectors
    /// as an exhaustive carrier, which suffices because the cofaces are linear.
    pub fn to_sco(&self) -> Result<Sco<Vector>> {
        let levels = self.bases[1..].iter().map(|b| Carrier::finite(unit_vectors(b.cols()))).collect();
        let cofaces = self.cofaces.clone();
        Ok(Sco::new(format!("module {}", self.name), levels, move |k, n, x: &Vector| {
            let m = cofaces
                .get(n)
                .and_then(|row| row.get(k))
                .ok_or_else(|| Error::IndexOutOfRange(format!("δ^{k} into level {n}")))?;
            m.mul_vec(x)
        })?
        .with_augmentation(Carrier::finite(unit_vectors(self.bases[0].cols())))
        .with_note("linear cofaces checked on unit vectors"))
    }
}

fn restrict(m: &Matrix, from: &Matrix, to: &Matrix, k: usize, n: usize) -> Result<Matrix> {
    let cols = from
        .columns()
        .iter()
        .map(|b| {
            let image = m.mul_vec(b)?;
            coordinates(to, &image)?.ok_or_else(|| Error::LevelClosure {
                k,
                n,
                element: format!("{b:?}"),
                level: n as isize + 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(to.cols(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sco_verify;

    #[test]
    fn flip_levels_are_fixed_spaces() {
        let s = ModuleSco::from_action(&MatrixAction::flip(4), 2).unwrap();
        // V^{-1} = constants, V^0 = first coordinate free, V^2 = everything
        assert_eq!(s.level_dim(-1).unwrap(), 1);
        assert_eq!(s.level_dim(0).unwrap(), 2);
        assert_eq!(s.level_dim(1).unwrap(), 3);
        assert_eq!(s.level_dim(2).unwrap(), 4);
        assert!(sco_verify(&s.to_sco().unwrap(), 0).unwrap().passed());
    }

    #[test]
    fn first_coface_is_the_inclusion() {
        let s = ModuleSco::from_action(&MatrixAction::flip(4), 2).unwrap();
        let b = s.basis(-1).unwrap();
        let image = s.basis(0).unwrap().mul(s.coface(0, 0).unwrap()).unwrap();
        assert_eq!(&image, b);
    }

    #[test]
    fn truncation_is_enforced() {
        assert!(matches!(
            ModuleSco::from_action(&MatrixAction::flip(4), 3),
            Err(Error::TruncationExceeded(_))
        ));
    }

    #[test]
    fn rebasing_keeps_identities() {
        let s = ModuleSco::from_action(&MatrixAction::flip(5), 3).unwrap().rebased(9).unwrap();
        assert!(sco_verify(&s.to_sco().unwrap(), 0).unwrap().passed());
    }

    #[test]
    fn explicit_matrices_are_validated() {
        let one = Matrix::identity(1);
        assert!(ModuleSco::from_matrices("t", &[1, 1], vec![vec![one.clone()]]).is_ok());
        assert!(ModuleSco::from_matrices("t", &[1, 2], vec![vec![one]]).is_err());
    }
}
