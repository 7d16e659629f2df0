use rand::Rng as _;

use super::perm::Permutation;
use crate::algebra::{Matrix, Scalar};
use crate::braid::{coface_word, BraidWord, Letter, MatrixAction};
use crate::error::{Error, Result};
use crate::simplicial::{Carrier, Sco};

/// The unreduced Burau matrix of `σ_g` on `size` strands: the identity with
/// the block `[[1-t, t], [1, 0]]` at rows and columns `g-1, g`.
pub fn burau_eval(g: usize, size: usize, t: &Scalar) -> Result<Matrix> {
    if t.is_zero() {
        return Err(Error::InvalidParameter("Burau parameter t must be nonzero".into()));
    }
    if g == 0 || g >= size {
        return Err(Error::IndexOutOfRange(format!("σ_{g} on {size} strands")));
    }
    let mut m = Matrix::identity(size);
    m.set(g - 1, g - 1, &Scalar::one() - t);
    m.set(g - 1, g, t.clone());
    m.set(g, g - 1, Scalar::one());
    m.set(g, g, Scalar::zero());
    Ok(m)
}

fn burau_inverse(g: usize, size: usize, t: &Scalar) -> Result<Matrix> {
    let ti = t.inv()?;
    let mut m = Matrix::identity(size);
    m.set(g - 1, g - 1, Scalar::zero());
    m.set(g - 1, g, Scalar::one());
    m.set(g, g - 1, ti.clone());
    m.set(g, g, &Scalar::one() - &ti);
    Ok(m)
}

/// Image of a word under the Burau representation, letters multiplied left to right.
pub fn burau_word(w: &BraidWord, size: usize, t: &Scalar) -> Result<Matrix> {
    let mut acc = Matrix::identity(size);
    for l in w.letters() {
        if l.gen == 0 || l.gen >= size {
            return Err(Error::IndexOutOfRange(format!("σ_{} on {size} strands", l.gen)));
        }
        let g = if l.inverse {
            burau_inverse(l.gen, size, t)?
        } else {
            burau_eval(l.gen, size, t)?
        };
        acc = acc.mul(&g)?;
    }
    Ok(acc)
}

/// Image of a word in `S_size` under `σ_g -> (g-1 g)`.
pub fn sym_word(w: &BraidWord, size: usize) -> Result<Permutation> {
    let mut acc = Permutation::identity(size);
    for l in w.letters() {
        if l.gen == 0 || l.gen >= size {
            return Err(Error::IndexOutOfRange(format!("σ_{} in S_{size}", l.gen)));
        }
        acc = acc.compose(&Permutation::transposition(size, l.gen - 1, l.gen)?)?;
    }
    Ok(acc)
}

/// The Burau action on `strands` coordinates with generators `σ_1..σ_{strands-1}`.
pub fn burau_action(strands: usize, t: &Scalar) -> Result<MatrixAction> {
    let gens = (1..strands).map(|g| burau_eval(g, strands, t)).collect::<Result<_>>()?;
    MatrixAction::new(format!("Burau at t={t} on {strands} strands"), strands, gens, true)
}

/// `σ_{k+1}..σ_{n+1} w σ_{n+1}^{-1}..σ_{k+1}^{-1}` for `w` in `B_n`. No simplification.
pub fn braid_conj_coface(k: usize, n: usize, w: &BraidWord) -> Result<BraidWord> {
    if w.max_gen() + 1 > n {
        return Err(Error::IndexOutOfRange(format!(
            "{w} uses σ_{} which is not in B_{n}",
            w.max_gen()
        )));
    }
    conjugate(k, n, w)
}

fn conjugate(k: usize, n: usize, w: &BraidWord) -> Result<BraidWord> {
    let c = coface_word(k, n)?;
    Ok(c.concat(w).concat(&c.inverse()))
}

/// Whether the images of `w` on `size` strands fix every strand past `n`,
/// as the images of words in `σ_1..σ_n` do.
pub fn evaluates_into(w: &BraidWord, n: usize, size: usize) -> bool {
    let t = Scalar::from_int(2);
    let (Ok(p), Ok(b)) = (sym_word(w, size), burau_word(w, size, &t)) else {
        return false;
    };
    let id = Matrix::identity(size);
    (n + 1..size).all(|i| p.apply(i) == i && b.row(i) == id.row(i) && b.column(i) == id.column(i))
}

/// `(σ_1^{-1}..σ_{N-1}^{-1}) σ_N (σ_{N-1}..σ_1)`, strand 0 wound around strand `N`.
///
/// With this orientation `δ^k` sends it to itself for `N < k` and to the next
/// one for `N >= k`. The mirror `(σ_1..σ_{N-1}) σ_N (σ_{N-1}^{-1}..σ_1^{-1})`
/// has the same image in the symmetric group but breaks that rule already at
/// `N = k = 1`.
pub fn star_word(big_n: usize) -> Result<BraidWord> {
    if big_n == 0 {
        return Err(Error::InvalidParameter("star generators start at 1".into()));
    }
    let down = BraidWord::positive((1..big_n).rev())?;
    Ok(down.inverse().concat(&BraidWord::positive([big_n])?).concat(&down))
}

/// Word equality decided by images in `S_size` and in Burau at `t = 2`.
///
/// This is a necessary condition for equality in the braid group, not a
/// solution of the word problem.
pub fn words_agree(a: &BraidWord, b: &BraidWord, size: usize) -> bool {
    let t = Scalar::from_int(2);
    let same_sym = matches!((sym_word(a, size), sym_word(b, size)), (Ok(x), Ok(y)) if x == y);
    same_sym && matches!((burau_word(a, size, &t), burau_word(b, size, &t)), (Ok(x), Ok(y)) if x == y)
}

/// A random word in `σ_1^{±1}..σ_{gens}^{±1}` of length up to `max_len`.
pub fn random_word(rng: &mut crate::simplicial::Rng, gens: usize, max_len: usize) -> BraidWord {
    if gens == 0 {
        return BraidWord::empty();
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=gens);
            if rng.gen_bool(0.5) {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            }
        })
        .collect();
    BraidWord::from_letters(letters).expect("positive indices")
}

/// Level `n` holds sampled words in `σ_1..σ_n`; cofaces conjugate as in
/// [`braid_conj_coface`]; equality is [`words_agree`] on `n_max + 2` strands.
///
/// Composite cofaces receive unsimplified words that still spell `σ_{n+1}`,
/// so level membership is decided by [`evaluates_into`] instead of by letters.
pub fn braid_conj_sco(n_max: usize, samples: usize) -> Sco<BraidWord> {
    let levels = (0..=n_max)
        .map(|n| Carrier::sampled(samples, move |rng| random_word(rng, n, 6)))
        .collect();
    let size = n_max + 2;
    Sco::new("braid groups by conjugation", levels, conjugate)
        .expect("levels")
        .with_equality(move |a, b| words_agree(a, b, size))
        .with_membership(move |n, w| n >= 0 && evaluates_into(w, n as usize, size))
        .with_note("braid words compared by their images in the symmetric quotient and in Burau at t=2")
}
