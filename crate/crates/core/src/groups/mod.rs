//! Semi-cosimplicial groups: matrix groups, symmetric groups and braid groups.

mod braid_conj;
mod classical;
mod perm;

pub use braid_conj::{
    braid_conj_coface, braid_conj_sco, burau_action, burau_eval, burau_word, evaluates_into, random_word, star_word,
    sym_word, words_agree,
};
pub use classical::{
    coxeter, embedded_restriction, gl_coface, gl_sco, homomorphism_check, random_invertible, star,
    sym_coface, sym_sco, PermConjugationAction,
};
pub use perm::Permutation;
