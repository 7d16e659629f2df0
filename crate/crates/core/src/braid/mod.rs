//! Braid words, braid monoid actions and the SCOs they produce.

mod action;
mod actions;
mod build;
mod word;
mod ybe;

pub use action::{apply_word, check_braid_relations, level_of, require_braid_relations, BraidAction};
pub use actions::{EventuallyConstant, FlipAction, FnAction, GeneratorFn, MatrixAction, TrivialAction};
pub use build::{braid_sco_build, diagram_identity_check, diagram_words, lemma_power_check};
pub use word::{coface_word, descending_word, BraidWord, Letter};
pub use ybe::{ybe_action, ybe_check, ybe_witness, PairMap, PairRule, YbeAction};
