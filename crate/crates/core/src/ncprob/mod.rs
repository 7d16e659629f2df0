//! Moments of noncommutative random sequences and their spreadability.

mod distribution;
mod prob_sco;
mod tensor;
mod word;

pub use distribution::{
    coface_invariance_check, spreadability_check, star_spreadability_mode, Distribution, EvalFn, SpreadWitness,
    SpreadabilityReport,
};
pub use prob_sco::{sco_to_sequence, tensor_probability_sco, ProbabilitySco};
pub use tensor::{tensor_sco, TensorElem, TensorModel};
pub use word::{apply_shift_powers, free_coface, subsequence_witness, Factor, MomentWord, ShiftPower};
