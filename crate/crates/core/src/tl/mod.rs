//! Temperley-Lieb diagrams, the Markov trace and the braid elements `g_n`.

mod action;
mod diagram;
mod element;

pub use action::{
    projection_moments, spreadable_projections, tl_conjugation_action, tl_probability_sco, unitary_generators,
    TlConjugation,
};
pub use diagram::TlDiagram;
pub use element::{
    adjoint, g_element, g_inverse, markov_trace, projection, tl_multiply, trace_scalar, DeltaScalar, TlElement,
    TlParameters,
};
