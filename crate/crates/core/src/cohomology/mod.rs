//! Cohomology of semi-cosimplicial vector spaces built from linear braid actions.

mod complex;
mod module;

pub use complex::{
    cohomology_dim, cohomology_table, differential, h1_explicit, verify_dd_zero, CochainComplex,
    CohomologyRow,
};
pub use module::ModuleSco;
