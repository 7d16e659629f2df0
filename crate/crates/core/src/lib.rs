//! Exact computations with semi-cosimplicial objects, braid monoid actions,
//! partial shifts and spreadable sequences.

pub mod algebra;
pub mod braid;
pub mod cohomology;
pub mod error;
pub mod groups;
pub mod ncprob;
pub mod report;
pub mod simplicial;
pub mod suites;
pub mod tl;

pub use error::{Error, Result};
pub use report::{Status, VerifyReport, Witness};
