//! Semi-cosimplicial objects, partial-shift systems and the passage between them.

mod carrier;
mod face;
mod ordinal;
mod sco;
mod shifts;

pub use carrier::{level_seed, Carrier, CheckMode, Rng, Sampler};
pub use face::{face_map_apply, nat_partial_shift, FaceMap};
pub use ordinal::{nat_shift_system, ordinal_sco};
pub use sco::{sco_verify, CofaceFn, EqFn, MemberFn, Sco};
pub use shifts::{
    check_monic, fixed_point_filtration, prop_partial_check, sco_from_shifts, shifts_from_sco,
    systems_agree, ColimitPoint, ConnectFn, PartialShiftSystem, ShiftFn,
};
