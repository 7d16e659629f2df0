use super::carrier::Carrier;
use super::face::{nat_partial_shift, FaceMap};
use super::sco::Sco;
use super::shifts::PartialShiftSystem;

/// Level `n` is the ordinal `[n] = {0..n}` and the cofaces are the face maps.
pub fn ordinal_sco(n_max: usize) -> Sco<usize> {
    let levels = (0..=n_max).map(|n| Carrier::finite((0..=n).collect())).collect();
    Sco::new("ordinals", levels, |k, n, &m| FaceMap::new(k, n)?.apply(m))
        .expect("at least one level")
        .with_membership(|n, &m| (m as isize) <= n)
}

/// Partial shifts on the naturals, filtered by `{0..n}` with inclusions.
pub fn nat_shift_system(n_max: usize) -> PartialShiftSystem<usize> {
    PartialShiftSystem::new(
        "naturals",
        (0..=n_max).map(|n| Carrier::finite((0..=n).collect())).collect(),
        |_, &x| Ok(x),
        |k, _, &x| Ok(nat_partial_shift(k, x)),
        |a, b| a == b,
    )
    .expect("at least one level")
}
