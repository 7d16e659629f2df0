use serde::Serialize;

use crate::error::{Error, Result};

/// The strictly increasing map `[n-1] -> [n]` whose image misses `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceMap {
    k: usize,
    n: usize,
}

impl FaceMap {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::IndexOutOfRange(format!(
                "face map index k={k} exceeds n={n}"
            )));
        }
        Ok(FaceMap { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Evaluates the face map at `m`, which must lie in `[n-1] = {0..n-1}`.
    pub fn apply(&self, m: usize) -> Result<usize> {
        if m >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "{m} is not in the domain [{}] of the face map {}",
                self.n as isize - 1,
                self.k
            )));
        }
        Ok(if m < self.k { m } else { m + 1 })
    }
}

pub fn face_map_apply(f: FaceMap, m: usize) -> Result<usize> {
    f.apply(m)
}

/// The partial shift on the naturals: identity below `k`, successor from `k` on.
pub fn nat_partial_shift(k: usize, m: usize) -> usize {
    if m < k {
        m
    } else {
        m + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_maps_on_small_ordinals() {
        assert_eq!(FaceMap::new(2, 2).unwrap().apply(1).unwrap(), 1);
        assert_eq!(FaceMap::new(0, 1).unwrap().apply(0).unwrap(), 1);
    }

    #[test]
    fn composites_agree() {
        // delta^2 delta^1 and delta^1 delta^1 as maps [0] -> [2]
        let lhs = FaceMap::new(2, 2)
            .unwrap()
            .apply(FaceMap::new(1, 1).unwrap().apply(0).unwrap())
            .unwrap();
        let rhs = FaceMap::new(1, 2)
            .unwrap()
            .apply(FaceMap::new(1, 1).unwrap().apply(0).unwrap())
            .unwrap();
        assert_eq!(lhs, 0);
        assert_eq!(rhs, 0);
    }

    #[test]
    fn out_of_range() {
        assert!(FaceMap::new(3, 2).is_err());
        assert!(FaceMap::new(0, 2).unwrap().apply(2).is_err());
    }

    #[test]
    fn image_misses_k() {
        for n in 1..6 {
            for k in 0..=n {
                let f = FaceMap::new(k, n).unwrap();
                let image: Vec<usize> = (0..n).map(|m| f.apply(m).unwrap()).collect();
                assert!(image.windows(2).all(|w| w[0] < w[1]));
                let expected: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
                assert_eq!(image, expected);
            }
        }
    }

    #[test]
    fn partial_shift_values() {
        assert_eq!(nat_partial_shift(2, 1), 1);
        assert_eq!(nat_partial_shift(2, 5), 6);
        for m in 0..3 {
            assert_eq!(nat_partial_shift(0, m), m + 1);
        }
    }
}
