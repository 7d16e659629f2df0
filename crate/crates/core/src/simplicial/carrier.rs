use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub type Rng = ChaCha8Rng;
pub type Sampler<T> = Arc<dyn Fn(&mut Rng) -> T + Send + Sync>;

/// The tested elements of one level of a truncated object.
///
/// Finite carriers are checked exhaustively; sampled carriers are drawn from
/// a seeded generator so that runs are reproducible.
pub enum Carrier<T> {
    Finite(Arc<Vec<T>>),
    /// Finite, but only enumerated when a check needs it.
    Generated(Arc<dyn Fn() -> Vec<T> + Send + Sync>),
    Sampled { draw: Sampler<T>, count: usize },
}

impl<T> Clone for Carrier<T> {
    fn clone(&self) -> Self {
        match self {
            Carrier::Finite(v) => Carrier::Finite(Arc::clone(v)),
            Carrier::Generated(f) => Carrier::Generated(Arc::clone(f)),
            Carrier::Sampled { draw, count } => Carrier::Sampled {
                draw: Arc::clone(draw),
                count: *count,
            },
        }
    }
}

impl<T: Clone> Carrier<T> {
    pub fn finite(elements: Vec<T>) -> Self {
        Carrier::Finite(Arc::new(elements))
    }

    pub fn generated(f: impl Fn() -> Vec<T> + Send + Sync + 'static) -> Self {
        Carrier::Generated(Arc::new(f))
    }

    pub fn sampled(count: usize, draw: impl Fn(&mut Rng) -> T + Send + Sync + 'static) -> Self {
        Carrier::Sampled {
            draw: Arc::new(draw),
            count,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        !matches!(self, Carrier::Sampled { .. })
    }

    /// Elements to test. `seed` only matters for sampled carriers.
    pub fn elements(&self, seed: u64) -> Vec<T> {
        match self {
            Carrier::Finite(v) => v.as_ref().clone(),
            Carrier::Generated(f) => f(),
            Carrier::Sampled { draw, count } => {
                let mut rng = Rng::seed_from_u64(seed);
                (0..*count).map(|_| draw(&mut rng)).collect()
            }
        }
    }
}

/// Seed used for the carrier at `level`, derived from a run seed.
pub fn level_seed(seed: u64, level: isize) -> u64 {
    seed ^ (level as i64 as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64 },
}

impl CheckMode {
    pub fn for_carriers<'a, T: Clone + 'a>(
        carriers: impl IntoIterator<Item = &'a Carrier<T>>,
        seed: u64,
    ) -> Self {
        if carriers.into_iter().all(Carrier::is_exhaustive) {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled { seed }
        }
    }
}
