use std::sync::Arc;

use super::action::BraidAction;
use crate::error::{Error, Result};

pub type PairMap = Arc<dyn Fn(u32, u32) -> (u32, u32) + Send + Sync>;

/// A map `r: Y x Y -> Y x Y` on `Y = {0..size-1}`.
#[derive(Clone)]
pub struct PairRule {
    name: String,
    size: u32,
    r: PairMap,
}

impl PairRule {
    pub fn new(name: impl Into<String>, size: u32, r: impl Fn(u32, u32) -> (u32, u32) + Send + Sync + 'static) -> Self {
        PairRule {
            name: name.into(),
            size,
            r: Arc::new(r),
        }
    }

    /// `(a, b) -> (b, a)`.
    pub fn flip(size: u32) -> Self {
        PairRule::new("flip", size, |a, b| (b, a))
    }

    /// `(x, y) -> (y + 1 mod 3, x)` on `Z/3`.
    pub fn cyclic3() -> Self {
        PairRule::new("cyclic3", 3, |x, y| ((y + 1) % 3, x))
    }

    /// `(x, y) -> (-y, -x)` on `Z/3`; unlike [`cyclic3`](Self::cyclic3) it has fixed pairs.
    pub fn negation3() -> Self {
        PairRule::new("negation3", 3, |x, y| ((3 - y) % 3, (3 - x) % 3))
    }

    /// `(x, y) -> (x + y mod 2, y)` on `Z/2`, which is not a solution.
    pub fn xor2() -> Self {
        PairRule::new("xor2", 2, |x, y| ((x + y) % 2, y))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn apply(&self, a: u32, b: u32) -> (u32, u32) {
        (self.r)(a, b)
    }

    /// The inverse map, when `r` is a bijection.
    fn inverse_table(&self) -> Option<Vec<(u32, u32)>> {
        let n = self.size as usize;
        let mut inv = vec![None; n * n];
        for a in 0..self.size {
            for b in 0..self.size {
                let (c, d) = self.apply(a, b);
                if c >= self.size || d >= self.size {
                    return None;
                }
                let slot = &mut inv[c as usize * n + d as usize];
                if slot.is_some() {
                    return None;
                }
                *slot = Some((a, b));
            }
        }
        inv.into_iter().collect()
    }
}

fn on_pair(r: &PairRule, t: [u32; 3], first: usize) -> [u32; 3] {
    let mut t = t;
    let (a, b) = r.apply(t[first], t[first + 1]);
    t[first] = a;
    t[first + 1] = b;
    t
}

/// First triple where `r12 r23 r12` and `r23 r12 r23` differ.
pub fn ybe_witness(r: &PairRule) -> Option<[u32; 3]> {
    let n = r.size;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = [x, y, z];
                let lhs = on_pair(r, on_pair(r, on_pair(r, t, 0), 1), 0);
                let rhs = on_pair(r, on_pair(r, on_pair(r, t, 1), 0), 1);
                if lhs != rhs {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Whether `r` solves the set-theoretic Yang-Baxter equation, by exhaustion.
pub fn ybe_check(r: &PairRule) -> bool {
    ybe_witness(r).is_none()
}

/// The action on `Y^m` where `σ_k` applies `r` to coordinates `k-1, k`.
/// Generators `σ_1..σ_{m-1}` are modelled.
#[derive(Clone)]
pub struct YbeAction {
    rule: PairRule,
    strands: usize,
    inverse: Option<Arc<Vec<(u32, u32)>>>,
}

pub fn ybe_action(rule: PairRule, strands: usize) -> Result<YbeAction> {
    if !ybe_check(&rule) {
        return Err(Error::NotYangBaxter);
    }
    if strands < 2 {
        return Err(Error::InvalidParameter("need at least two coordinates".into()));
    }
    let inverse = rule.inverse_table().map(Arc::new);
    Ok(YbeAction {
        rule,
        strands,
        inverse,
    })
}

impl YbeAction {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// All of `Y^m`.
    pub fn universe(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.strands {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.rule.size).map(move |y| {
                        let mut w = v.clone();
                        w.push(y);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

impl BraidAction for YbeAction {
    type Elem = Vec<u32>;

    fn name(&self) -> String {
        format!("{} on Y^{}", self.rule.name, self.strands)
    }

    fn apply_generator(&self, gen: usize, x: &Vec<u32>) -> Result<Vec<u32>> {
        let mut y = x.clone();
        let (a, b) = self.rule.apply(x[gen - 1], x[gen]);
        y[gen - 1] = a;
        y[gen] = b;
        Ok(y)
    }

    fn apply_generator_inverse(&self, gen: usize, x: &Vec<u32>) -> Result<Vec<u32>> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("{} is not bijective", self.rule.name)))?;
        let n = self.rule.size as usize;
        let mut y = x.clone();
        let (a, b) = inv[x[gen - 1] as usize * n + x[gen] as usize];
        y[gen - 1] = a;
        y[gen] = b;
        Ok(y)
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(self.strands - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{check_braid_relations, level_of, EventuallyConstant, FlipAction};

    #[test]
    fn known_solutions() {
        assert!(ybe_check(&PairRule::flip(4)));
        assert!(ybe_check(&PairRule::cyclic3()));
        assert!(ybe_check(&PairRule::negation3()));
        assert!(!ybe_check(&PairRule::xor2()));
        assert!(ybe_witness(&PairRule::xor2()).is_some());
    }

    #[test]
    fn unverified_rule_is_rejected() {
        assert!(matches!(ybe_action(PairRule::xor2(), 3), Err(Error::NotYangBaxter)));
    }

    #[test]
    fn cyclic_rule_satisfies_braid_relations() {
        let a = ybe_action(PairRule::cyclic3(), 4).unwrap();
        let u = a.universe();
        assert_eq!(u.len(), 81);
        let (count, w) = check_braid_relations(&a, 3, &u).unwrap();
        assert!(w.is_none());
        assert_eq!(count, 81 * 3);
        let x = vec![0, 2, 1, 1];
        assert_eq!(a.apply_inverse(2, &a.apply(2, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn flip_rule_matches_flip_action() {
        let a = ybe_action(PairRule::flip(3), 4).unwrap();
        for x in a.universe() {
            let s = EventuallyConstant::new(x[..3].to_vec(), x[3]);
            // σ_3 would move the tail value itself, so only σ_1, σ_2 are comparable
            for k in 1..=2 {
                let y = a.apply(k, &x).unwrap();
                let t = FlipAction.apply(k, &s).unwrap();
                assert_eq!(EventuallyConstant::new(y[..3].to_vec(), y[3]), t);
            }
            assert_eq!(level_of(&s, &FlipAction).unwrap(), level_of(&x, &a).unwrap());
        }
    }
}
