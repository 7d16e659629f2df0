use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A planar matching of `2m` boundary points: top `0..m` left to right, bottom
/// `m..2m` left to right, so bottom point `i` is `m + i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TlDiagram {
    partner: Vec<u8>,
}

/// Position of a point when walking the boundary: along the top, then back along the bottom.
fn boundary_index(m: usize, p: usize) -> usize {
    if p < m {
        p
    } else {
        3 * m - 1 - p
    }
}

impl TlDiagram {
    /// Fails unless `partner` is a non-crossing perfect matching.
    pub fn new(partner: Vec<u8>) -> Result<Self> {
        let n = partner.len();
        if n % 2 != 0 || n > 254 {
            return Err(Error::InvalidParameter(format!("{n} boundary points")));
        }
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if q >= n || q == p || partner[q] as usize != p {
                return Err(Error::InvalidParameter(format!("{partner:?} is not a perfect matching")));
            }
        }
        let m = n / 2;
        let arcs: Vec<(usize, usize)> = (0..n)
            .filter(|&p| p < partner[p] as usize)
            .map(|p| {
                let (a, b) = (boundary_index(m, p), boundary_index(m, partner[p] as usize));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(Error::InvalidParameter(format!("{partner:?} has crossing arcs")));
                }
            }
        }
        Ok(TlDiagram { partner })
    }

    pub fn identity(m: usize) -> Self {
        let partner = (0..2 * m).map(|p| ((p + m) % (2 * m)) as u8).collect();
        TlDiagram { partner }
    }

    /// The cup-cap at strands `n-1, n`, for `1 <= n <= m-1`.
    pub fn generator(m: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= m {
            return Err(Error::IndexOutOfRange(format!("E_{n} on {m} strands")));
        }
        let mut d = TlDiagram::identity(m);
        let p = &mut d.partner;
        let (a, b) = (n - 1, n);
        p[a] = b as u8;
        p[b] = a as u8;
        p[m + a] = (m + b) as u8;
        p[m + b] = (m + a) as u8;
        Ok(d)
    }

    /// Every diagram on `m` strands; there are Catalan(m) of them.
    pub fn all(m: usize) -> Vec<TlDiagram> {
        // non-crossing matchings of the boundary interval lo..hi
        fn matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
            if lo >= hi {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for j in (lo + 1..hi).step_by(2) {
                for inner in matchings(lo + 1, j) {
                    for outer in matchings(j + 1, hi) {
                        let mut arcs = vec![(lo, j)];
                        arcs.extend(&inner);
                        arcs.extend(&outer);
                        out.push(arcs);
                    }
                }
            }
            out
        }
        // boundary_index is an involution on 0..2m
        let point = |b: usize| boundary_index(m, b);
        let mut out: Vec<TlDiagram> = matchings(0, 2 * m)
            .into_iter()
            .map(|arcs| {
                let mut partner = vec![0u8; 2 * m];
                for (a, b) in arcs {
                    partner[point(a)] = point(b) as u8;
                    partner[point(b)] = point(a) as u8;
                }
                TlDiagram { partner }
            })
            .collect();
        out.sort();
        out
    }

    /// `d` on the first strands, through strands on the rest.
    pub fn extend(&self, m: usize) -> Result<Self> {
        let k = self.strands();
        if m < k {
            return Err(Error::DimensionMismatch(format!("cannot shrink {k} strands to {m}")));
        }
        let map = |p: usize| if p < k { p } else { m + (p - k) };
        let mut d = TlDiagram::identity(m);
        for (p, &q) in self.partner.iter().enumerate() {
            d.partner[map(p)] = map(q as usize) as u8;
        }
        Ok(d)
    }

    pub fn strands(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    /// Arcs as `(p, q)` with `p < q`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner(p))
            .map(|p| (p, self.partner(p)))
            .collect()
    }

    /// Top-to-bottom mirror image.
    pub fn flipped(&self) -> Self {
        let m = self.strands();
        let swap = |p: usize| (p + m) % (2 * m);
        let mut partner = vec![0u8; 2 * m];
        for (p, &q) in self.partner.iter().enumerate() {
            partner[swap(p)] = swap(q as usize) as u8;
        }
        TlDiagram { partner }
    }

    /// `self` stacked on top of `other`: the bottom of `self` is glued to the
    /// top of `other`. Returns the diagram and the number of closed loops.
    pub fn compose(&self, other: &TlDiagram) -> Result<(TlDiagram, usize)> {
        let m = self.strands();
        if other.strands() != m {
            return Err(Error::DimensionMismatch(format!("{m} strands against {}", other.strands())));
        }
        let mut partner = vec![u8::MAX; 2 * m];
        // glued[i]: the middle point i lies on an open strand
        let mut glued = vec![false; m];
        for s in 0..2 * m {
            if partner[s] != u8::MAX {
                continue;
            }
            // top points start in `self`, bottom points in `other`
            let mut upper = s < m;
            let mut p = s;
            let end = loop {
                let q = if upper { self.partner(p) } else { other.partner(p) };
                if upper == (q < m) {
                    break q;
                }
                let i = if upper { q - m } else { q };
                glued[i] = true;
                upper = !upper;
                p = if upper { m + i } else { i };
            };
            partner[s] = end as u8;
            partner[end] = s as u8;
        }
        let mut loops = 0;
        for i in 0..m {
            if glued[i] {
                continue;
            }
            loops += 1;
            let mut j = i;
            loop {
                glued[j] = true;
                let a = self.partner(m + j) - m;
                glued[a] = true;
                j = other.partner(a);
                if j == i {
                    break;
                }
            }
        }
        Ok((TlDiagram { partner }, loops))
    }

    /// Number of loops in the trace closure, which joins top `i` to bottom `i`.
    pub fn closure_loops(&self) -> usize {
        let m = self.strands();
        let mut seen = vec![false; 2 * m];
        let mut loops = 0;
        for s in 0..2 * m {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            loop {
                seen[p] = true;
                let q = self.partner(p);
                seen[q] = true;
                p = (q + m) % (2 * m);
                if p == s {
                    break;
                }
            }
        }
        loops
    }
}

impl fmt::Debug for TlDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs())
    }
}

impl Serialize for TlDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}
