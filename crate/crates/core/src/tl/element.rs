use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::diagram::TlDiagram;
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// `a + b δ` with `δ² = β`; `β` lives in [`TlParameters`].
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct DeltaScalar {
    pub scalar: Scalar,
    pub delta: Scalar,
}

impl DeltaScalar {
    pub fn new(scalar: Scalar, delta: Scalar) -> Self {
        DeltaScalar { scalar, delta }
    }

    pub fn from_scalar(a: Scalar) -> Self {
        DeltaScalar::new(a, Scalar::zero())
    }

    pub fn zero() -> Self {
        DeltaScalar::from_scalar(Scalar::zero())
    }

    pub fn one() -> Self {
        DeltaScalar::from_scalar(Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.delta.is_zero()
    }

    pub fn add(&self, o: &DeltaScalar) -> DeltaScalar {
        DeltaScalar::new(&self.scalar + &o.scalar, &self.delta + &o.delta)
    }

    pub fn neg(&self) -> DeltaScalar {
        DeltaScalar::new(-&self.scalar, -&self.delta)
    }

    pub fn scale(&self, c: &Scalar) -> DeltaScalar {
        DeltaScalar::new(c * &self.scalar, c * &self.delta)
    }

    pub fn mul(&self, o: &DeltaScalar, beta: &Scalar) -> DeltaScalar {
        if self.delta.is_zero() && o.delta.is_zero() {
            return DeltaScalar::from_scalar(&self.scalar * &o.scalar);
        }
        let bd = &self.delta * &o.delta;
        DeltaScalar::new(
            &(&self.scalar * &o.scalar) + &(&bd * beta),
            &(&self.scalar * &o.delta) + &(&self.delta * &o.scalar),
        )
    }

    /// Complex conjugate; `δ` is real.
    pub fn conj(&self) -> DeltaScalar {
        DeltaScalar::new(self.scalar.conj(), self.delta.conj())
    }

    /// The plain scalar, or `OddDeltaPower` when a `δ` part survives.
    pub fn to_scalar(&self) -> Result<Scalar> {
        if self.delta.is_zero() {
            Ok(self.scalar.clone())
        } else {
            Err(Error::OddDeltaPower(self.to_string()))
        }
    }
}

impl fmt::Display for DeltaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.scalar.is_zero(), self.delta.is_zero()) {
            (_, true) => write!(f, "{}", self.scalar),
            (true, false) => write!(f, "({})δ", self.delta),
            (false, false) => write!(f, "{} + ({})δ", self.scalar, self.delta),
        }
    }
}

impl fmt::Debug for DeltaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The deformation parameter `q` and the derived loop value `β = 2 + q + 1/q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TlParameters {
    q: Scalar,
    q_inv: Scalar,
    beta: Scalar,
    beta_inv: Scalar,
}

impl TlParameters {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("q must be nonzero".into()));
        }
        let q_inv = q.inv()?;
        let beta = &(&Scalar::from_int(2) + &q) + &q_inv;
        if beta.is_zero() {
            return Err(Error::InvalidParameter(format!("q={q} gives loop value 0")));
        }
        let beta_inv = beta.inv()?;
        Ok(TlParameters { q, q_inv, beta, beta_inv })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn beta_inv(&self) -> &Scalar {
        &self.beta_inv
    }

    /// `|q| = 1`.
    pub fn is_unitary(&self) -> bool {
        self.q.norm_sqr() == *Scalar::one().re()
    }

    /// `δ^e` for any integer `e`.
    pub fn delta_pow(&self, e: i64) -> DeltaScalar {
        let half = e.div_euclid(2);
        let base = if half >= 0 {
            self.beta.pow(half as u32)
        } else {
            self.beta_inv.pow((-half) as u32)
        };
        if e.rem_euclid(2) == 0 {
            DeltaScalar::from_scalar(base)
        } else {
            DeltaScalar::new(Scalar::zero(), base)
        }
    }
}

/// A finite linear combination of diagrams on a fixed number of strands.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct TlElement {
    strands: usize,
    terms: BTreeMap<TlDiagram, DeltaScalar>,
}

impl TlElement {
    pub fn zero(m: usize) -> Self {
        TlElement {
            strands: m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        TlElement::from_diagram(TlDiagram::identity(m))
    }

    pub fn from_diagram(d: TlDiagram) -> Self {
        let mut x = TlElement::zero(d.strands());
        x.terms.insert(d, DeltaScalar::one());
        x
    }

    /// `δ^(c - m) D` with `c` closure loops: a rational multiple of a word
    /// in the projections, so its trace has no `δ` part.
    pub fn normalized(d: TlDiagram, p: &TlParameters) -> Self {
        let c = p.delta_pow(d.closure_loops() as i64 - d.strands() as i64);
        TlElement::from_diagram(d).scale(&c, p.beta())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(&self) -> &BTreeMap<TlDiagram, DeltaScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, d: TlDiagram, c: DeltaScalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_strands(&self, other: &TlElement) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch(format!(
                "{} strands against {}",
                self.strands, other.strands
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TlElement) -> Result<TlElement> {
        self.same_strands(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TlElement) -> Result<TlElement> {
        self.same_strands(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.neg());
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`; `beta` is the loop value.
    pub fn scale(&self, c: &DeltaScalar, beta: &Scalar) -> TlElement {
        let mut out = TlElement::zero(self.strands);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.mul(c, beta));
        }
        out
    }

    /// Embeds into `m` strands by adding through strands on the right.
    pub fn extend(&self, m: usize) -> Result<TlElement> {
        let mut out = TlElement::zero(m);
        for (d, c) in &self.terms {
            out.add_term(d.extend(m)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for TlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("[{c}]{d:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `x y`: `x` stacked on top of `y`, one factor `δ` per closed loop.
pub fn tl_multiply(x: &TlElement, y: &TlElement, p: &TlParameters) -> Result<TlElement> {
    x.same_strands(y)?;
    // products grouped by loop count, so each group is scaled by δ^loops once
    let mut by_loops = vec![TlElement::zero(x.strands); x.strands + 1];
    for (dx, cx) in &x.terms {
        for (dy, cy) in &y.terms {
            let (d, loops) = dx.compose(dy)?;
            by_loops[loops].add_term(d, cx.mul(cy, p.beta()));
        }
    }
    let mut groups = by_loops.into_iter();
    let mut out = groups.next().expect("loop count 0");
    for (i, group) in groups.enumerate() {
        let factor = p.delta_pow(i as i64 + 1);
        for (d, c) in group.terms {
            out.add_term(d, c.mul(&factor, p.beta()));
        }
    }
    Ok(out)
}

/// Normalised trace: a diagram whose closure has `c` loops gets `δ^(c - m)`.
pub fn markov_trace(x: &TlElement, p: &TlParameters) -> DeltaScalar {
    let m = x.strands as i64;
    x.terms.iter().fold(DeltaScalar::zero(), |acc, (d, c)| {
        acc.add(&c.mul(&p.delta_pow(d.closure_loops() as i64 - m), p.beta()))
    })
}

/// The trace as a plain scalar; an odd `δ` power is an error.
pub fn trace_scalar(x: &TlElement, p: &TlParameters) -> Result<Scalar> {
    markov_trace(x, p)
        .to_scalar()
        .map_err(|e| Error::OddDeltaPower(format!("trace of {x:?}: {e}")))
}

/// The projection `e_n = E_n / δ`.
pub fn projection(n: usize, p: &TlParameters, m: usize) -> Result<TlElement> {
    Ok(TlElement::from_diagram(TlDiagram::generator(m, n)?).scale(&p.delta_pow(-1), p.beta()))
}

/// `a e_n - (1 - e_n) = (a + 1) e_n - 1`.
fn hecke_element(a: &Scalar, n: usize, p: &TlParameters, m: usize) -> Result<TlElement> {
    let e = projection(n, p, m)?;
    e.scale(&DeltaScalar::from_scalar(a + &Scalar::one()), p.beta())
        .sub(&TlElement::one(m))
}

/// `g_n = q e_n - (1 - e_n)`.
pub fn g_element(n: usize, p: &TlParameters, m: usize) -> Result<TlElement> {
    hecke_element(p.q(), n, p, m)
}

/// `g_n^{-1} = q^{-1} e_n - (1 - e_n)`.
pub fn g_inverse(n: usize, p: &TlParameters, m: usize) -> Result<TlElement> {
    hecke_element(p.q_inv(), n, p, m)
}

/// Conjugate-linear involution flipping every diagram upside down.
pub fn adjoint(x: &TlElement) -> TlElement {
    let mut out = TlElement::zero(x.strands);
    for (d, c) in &x.terms {
        out.add_term(d.flipped(), c.conj());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: Scalar) -> TlParameters {
        TlParameters::new(q).unwrap()
    }

    fn qs() -> Vec<TlParameters> {
        vec![params(Scalar::one()), params(Scalar::from_int(2)), params(Scalar::i())]
    }

    fn mul(x: &TlElement, y: &TlElement, p: &TlParameters) -> TlElement {
        tl_multiply(x, y, p).unwrap()
    }

    fn scaled(x: &TlElement, c: &Scalar, p: &TlParameters) -> TlElement {
        x.scale(&DeltaScalar::from_scalar(c.clone()), p.beta())
    }

    #[test]
    fn parameters() {
        assert_eq!(*params(Scalar::one()).beta(), Scalar::from_int(4));
        assert_eq!(*params(Scalar::from_int(2)).beta(), Scalar::ratio(9, 2));
        assert_eq!(*params(Scalar::i()).beta(), Scalar::from_int(2));
        assert!(params(Scalar::i()).is_unitary());
        assert!(!params(Scalar::from_int(2)).is_unitary());
        assert!(TlParameters::new(Scalar::zero()).is_err());
        assert!(TlParameters::new(-Scalar::one()).is_err());
    }

    #[test]
    fn projection_squares_to_itself() {
        let p = params(Scalar::from_int(2));
        let e1 = projection(1, &p, 3).unwrap();
        // one loop: δ · δ^{-2} E_1 = δ^{-1} E_1
        let (_, loops) = TlDiagram::generator(3, 1).unwrap().compose(&TlDiagram::generator(3, 1).unwrap()).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(mul(&e1, &e1, &p), e1);
    }

    #[test]
    fn projection_relations() {
        for p in qs() {
            for m in 2..=8 {
                let e: Vec<TlElement> = (1..m).map(|n| projection(n, &p, m).unwrap()).collect();
                for a in 0..e.len() {
                    assert_eq!(mul(&e[a], &e[a], &p), e[a]);
                    for b in 0..e.len() {
                        if a.abs_diff(b) == 1 {
                            let lhs = mul(&mul(&e[a], &e[b], &p), &e[a], &p);
                            assert_eq!(lhs, scaled(&e[a], p.beta_inv(), &p), "m={m} a={a} b={b}");
                        } else if a.abs_diff(b) >= 2 {
                            assert_eq!(mul(&e[a], &e[b], &p), mul(&e[b], &e[a], &p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let p = params(Scalar::from_int(2));
        let m = 5;
        assert_eq!(trace_scalar(&TlElement::one(m), &p).unwrap(), Scalar::one());
        let e1 = projection(1, &p, m).unwrap();
        let e2 = projection(2, &p, m).unwrap();
        assert_eq!(trace_scalar(&e1, &p).unwrap(), *p.beta_inv());
        assert_eq!(trace_scalar(&mul(&e1, &e2, &p), &p).unwrap(), p.beta_inv().pow(2));
        // a bare generator diagram has one loop fewer than the identity
        let raw = TlElement::from_diagram(TlDiagram::generator(m, 1).unwrap());
        assert!(matches!(trace_scalar(&raw, &p), Err(Error::OddDeltaPower(_))));
    }

    #[test]
    fn trace_is_tracial_and_markov() {
        for p in qs() {
            let m = 6;
            let all = TlDiagram::all(m);
            let pick: Vec<TlElement> = all.iter().step_by(11).cloned().map(TlElement::from_diagram).collect();
            for x in &pick {
                for y in &pick {
                    assert_eq!(markov_trace(&mul(x, y, &p), &p), markov_trace(&mul(y, x, &p), &p));
                }
            }
            // x on strands 0..4 is generated by e_1..e_3
            for d in TlDiagram::all(4) {
                let x = TlElement::from_diagram(d).extend(m).unwrap();
                let e4 = projection(4, &p, m).unwrap();
                let lhs = markov_trace(&mul(&x, &e4, &p), &p);
                let rhs = markov_trace(&x, &p).mul(&DeltaScalar::from_scalar(p.beta_inv().clone()), p.beta());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn g_inverse_and_hecke() {
        for p in qs() {
            let m = 5;
            let one = TlElement::one(m);
            for n in 1..m {
                let g = g_element(n, &p, m).unwrap();
                let gi = g_inverse(n, &p, m).unwrap();
                assert_eq!(mul(&g, &gi, &p), one);
                assert_eq!(mul(&gi, &g, &p), one);
                let rhs = scaled(&g, &(p.q() - &Scalar::one()), &p).add(&scaled(&one, p.q(), &p)).unwrap();
                assert_eq!(mul(&g, &g, &p), rhs);
            }
        }
        let p = params(Scalar::one());
        let g = g_element(1, &p, 3).unwrap();
        assert_eq!(mul(&g, &g, &p), TlElement::one(3));
    }

    #[test]
    fn g_braid_relations() {
        for p in qs() {
            let m = 8;
            let g: Vec<TlElement> = (1..m).map(|n| g_element(n, &p, m).unwrap()).collect();
            for a in 0..g.len() {
                for b in a + 1..g.len() {
                    if b == a + 1 {
                        let l = mul(&mul(&g[a], &g[b], &p), &g[a], &p);
                        let r = mul(&mul(&g[b], &g[a], &p), &g[b], &p);
                        assert_eq!(l, r);
                    } else {
                        assert_eq!(mul(&g[a], &g[b], &p), mul(&g[b], &g[a], &p));
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_diagrams_have_scalar_traces() {
        let p = params(Scalar::from_int(2));
        for d in TlDiagram::all(5) {
            assert!(trace_scalar(&TlElement::normalized(d, &p), &p).is_ok());
        }
        assert_eq!(TlDiagram::all(5).len(), 42);
    }

    #[test]
    fn trace_of_generator_words_is_scalar() {
        let p = params(Scalar::from_int(2));
        let m = 5;
        let g1 = g_element(1, &p, m).unwrap();
        let g3i = g_inverse(3, &p, m).unwrap();
        let e2 = projection(2, &p, m).unwrap();
        let w = mul(&mul(&g1, &e2, &p), &mul(&g3i, &e2, &p), &p);
        assert!(trace_scalar(&w, &p).is_ok());
    }

    #[test]
    fn adjoint_properties() {
        let p2 = params(Scalar::from_int(2));
        let pi = params(Scalar::i());
        let m = 4;
        let e1 = projection(1, &p2, m).unwrap();
        assert_eq!(adjoint(&e1), e1);
        let pick: Vec<TlElement> = TlDiagram::all(m)
            .into_iter()
            .map(|d| scaled(&TlElement::from_diagram(d), &Scalar::gaussian(1, 2), &pi))
            .collect();
        for x in &pick {
            for y in &pick {
                assert_eq!(adjoint(&mul(x, y, &pi)), mul(&adjoint(y), &adjoint(x), &pi));
            }
        }
        let gi = g_element(2, &pi, m).unwrap();
        assert_eq!(adjoint(&gi), hecke_element(&Scalar::gaussian(0, -1), 2, &pi, m).unwrap());
        assert_eq!(mul(&gi, &adjoint(&gi), &pi), TlElement::one(m));
        let g2 = g_element(2, &p2, m).unwrap();
        assert_ne!(mul(&g2, &adjoint(&g2), &p2), TlElement::one(m));
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let p = params(Scalar::one());
        assert!(tl_multiply(&TlElement::one(3), &TlElement::one(4), &p).is_err());
    }
}
