use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng as _;

use super::diagram::TlDiagram;
use super::element::{adjoint, g_element, g_inverse, projection, tl_multiply, trace_scalar, TlElement, TlParameters};
use crate::braid::{braid_sco_build, BraidAction};
use crate::error::{Error, Result};
use crate::ncprob::{Distribution, ProbabilitySco};
use crate::simplicial::Carrier;

/// Diagram algebras above this size are sampled instead of enumerated.
const EXHAUSTIVE_DIAGRAMS: usize = 42;
const SAMPLED_DIAGRAMS: usize = 48;

/// `σ_k x = g_{k+offset} x g_{k+offset}^{-1}` on `m` strands.
pub struct TlConjugation {
    params: TlParameters,
    strands: usize,
    offset: usize,
    g: Vec<TlElement>,
    g_inv: Vec<TlElement>,
}

/// The conjugation action of the braid generators through `g_n`, shifted by `offset`.
pub fn tl_conjugation_action(p: &TlParameters, m: usize, offset: usize) -> Result<TlConjugation> {
    if offset + 2 > m {
        return Err(Error::IndexOutOfRange(format!(
            "offset {offset} leaves no generator on {m} strands"
        )));
    }
    let g = (1..m).map(|n| g_element(n, p, m)).collect::<Result<_>>()?;
    let g_inv = (1..m).map(|n| g_inverse(n, p, m)).collect::<Result<_>>()?;
    Ok(TlConjugation {
        params: p.clone(),
        strands: m,
        offset,
        g,
        g_inv,
    })
}

impl TlConjugation {
    pub fn params(&self) -> &TlParameters {
        &self.params
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    fn conjugate(&self, left: &TlElement, x: &TlElement, right: &TlElement) -> Result<TlElement> {
        let p = &self.params;
        tl_multiply(&tl_multiply(left, x, p)?, right, p)
    }

    /// Level `n` is the algebra of diagrams on the first `offset + n + 1` strands.
    pub fn level_carrier(&self, n: isize) -> Carrier<TlElement> {
        let k = (self.offset as isize + n + 1).clamp(0, self.strands as isize) as usize;
        let m = self.strands;
        let diagrams: Vec<TlElement> = TlDiagram::all(k)
            .into_iter()
            .map(|d| TlElement::normalized(d, &self.params).extend(m).expect("fewer strands"))
            .collect();
        if diagrams.len() <= EXHAUSTIVE_DIAGRAMS {
            return Carrier::finite(diagrams);
        }
        let pool = Arc::new(diagrams);
        Carrier::sampled(SAMPLED_DIAGRAMS, move |rng| pool[rng.gen_range(0..pool.len())].clone())
    }
}

impl BraidAction for TlConjugation {
    type Elem = TlElement;

    fn name(&self) -> String {
        format!("TL conjugation q={} m={} offset={}", self.params.q(), self.strands, self.offset)
    }

    fn apply_generator(&self, gen: usize, x: &TlElement) -> Result<TlElement> {
        let i = gen + self.offset - 1;
        self.conjugate(&self.g[i], x, &self.g_inv[i])
    }

    fn apply_generator_inverse(&self, gen: usize, x: &TlElement) -> Result<TlElement> {
        let i = gen + self.offset - 1;
        self.conjugate(&self.g_inv[i], x, &self.g[i])
    }

    fn generator_bound(&self) -> Option<usize> {
        Some(self.strands - 1 - self.offset)
    }
}

/// `g_{m0+N} ... g_{m0+1} e_{m0} g_{m0+1}^{-1} ... g_{m0+N}^{-1}`.
pub fn spreadable_projections(m0: usize, big_n: usize, p: &TlParameters, m: usize) -> Result<TlElement> {
    if m0 == 0 || m0 + big_n > m - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "e_({m0},{big_n}) needs {} strands, have {m}",
            m0 + big_n + 1
        )));
    }
    let mut x = projection(m0, p, m)?;
    for j in m0 + 1..=m0 + big_n {
        x = tl_multiply(&tl_multiply(&g_element(j, p, m)?, &x, p)?, &g_inverse(j, p, m)?, p)?;
    }
    Ok(x)
}

/// Moments `tr(e_(m0,N_1) ... e_(m0,N_R))` over the single letter `e`.
///
/// Star mode is on exactly when every `g_n` is unitary, in which case each
/// projection is self-adjoint.
pub fn projection_moments(p: &TlParameters, m0: usize, m: usize) -> Result<Distribution> {
    if m0 == 0 || m0 + 1 > m {
        return Err(Error::IndexOutOfRange(format!("offset {m0} on {m} strands")));
    }
    let projections: Vec<TlElement> = (0..m - m0)
        .map(|n| spreadable_projections(m0, n, p, m))
        .collect::<Result<_>>()?;
    let params = p.clone();
    // products keyed by their position sequence; spreadability checks revisit prefixes constantly
    let products: Mutex<HashMap<Vec<usize>, TlElement>> = Mutex::new(HashMap::new());
    let d = Distribution::new(
        format!("TL projections q={} m0={m0} m={m}", p.q()),
        vec!["e".to_string()],
        move |w| {
            let mut acc = TlElement::one(m);
            let mut key = Vec::with_capacity(w.len());
            for f in w.factors() {
                let e = projections.get(f.pos).ok_or_else(|| {
                    Error::TruncationExceeded(format!("position {} needs more than {m} strands", f.pos))
                })?;
                key.push(f.pos);
                let cached = products.lock().expect("cache poisoned").get(&key).cloned();
                acc = match cached {
                    Some(x) => x,
                    None => {
                        let x = tl_multiply(&acc, e, &params)?;
                        products.lock().expect("cache poisoned").insert(key.clone(), x.clone());
                        x
                    }
                };
            }
            trace_scalar(&acc, &params)
        },
    )?;
    if unitary_generators(p, m)? {
        d.with_involution(&[("e", "e")])
    } else {
        Ok(d)
    }
}

/// `g_n g_n^* = 1` for every generator on `m` strands.
pub fn unitary_generators(p: &TlParameters, m: usize) -> Result<bool> {
    let one = TlElement::one(m);
    for n in 1..m {
        let g = g_element(n, p, m)?;
        if tl_multiply(&g, &adjoint(&g), p)? != one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The SCO of the `m0`-shifted conjugation action with the Markov trace on
/// every level and the single letter `e = e_{m0}` at level 0.
pub fn tl_probability_sco(
    p: &TlParameters,
    m0: usize,
    m: usize,
    n_max: usize,
    seed: u64,
) -> Result<ProbabilitySco<TlElement>> {
    if m0 == 0 {
        return Err(Error::InvalidParameter("the offset must be at least 1".into()));
    }
    let action = Arc::new(tl_conjugation_action(p, m, m0)?);
    let carriers = Arc::clone(&action);
    let sco = braid_sco_build(Arc::clone(&action), n_max, move |n| Ok(carriers.level_carrier(n)), None, seed)?;
    let (trace_p, mul_p) = (p.clone(), p.clone());
    Ok(ProbabilitySco::new(
        sco,
        vec![("e".to_string(), projection(m0, p, m)?)],
        move |_, x: &TlElement| trace_scalar(x, &trace_p),
        move |a: &TlElement, b: &TlElement| tl_multiply(a, b, &mul_p),
    )
    .with_adjoint(|x: &TlElement| Ok(adjoint(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::braid::{apply_word, level_of, BraidWord};
    use crate::ncprob::{spreadability_check, star_spreadability_mode, MomentWord};
    use crate::simplicial::sco_verify;

    fn params(q: Scalar) -> TlParameters {
        TlParameters::new(q).unwrap()
    }

    #[test]
    fn conjugation_respects_trace_and_levels() {
        let p = params(Scalar::from_int(2));
        let a = tl_conjugation_action(&p, 6, 0).unwrap();
        let e1 = projection(1, &p, 6).unwrap();
        let moved = a.apply(2, &e1).unwrap();
        assert_ne!(moved, e1);
        assert_eq!(trace_scalar(&moved, &p).unwrap(), *p.beta_inv());
        assert_eq!(level_of(&e1, &a).unwrap(), 1);
        assert_eq!(level_of(&TlElement::one(6), &a).unwrap(), -1);
        assert_eq!(a.apply_inverse(2, &moved).unwrap(), e1);
        assert_eq!(a.apply(1, &e1).unwrap(), e1);
        assert!(a.apply(6, &e1).is_err());
    }

    #[test]
    fn sco_passes() {
        for q in [Scalar::from_int(2), Scalar::i()] {
            let p = params(q);
            let a = Arc::new(tl_conjugation_action(&p, 6, 0).unwrap());
            let c = Arc::clone(&a);
            let s = braid_sco_build(a, 3, move |n| Ok(c.level_carrier(n)), None, 1).unwrap();
            let r = sco_verify(&s, 1).unwrap();
            assert!(r.passed(), "{:?}", r.witness);
        }
    }

    #[test]
    fn projections_and_their_moments() {
        let p = params(Scalar::from_int(2));
        let m = 8;
        assert_eq!(spreadable_projections(1, 0, &p, m).unwrap(), projection(1, &p, m).unwrap());
        let e12 = spreadable_projections(1, 2, &p, m).unwrap();
        assert_eq!(tl_multiply(&e12, &e12, &p).unwrap(), e12);
        assert_ne!(adjoint(&e12), e12);
        assert!(spreadable_projections(1, 7, &p, m).is_err());

        // single braid word applied in the shifted action
        let a = tl_conjugation_action(&p, m, 1).unwrap();
        let w = BraidWord::positive([2, 1]).unwrap();
        assert_eq!(apply_word(&a, &w, &projection(1, &p, m).unwrap()).unwrap(), e12);

        let d = projection_moments(&p, 1, m).unwrap();
        assert!(!d.star_mode());
        let a01 = d.eval(&MomentWord::plain([(0, "e"), (1, "e")])).unwrap();
        let a02 = d.eval(&MomentWord::plain([(0, "e"), (2, "e")])).unwrap();
        assert_eq!(a01, a02);
    }

    #[test]
    fn sequence_route_matches_direct_moments() {
        let p = params(Scalar::from_int(2));
        let s = tl_probability_sco(&p, 1, 6, 3, 0).unwrap();
        let induced = s.distribution(0).unwrap();
        let direct = projection_moments(&p, 1, 6).unwrap();
        for w in direct.words(3, 3, false) {
            assert_eq!(induced.eval(&w).unwrap(), direct.eval(&w).unwrap(), "{w}");
        }
        assert!(s.verify_state(0).unwrap() > 0);
    }

    #[test]
    fn spreadable_at_both_parameters() {
        for q in [Scalar::from_int(2), Scalar::i()] {
            let p = params(q);
            let d = projection_moments(&p, 1, 8).unwrap();
            assert!(spreadability_check(&d, 3, 3, false).unwrap().passed());
        }
    }

    #[test]
    fn star_mode_follows_unitarity() {
        let pi = params(Scalar::i());
        let s = tl_probability_sco(&pi, 1, 6, 3, 0).unwrap();
        let d = s.star_distribution(0).unwrap();
        assert!(spreadability_check(&d, 2, 2, true).unwrap().passed());
        assert!(star_spreadability_mode(&d).is_ok());

        let p2 = params(Scalar::from_int(2));
        let s = tl_probability_sco(&p2, 1, 6, 3, 0).unwrap();
        assert!(s.star_witness(0).unwrap().is_some());
        assert!(matches!(s.star_distribution(0), Err(Error::StarUnavailable(_))));
    }
}
