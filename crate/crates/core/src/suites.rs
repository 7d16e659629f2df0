//! The standard examples, and the checks the command line and the acceptance
//! tests run on them. Every function returns a [`VerifyReport`]; errors are
//! reserved for bad parameters and for objects that cannot be built.

use std::fmt::Debug;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{Matrix, Scalar, Vector};
use crate::braid::{
    braid_sco_build, diagram_identity_check, level_of, lemma_power_check, ybe_action, BraidAction,
    EventuallyConstant, FlipAction, MatrixAction, PairRule, YbeAction, ybe_witness,
};
use crate::cohomology::{cohomology_table, h1_explicit, verify_dd_zero, CochainComplex, CohomologyRow, ModuleSco};
use crate::error::{Error, Result};
use crate::groups::{
    braid_conj_sco, burau_action, embedded_restriction, gl_sco, homomorphism_check, sym_sco, PermConjugationAction,
};
use crate::ncprob::{tensor_sco, Distribution, MomentWord, TensorModel};
use crate::report::{VerifyReport, Witness};
use crate::simplicial::{
    nat_shift_system, ordinal_sco, prop_partial_check, sco_from_shifts, sco_verify, shifts_from_sco,
    systems_agree, Carrier, CheckMode, PartialShiftSystem, Sco,
};
use crate::tl::{
    adjoint, g_element, g_inverse, markov_trace, projection, projection_moments, tl_conjugation_action,
    tl_multiply, trace_scalar, DeltaScalar, TlDiagram, TlElement, TlParameters,
};

const FLIP_ALPHABET: u32 = 3;
const SAMPLES: usize = 12;
/// YBE levels larger than this are sampled.
const YBE_EXHAUSTIVE: usize = 729;

/// Folds `other` into `into`: counts add up, the first witness wins.
pub fn merge(into: &mut VerifyReport, other: VerifyReport) {
    into.checked_count += other.checked_count;
    if let Some(w) = other.witness {
        into.fail(w);
    }
    into.notes.extend(other.notes);
    if matches!(other.mode, CheckMode::Sampled { .. }) {
        into.mode = other.mode;
    }
}

/// Named example objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    Ordinal,
    Tensor,
    Gl,
    Sym,
    BraidConj,
    Flip,
    Ybe,
    YbeNeg,
    Tl,
    Burau,
    MatrixFlip,
    PermConj,
}

impl Example {
    pub const ALL: [Example; 12] = [
        Example::Ordinal,
        Example::Tensor,
        Example::Gl,
        Example::Sym,
        Example::BraidConj,
        Example::Flip,
        Example::Ybe,
        Example::YbeNeg,
        Example::Tl,
        Example::Burau,
        Example::MatrixFlip,
        Example::PermConj,
    ];

    /// Examples that come from a braid monoid action.
    pub const ACTIONS: [Example; 7] = [
        Example::Flip,
        Example::Ybe,
        Example::YbeNeg,
        Example::Tl,
        Example::Burau,
        Example::MatrixFlip,
        Example::PermConj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::Ordinal => "ordinal",
            Example::Tensor => "tensor",
            Example::Gl => "gl",
            Example::Sym => "sym",
            Example::BraidConj => "braid-conj",
            Example::Flip => "flip",
            Example::Ybe => "ybe",
            Example::YbeNeg => "ybe-neg",
            Example::Tl => "tl",
            Example::Burau => "burau",
            Example::MatrixFlip => "matrix-flip",
            Example::PermConj => "perm-conj",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Example::Ordinal => "finite ordinals with face maps",
            Example::Tensor => "tensor powers of 2x2 matrices, unit insertion",
            Example::Gl => "GL(n+1, Q) with block embeddings",
            Example::Sym => "symmetric groups with index-skipping embeddings",
            Example::BraidConj => "braid groups with conjugation cofaces",
            Example::Flip => "coordinate flips on eventually constant sequences",
            Example::Ybe => "Yang-Baxter solution (x,y) -> (y+1,x) on Z/3",
            Example::YbeNeg => "Yang-Baxter solution (x,y) -> (-y,-x) on Z/3",
            Example::Tl => "conjugation by g_n in the Temperley-Lieb algebra",
            Example::Burau => "Burau representation at t = 2",
            Example::MatrixFlip => "coordinate permutations of Q^d",
            Example::PermConj => "permutation conjugation of block matrices",
        }
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown example {s}")))
    }
}

/// Knobs shared by the example builders.
#[derive(Clone, Debug)]
pub struct ExampleParams {
    /// Deformation parameter for the Temperley-Lieb example.
    pub q: Scalar,
    /// Strand count for the Temperley-Lieb example; `None` picks the smallest that fits.
    pub strands: Option<usize>,
    pub seed: u64,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams {
            q: Scalar::from_int(2),
            strands: None,
            seed: 0,
        }
    }
}

fn flip_build(top: usize, seed: u64) -> Result<(Arc<FlipAction>, Sco<EventuallyConstant>)> {
    let a = Arc::new(FlipAction);
    let s = braid_sco_build(Arc::clone(&a), top, |n| Ok(FlipAction::level_carrier(FLIP_ALPHABET, n)), None, seed)?;
    Ok((a, s))
}

fn ybe_build(rule: PairRule, top: usize, seed: u64) -> Result<(Arc<YbeAction>, Sco<Vec<u32>>)> {
    let a = Arc::new(ybe_action(rule, top + 2)?);
    let universe = a.universe();
    let b = Arc::clone(&a);
    let levels: Vec<Vec<Vec<u32>>> = (-1..=top as isize)
        .map(|n| {
            let mut keep = Vec::new();
            for x in &universe {
                if level_of(x, b.as_ref())? <= n {
                    keep.push(x.clone());
                }
            }
            Ok(keep)
        })
        .collect::<Result<_>>()?;
    let s = braid_sco_build(
        Arc::clone(&a),
        top,
        move |n| {
            let keep = levels[(n + 1) as usize].clone();
            if keep.len() <= YBE_EXHAUSTIVE {
                return Ok(Carrier::finite(keep));
            }
            let pool = Arc::new(keep);
            Ok(Carrier::sampled(64, move |rng| {
                use rand::Rng as _;
                pool[rng.gen_range(0..pool.len())].clone()
            }))
        },
        None,
        seed,
    )?;
    Ok((a, s))
}

fn tl_build(top: usize, p: &ExampleParams) -> Result<(Arc<crate::tl::TlConjugation>, Sco<TlElement>)> {
    let m = p.strands.unwrap_or((top + 2).max(6));
    let params = TlParameters::new(p.q.clone())?;
    let a = Arc::new(tl_conjugation_action(&params, m, 0)?);
    let b = Arc::clone(&a);
    let s = braid_sco_build(Arc::clone(&a), top, move |n| Ok(b.level_carrier(n)), None, p.seed)?;
    Ok((a, s))
}

fn matrix_build(a: MatrixAction, top: usize, seed: u64) -> Result<(Arc<MatrixAction>, Sco<Vector>)> {
    let a = Arc::new(a);
    let b = Arc::clone(&a);
    let s = braid_sco_build(Arc::clone(&a), top, move |n| b.level_carrier(n, SAMPLES), None, seed)?;
    Ok((a, s))
}

fn perm_build(top: usize, seed: u64) -> Result<(Arc<PermConjugationAction>, Sco<Matrix>)> {
    let a = PermConjugationAction { size: top + 2 };
    let s = braid_sco_build(
        Arc::new(a),
        top,
        move |n| Ok(a.embedded_carrier(n, SAMPLES)),
        Some(embedded_restriction(a)),
        seed,
    )?;
    Ok((Arc::new(a), s))
}

/// The cosimplicial identities, plus the group law for the group examples.
pub fn sco_suite(ex: Example, n_max: usize, p: &ExampleParams) -> Result<VerifyReport> {
    let seed = p.seed;
    let mut report = match ex {
        Example::Ordinal => sco_verify(&ordinal_sco(n_max), seed)?,
        Example::Tensor => sco_verify(&tensor_sco(2, n_max, 32), seed)?,
        Example::Gl => {
            let s = gl_sco(n_max, SAMPLES);
            let mut r = sco_verify(&s, seed)?;
            merge(&mut r, homomorphism_check(&s, |a, b| a.mul(b), seed)?);
            r
        }
        Example::Sym => {
            let s = sym_sco(n_max);
            let mut r = sco_verify(&s, seed)?;
            merge(&mut r, homomorphism_check(&s, |a, b| a.compose(b), seed)?);
            r
        }
        Example::BraidConj => sco_verify(&braid_conj_sco(n_max, SAMPLES), seed)?,
        Example::Flip => sco_verify(&flip_build(n_max, seed)?.1, seed)?,
        Example::Ybe => sco_verify(&ybe_build(PairRule::cyclic3(), n_max, seed)?.1, seed)?,
        Example::YbeNeg => sco_verify(&ybe_build(PairRule::negation3(), n_max, seed)?.1, seed)?,
        Example::Tl => sco_verify(&tl_build(n_max, p)?.1, seed)?,
        Example::Burau => sco_verify(&matrix_build(burau_action(n_max + 2, &Scalar::from_int(2))?, n_max, seed)?.1, seed)?,
        Example::MatrixFlip => sco_verify(&matrix_build(MatrixAction::flip(n_max + 2), n_max, seed)?.1, seed)?,
        Example::PermConj => sco_verify(&perm_build(n_max, seed)?.1, seed)?,
    };
    report.suite = format!("sco {}", ex.name());
    Ok(report)
}

/// Checks the power formula for the canonical shifts against single braid
/// words for `n <= n_max`, `1 <= N <= big_n`, and the two-word identity for
/// `i < j <= n <= n_max + 1`.
pub fn braid_identities<A>(a: &A, s: &Sco<A::Elem>, n_max: usize, big_n: usize, seed: u64) -> Result<VerifyReport>
where
    A: BraidAction + ?Sized,
{
    let mut report = VerifyReport::new(format!("braid identities: {}", a.name()), s.mode(seed));
    let p = shifts_from_sco(s, seed)?;
    for n in 0..=n_max {
        let xs = p.elements(n, seed)?;
        for big in 1..=big_n.min(p.n_max() - n) {
            for x in &xs {
                report.checked_count += 1;
                if !lemma_power_check(a, &p, n, big, x)? {
                    report.fail(
                        Witness::new(format!("α_{n}^{big} x = σ_{}..σ_{} x", n + big, n + 1), format!("{x:?}"))
                            .level(n as isize),
                    );
                    return Ok(report);
                }
            }
        }
    }
    for n in 1..=(n_max + 1).min(s.n_max()) {
        let xs = s.elements(n as isize - 1, seed)?;
        for j in 1..=n {
            for i in 0..j {
                for x in &xs {
                    report.checked_count += 1;
                    if !diagram_identity_check(a, i, j, n, x)? {
                        report.fail(Witness::new("two-word braid identity", format!("{x:?}")).ij(i, j).level(n as isize));
                        return Ok(report);
                    }
                }
            }
        }
    }
    if report.checked_count == 0 {
        report = report.note("no tested element below the top level; the identities hold vacuously");
    }
    Ok(report)
}

/// [`braid_identities`] on one of the action examples.
pub fn braid_suite(ex: Example, n_max: usize, big_n: usize, p: &ExampleParams) -> Result<VerifyReport> {
    let top = n_max + big_n;
    let seed = p.seed;
    let mut report = match ex {
        Example::Flip => {
            let (a, s) = flip_build(top, seed)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        Example::Ybe | Example::YbeNeg => {
            let rule = if ex == Example::Ybe { PairRule::cyclic3() } else { PairRule::negation3() };
            let (a, s) = ybe_build(rule, top, seed)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        Example::Tl => {
            let (a, s) = tl_build(top, p)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        Example::Burau => {
            let (a, s) = matrix_build(burau_action(top + 2, &Scalar::from_int(2))?, top, seed)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        Example::MatrixFlip => {
            let (a, s) = matrix_build(MatrixAction::flip(top + 2), top, seed)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        Example::PermConj => {
            let (a, s) = perm_build(top, seed)?;
            braid_identities(a.as_ref(), &s, n_max, big_n, seed)?
        }
        other => {
            return Err(Error::InvalidParameter(format!("{} does not come from a braid action", other.name())));
        }
    };
    report.suite = format!("braid-check {}", ex.name());
    Ok(report)
}

fn round_trip<T>(s: &Sco<T>, seed: u64) -> Result<VerifyReport>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let mut report = VerifyReport::new(format!("round trip: {}", s.name()), s.mode(seed));
    let p = shifts_from_sco(s, seed)?;
    let back = sco_from_shifts(&p, seed)?;
    if let Some(w) = s.agrees_with(&back, seed)? {
        report.fail(w);
    }
    let again = shifts_from_sco(&back, seed)?;
    if let Some(w) = systems_agree(&p, &again, seed)? {
        report.fail(w);
    }
    report.checked_count += (0..=s.n_max())
        .map(|n| s.elements(n as isize, seed).map(|v| v.len() * (n + 2)))
        .sum::<Result<usize>>()?;
    Ok(report)
}

fn shifts_round_trip<T>(p: &PartialShiftSystem<T>, seed: u64) -> Result<VerifyReport>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let mut report = VerifyReport::new(format!("round trip: {}", p.name()), CheckMode::Exhaustive);
    let s = sco_from_shifts(p, seed)?;
    let back = shifts_from_sco(&s, seed)?;
    if let Some(w) = systems_agree(p, &back, seed)? {
        report.fail(w);
    }
    report.checked_count += (0..=p.n_max())
        .map(|n| p.elements(n, seed).map(|v| v.len() * (n + 2)))
        .sum::<Result<usize>>()?;
    Ok(report)
}

fn prop_partial<T>(p: &PartialShiftSystem<T>, k_max: usize, seed: u64) -> Result<VerifyReport>
where
    T: Clone + Debug + Send + Sync + 'static,
{
    let mut report = VerifyReport::new(format!("shift powers: {}", p.name()), CheckMode::Exhaustive);
    for x in p.elements(0, seed)? {
        for big in 0..=k_max {
            for k in 0..=k_max {
                report.checked_count += 1;
                if !prop_partial_check(p, k, big, &x)? {
                    report.fail(Witness::new("α_k α_0^N x", format!("{x:?}")).k(k).level(big as isize));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Both directions of the passage between SCOs and partial shifts, and the
/// formula for `α_k α_0^N` with `k, N <= k_max`.
pub fn shifts_suite(ex: Example, n_max: usize, k_max: usize, seed: u64) -> Result<VerifyReport> {
    let top = n_max.max(k_max + 2);
    let mut report = match ex {
        Example::Ordinal => {
            let mut r = round_trip(&ordinal_sco(n_max), seed)?;
            merge(&mut r, shifts_round_trip(&nat_shift_system(n_max), seed)?);
            merge(&mut r, prop_partial(&nat_shift_system(top), k_max, seed)?);
            r
        }
        Example::Tensor => {
            let s = tensor_sco(2, n_max, 32);
            let mut r = round_trip(&s, seed)?;
            merge(&mut r, shifts_round_trip(&shifts_from_sco(&s, seed)?, seed)?);
            merge(&mut r, prop_partial(&shifts_from_sco(&tensor_sco(2, top, 16), seed)?, k_max, seed)?);
            r
        }
        other => {
            return Err(Error::InvalidParameter(format!("no shift round trip for {}", other.name())));
        }
    };
    report.suite = format!("shifts {}", ex.name());
    Ok(report)
}

/// Pair rules by name: `flip`, `cyclic3`, `negation3`, `xor2`.
pub fn pair_rule(name: &str) -> Result<PairRule> {
    match name {
        "flip" => Ok(PairRule::flip(FLIP_ALPHABET)),
        "cyclic3" => Ok(PairRule::cyclic3()),
        "negation3" => Ok(PairRule::negation3()),
        "xor2" => Ok(PairRule::xor2()),
        _ => Err(Error::Parse(format!("unknown pair rule {name}"))),
    }
}

pub const PAIR_RULES: [&str; 4] = ["flip", "cyclic3", "negation3", "xor2"];

/// The braid relation for `rule` on every triple, then, if it holds, the
/// cosimplicial identities of the induced action up to level `n_max`.
pub fn ybe_suite(rule: PairRule, n_max: usize, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(format!("ybe {}", rule.name()), CheckMode::Exhaustive);
    report.checked_count = (rule.size() as usize).pow(3);
    if let Some([x, y, z]) = ybe_witness(&rule) {
        // r12 r23 r12 when `first` is 0, r23 r12 r23 when it is 1
        let side = |first: usize| {
            let mut t = [x, y, z];
            for at in [first, 1 - first, first] {
                (t[at], t[at + 1]) = rule.apply(t[at], t[at + 1]);
            }
            format!("{t:?}")
        };
        report.fail(Witness::new("r12 r23 r12 = r23 r12 r23", format!("{:?}", [x, y, z])).sides(side(0), side(1)));
        return Ok(report);
    }
    let (_, s) = ybe_build(rule, n_max, seed)?;
    merge(&mut report, sco_verify(&s, seed)?);
    Ok(report)
}

/// Module actions for the cohomology suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleExample {
    Trivial,
    Flip,
    Burau,
}

impl ModuleExample {
    pub const ALL: [ModuleExample; 3] = [ModuleExample::Trivial, ModuleExample::Flip, ModuleExample::Burau];

    pub fn name(self) -> &'static str {
        match self {
            ModuleExample::Trivial => "trivial",
            ModuleExample::Flip => "flip",
            ModuleExample::Burau => "burau",
        }
    }

    /// The action on `dim` coordinates; the trivial action ignores `dim`.
    pub fn action(self, dim: usize) -> Result<MatrixAction> {
        match self {
            ModuleExample::Trivial => Ok(MatrixAction::trivial()),
            ModuleExample::Flip => Ok(MatrixAction::flip(dim)),
            ModuleExample::Burau => burau_action(dim, &Scalar::from_int(2)),
        }
    }
}

impl FromStr for ModuleExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModuleExample::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown module action {s}")))
    }
}

/// `d d = 0`, the cohomology table, `H^0 = 0`, and agreement of `H^1` with
/// its closed description.
pub fn cohomology_suite(a: &MatrixAction, n_max: usize) -> Result<(VerifyReport, Vec<CohomologyRow>)> {
    let s = ModuleSco::from_action(a, n_max)?;
    let c = CochainComplex::from_sco(&s)?;
    let mut report = verify_dd_zero(&c)?;
    report.suite = format!("cohomology {}", a.name());
    if !report.passed() {
        return Ok((report, Vec::new()));
    }
    let table = cohomology_table(&c)?;
    if let Some(row) = table.iter().find(|r| r.n == 0) {
        report.checked_count += 1;
        if row.h != 0 {
            report.fail(Witness::new("H^0 = 0", a.name()).level(0).sides(row.h.to_string(), "0"));
        }
    }
    if let Some(row) = table.iter().find(|r| r.n == 1) {
        report.checked_count += 1;
        let explicit = h1_explicit(a, &s)?;
        if explicit != row.h {
            report.fail(
                Witness::new("H^1 from ranks = H^1 from cocycles", a.name())
                    .level(1)
                    .sides(row.h.to_string(), explicit.to_string()),
            );
        }
    }
    Ok((report, table))
}

/// The relations of the Temperley-Lieb algebra, `g_n` and the Markov trace on `m` strands.
pub fn tl_suite(q: &Scalar, m: usize) -> Result<VerifyReport> {
    if m < 2 {
        return Err(Error::InvalidParameter("need at least two strands".into()));
    }
    let p = TlParameters::new(q.clone())?;
    let mut report = VerifyReport::new(format!("temperley-lieb q={q} m={m}"), CheckMode::Exhaustive);
    let mul = |x: &TlElement, y: &TlElement| tl_multiply(x, y, &p);
    let sc = |x: &TlElement, c: &Scalar| x.scale(&DeltaScalar::from_scalar(c.clone()), p.beta());
    let one = TlElement::one(m);
    let e: Vec<TlElement> = (1..m).map(|n| projection(n, &p, m)).collect::<Result<_>>()?;
    let g: Vec<TlElement> = (1..m).map(|n| g_element(n, &p, m)).collect::<Result<_>>()?;
    let gi: Vec<TlElement> = (1..m).map(|n| g_inverse(n, &p, m)).collect::<Result<_>>()?;

    let check = |report: &mut VerifyReport, ok: bool, rel: &str, a: usize, b: usize| {
        report.checked_count += 1;
        if !ok {
            report.fail(Witness::new(rel, format!("m={m}")).ij(a, b));
        }
    };
    for a in 0..m - 1 {
        let (na, ea, ga) = (a + 1, &e[a], &g[a]);
        check(&mut report, mul(ea, ea)? == *ea, "e_n e_n = e_n", na, na);
        check(&mut report, trace_scalar(ea, &p)? == *p.beta_inv(), "tr(e_n) = 1/β", na, na);
        check(&mut report, adjoint(ea) == *ea, "e_n* = e_n", na, na);
        check(&mut report, mul(ga, &gi[a])? == one && mul(&gi[a], ga)? == one, "g_n g_n^-1 = 1", na, na);
        let hecke = sc(ga, &(p.q() - &Scalar::one())).add(&sc(&one, p.q()))?;
        check(&mut report, mul(ga, ga)? == hecke, "g_n^2 = (q-1) g_n + q", na, na);
        for b in 0..m - 1 {
            let nb = b + 1;
            if a.abs_diff(b) == 1 {
                let lhs = mul(&mul(ea, &e[b])?, ea)?;
                check(&mut report, lhs == sc(ea, p.beta_inv()), "e_n e_k e_n = e_n / β", na, nb);
                if a < b {
                    let l = mul(&mul(ga, &g[b])?, ga)?;
                    let r = mul(&mul(&g[b], ga)?, &g[b])?;
                    check(&mut report, l == r, "g_n g_k g_n = g_k g_n g_k", na, nb);
                }
            } else if a.abs_diff(b) >= 2 {
                check(&mut report, mul(ea, &e[b])? == mul(&e[b], ea)?, "e_n e_k = e_k e_n", na, nb);
                check(&mut report, mul(ga, &g[b])? == mul(&g[b], ga)?, "g_n g_k = g_k g_n", na, nb);
            }
        }
    }
    // Markov property and conjugation invariance on normalized diagrams of fewer strands
    let beta_inv = DeltaScalar::from_scalar(p.beta_inv().clone());
    for k in 1..m {
        for d in TlDiagram::all(k) {
            let x = TlElement::normalized(d, &p).extend(m)?;
            let lhs = markov_trace(&mul(&x, &e[k - 1])?, &p);
            check(&mut report, lhs == markov_trace(&x, &p).mul(&beta_inv, p.beta()), "tr(x e_n) = tr(x) / β", k, k);
            let conj = mul(&mul(&g[k - 1], &x)?, &gi[k - 1])?;
            check(&mut report, markov_trace(&conj, &p) == markov_trace(&x, &p), "tr(g x g^-1) = tr(x)", k, k);
        }
    }
    // traciality on a spread of diagram pairs
    let all = TlDiagram::all(m);
    let step = (all.len() / 24).max(1);
    let pick: Vec<TlElement> = all.into_iter().step_by(step).map(|d| TlElement::normalized(d, &p)).collect();
    for (i, x) in pick.iter().enumerate() {
        for (j, y) in pick.iter().enumerate() {
            check(&mut report, markov_trace(&mul(x, y)?, &p) == markov_trace(&mul(y, x)?, &p), "tr(xy) = tr(yx)", i, j);
        }
    }
    let unitary = g
        .iter()
        .map(|x| mul(x, &adjoint(x)).map(|y| y == one))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    check(&mut report, unitary == p.is_unitary(), "g_n g_n* = 1 exactly when |q| = 1", 0, 0);
    Ok(report.note(format!(
        "β = {}; g_n g_n* {} 1",
        p.beta(),
        if unitary { "=" } else { "!=" }
    )))
}

/// Spreadability examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentExample {
    Tensor,
    Tl,
    Broken,
}

impl MomentExample {
    pub const ALL: [MomentExample; 3] = [MomentExample::Tensor, MomentExample::Tl, MomentExample::Broken];

    pub fn name(self) -> &'static str {
        match self {
            MomentExample::Tensor => "tensor",
            MomentExample::Tl => "tl",
            MomentExample::Broken => "broken",
        }
    }
}

impl FromStr for MomentExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MomentExample::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown moment example {s}")))
    }
}

/// Adjacent pairs `(n, b)(n+1, b)` have moment 1 and every other nonempty
/// word moment 0, so skipping a position changes a moment.
pub fn broken_moment_table() -> Result<Distribution> {
    let entries = (0..8)
        .map(|n| (MomentWord::plain([(n, "b"), (n + 1, "b")]), Scalar::one()))
        .collect();
    Distribution::from_table("broken table", vec!["b".into()], entries, Scalar::zero())
}

/// The i.i.d. matrix-unit model with state weights `weights`.
pub fn tensor_moments(weights: Vec<Scalar>) -> Result<Distribution> {
    TensorModel::matrix_units(weights.len(), weights)?.distribution()
}

/// Moments of the Temperley-Lieb projections `e_(m0,N)` on `m` strands.
pub fn tl_moments(q: &Scalar, m0: usize, m: usize) -> Result<Distribution> {
    projection_moments(&TlParameters::new(q.clone())?, m0, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in Example::ALL {
            assert_eq!(e.name().parse::<Example>().unwrap(), e);
        }
        assert!("nope".parse::<Example>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let p = ExampleParams::default();
        for e in Example::ALL {
            let r = sco_suite(e, 2, &p).unwrap();
            assert!(r.passed(), "{}: {:?}", e.name(), r.witness);
        }
        for e in Example::ACTIONS {
            let r = braid_suite(e, 1, 2, &p).unwrap();
            assert!(r.passed(), "{}: {:?}", e.name(), r.witness);
            assert_eq!(r.checked_count == 0, e == Example::Ybe, "{}", e.name());
        }
        assert!(braid_suite(Example::Gl, 1, 1, &p).is_err());
    }

    #[test]
    fn shift_round_trips() {
        for e in [Example::Ordinal, Example::Tensor] {
            let r = shifts_suite(e, 3, 2, 0).unwrap();
            assert!(r.passed(), "{:?}", r.witness);
        }
    }

    #[test]
    fn trivial_cohomology_vanishes() {
        let (r, table) = cohomology_suite(&MatrixAction::trivial(), 4).unwrap();
        assert!(r.passed());
        assert!(!table.is_empty());
        assert!(table.iter().all(|row| row.h == 0));
    }

    #[test]
    fn tl_relations_hold() {
        for q in [Scalar::one(), Scalar::i()] {
            let r = tl_suite(&q, 5).unwrap();
            assert!(r.passed(), "{:?}", r.witness);
        }
    }

    #[test]
    fn broken_table_is_not_spreadable() {
        let r = crate::ncprob::spreadability_check(&broken_moment_table().unwrap(), 2, 2, false).unwrap();
        assert!(!r.passed());
    }
}
