use std::time::Instant;

use cosimplex::algebra::Scalar;
use cosimplex::ncprob::{coface_invariance_check, spreadability_check};
use cosimplex::report::{VerifyReport, Witness};
use cosimplex::simplicial::CheckMode;
use cosimplex::suites::{
    braid_suite, broken_moment_table, cohomology_suite, pair_rule, sco_suite, shifts_suite, tensor_moments,
    tl_moments, tl_suite, ybe_suite, Example, ExampleParams, ModuleExample, MomentExample, PAIR_RULES,
};
use cosimplex::tl::TlParameters;
use cosimplex::{Error, Result};
use serde_json::json;

use crate::args::{BraidArgs, CohomologyArgs, Command, QArg, SpreadArgs, TlArgs, VerifyArgs, VerifyTarget, YbeArgs};
use crate::output::Outcome;

/// Errors that mean the request itself was malformed.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_)
            | Error::Parse(_)
            | Error::IndexOutOfRange(_)
            | Error::TruncationExceeded(_)
            | Error::StarUnavailable(_)
            | Error::DivisionByZero
    )
}

fn parse_q(q: &QArg) -> Result<Scalar> {
    Scalar::parse_parts(&q.q[0], &q.q[1])
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("--{name} must be positive")));
    }
    Ok(())
}

/// Suite name and configuration, before any work is done.
pub fn describe(cmd: &Command, seed: u64) -> (String, serde_json::Value) {
    match cmd {
        Command::Verify(a) => (
            format!("verify {}", if a.target == VerifyTarget::Sco { "sco" } else { "shifts" }),
            json!({ "example": a.example, "n_max": a.n_max, "k_max": a.k_max, "q": a.q.q, "m": a.m, "seed": seed }),
        ),
        Command::Spreadability(a) => (
            "spreadability".into(),
            json!({
                "example": a.example, "degree": a.degree, "pos_bound": a.pos_bound, "star": a.star,
                "q": a.q.q, "m": a.m, "m0": a.m0, "weights": a.weights,
            }),
        ),
        Command::Cohomology(a) => (
            "cohomology".into(),
            json!({ "action": a.action, "dim": a.dim, "n_max": a.n_max }),
        ),
        Command::BraidCheck(a) => (
            "braid-check".into(),
            json!({ "example": a.example, "n_max": a.n_max, "big_n": a.big_n, "q": a.q.q, "m": a.m, "seed": seed }),
        ),
        Command::Ybe(a) => ("ybe".into(), json!({ "rule": a.rule, "n_max": a.n_max, "seed": seed })),
        Command::Tl(a) => ("tl".into(), json!({ "q": a.q.q, "m": a.m })),
    }
}

pub fn run(cmd: &Command, seed: u64) -> Result<Outcome> {
    let (suite, config) = describe(cmd, seed);
    let mut out = Outcome::new(suite, config);
    let start = Instant::now();
    match cmd {
        Command::Verify(a) => verify(a, seed, &mut out)?,
        Command::Spreadability(a) => spreadability(a, &mut out)?,
        Command::Cohomology(a) => cohomology(a, &mut out)?,
        Command::BraidCheck(a) => braid(a, seed, &mut out)?,
        Command::Ybe(a) => ybe(a, seed, &mut out)?,
        Command::Tl(a) => tl(a, &mut out)?,
    }
    out.elapsed = start.elapsed();
    Ok(out)
}

fn verify(a: &VerifyArgs, seed: u64, out: &mut Outcome) -> Result<()> {
    let ex: Example = a.example.parse()?;
    positive("n-max", a.n_max)?;
    let params = ExampleParams { q: parse_q(&a.q)?, strands: a.m, seed };
    let r = match a.target {
        VerifyTarget::Sco => sco_suite(ex, a.n_max, &params)?,
        VerifyTarget::Shifts => shifts_suite(ex, a.n_max, a.k_max, seed)?,
    };
    out.reports.push(r);
    Ok(())
}

fn spreadability(a: &SpreadArgs, out: &mut Outcome) -> Result<()> {
    positive("degree", a.degree)?;
    positive("pos-bound", a.pos_bound)?;
    let d = match a.example.parse::<MomentExample>()? {
        MomentExample::Tensor => {
            let w = a.weights.iter().map(|s| Scalar::parse_parts(s, "0")).collect::<Result<_>>()?;
            tensor_moments(w)?
        }
        MomentExample::Tl => {
            if a.m0 == 0 || a.m0 + a.pos_bound + 1 > a.m {
                return Err(Error::InvalidParameter(format!(
                    "positions up to {} from m0={} need more than {} strands",
                    a.pos_bound, a.m0, a.m
                )));
            }
            tl_moments(&parse_q(&a.q)?, a.m0, a.m)?
        }
        MomentExample::Broken => broken_moment_table()?,
    };
    let spread = spreadability_check(&d, a.degree, a.pos_bound, a.star)?;
    let invariant = coface_invariance_check(&d, a.degree, a.pos_bound, a.star)?;
    out.reports.push(spread.to_verify_report(format!("spreadability {}", d.name())));

    let mut agree = VerifyReport::new("coface invariance agrees with spreadability", CheckMode::Exhaustive);
    agree.checked_count = 1;
    if invariant != spread.passed() {
        agree.fail(Witness::new("predicate agreement", d.name()).sides(spread.passed().to_string(), invariant.to_string()));
    }
    out.reports.push(agree);
    out.lines.push(format!("coface invariance: {}", if invariant { "holds" } else { "fails" }));
    out.data = Some(json!({ "spreadable": spread.passed(), "coface_invariant": invariant, "star_mode": d.star_mode() }));
    Ok(())
}

fn cohomology(a: &CohomologyArgs, out: &mut Outcome) -> Result<()> {
    positive("n-max", a.n_max)?;
    let action = a.action.parse::<ModuleExample>()?.action(a.dim)?;
    let (r, table) = cohomology_suite(&action, a.n_max)?;
    out.reports.push(r);
    if !table.is_empty() {
        out.lines.push(format!("{:>3} {:>6} {:>7} {:>9} {:>4}", "n", "dim V", "rank d", "dim ker", "H^n"));
        for row in &table {
            out.lines.push(format!(
                "{:>3} {:>6} {:>7} {:>9} {:>4}",
                row.n, row.dim_v, row.rank_d, row.dim_ker_next, row.h
            ));
        }
    }
    out.data = Some(json!({ "table": table }));
    Ok(())
}

fn braid(a: &BraidArgs, seed: u64, out: &mut Outcome) -> Result<()> {
    let ex: Example = a.example.parse()?;
    positive("big-n", a.big_n)?;
    let params = ExampleParams { q: parse_q(&a.q)?, strands: a.m, seed };
    out.reports.push(braid_suite(ex, a.n_max, a.big_n, &params)?);
    Ok(())
}

fn ybe(a: &YbeArgs, seed: u64, out: &mut Outcome) -> Result<()> {
    let rule = pair_rule(&a.rule).map_err(|_| {
        Error::Parse(format!("unknown pair rule {}; expected one of {}", a.rule, PAIR_RULES.join(", ")))
    })?;
    out.reports.push(ybe_suite(rule, a.n_max, seed)?);
    Ok(())
}

fn tl(a: &TlArgs, out: &mut Outcome) -> Result<()> {
    let q = parse_q(&a.q)?;
    if a.m < 2 {
        return Err(Error::InvalidParameter("--m must be at least 2".into()));
    }
    let p = TlParameters::new(q.clone())?;
    out.reports.push(tl_suite(&q, a.m)?);
    out.data = Some(json!({ "beta": p.beta(), "unitary_parameter": p.is_unitary() }));
    Ok(())
}

/// The text printed by `--list`.
pub fn listing() -> String {
    let mut s = String::from("suites:\n");
    let examples: Vec<&str> = Example::ALL.iter().map(|e| e.name()).collect();
    let actions: Vec<&str> = Example::ACTIONS.iter().map(|e| e.name()).collect();
    let modules: Vec<&str> = ModuleExample::ALL.iter().map(|e| e.name()).collect();
    let moments: Vec<&str> = MomentExample::ALL.iter().map(|e| e.name()).collect();
    let rows = [
        ("verify sco", "cosimplicial identities", examples.join(", ")),
        ("verify shifts", "shift correspondence and power formula", "ordinal, tensor".to_string()),
        ("braid-check", "braid shift identities", actions.join(", ")),
        ("cohomology", "cochain complex of a module action", modules.join(", ")),
        ("spreadability", "moment spreadability and coface invariance", moments.join(", ")),
        ("ybe", "Yang-Baxter pair rules", PAIR_RULES.join(", ")),
        ("tl", "Temperley-Lieb relations and Markov trace", "--q RE IM --m M".to_string()),
    ];
    for (name, what, on) in rows {
        s.push_str(&format!("  {name:<15} {what}\n  {:<15} [{on}]\n", ""));
    }
    s.push_str("examples:\n");
    for e in Example::ALL {
        s.push_str(&format!("  {:<12} {}\n", e.name(), e.describe()));
    }
    s
}
