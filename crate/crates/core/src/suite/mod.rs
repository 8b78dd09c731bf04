//! Batch verification: every check over one lattice, a corpus, or an
//! explicit quantale, collected into serializable reports.

mod checks;
pub mod corpus;
pub mod report;

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::json;

use crate::endo::DEFAULT_MAX_HOMSET;
use crate::lattice::{Lattice, Poset};
use crate::structures::{autodual_report, m5_quantale, FiniteQuantale, DEFAULT_MAX_AUTODUAL};

use checks::{CheckOut, Ctx, Outcome, CHECKS};
pub use corpus::{default_corpus, small_posets};
pub use report::{CheckResult, CorpusReport, LatticeDescriptor, QuantaleReport, Report, Status, Summary};

/// Default cap on `|Q|` for checks that scan all pairs or triples.
pub const DEFAULT_MAX_TRIPLE: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_homset: usize,
    pub max_autodual: usize,
    pub max_triple: usize,
    /// Run only these check ids; `None` runs everything.
    pub checks: Option<BTreeSet<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_homset: DEFAULT_MAX_HOMSET,
            max_autodual: DEFAULT_MAX_AUTODUAL,
            max_triple: DEFAULT_MAX_TRIPLE,
            checks: None,
        }
    }
}

impl SuiteConfig {
    fn selected(&self, id: &str) -> bool {
        self.checks.as_ref().is_none_or(|set| set.contains(id))
    }
}

/// Every check id known to the suite, lattice checks first.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS
        .iter()
        .map(|&(id, _)| id)
        .chain(["summary-consistency"])
        .chain(QUANTALE_CHECKS.iter().map(|&(id, _)| id))
        .chain(M5_CHECKS.iter().map(|&(id, _)| id))
        .collect()
}

/// A lattice to verify, optionally known to be the downset lattice of a
/// poset (which enables the weakening-relation checks).
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub lattice: Lattice,
    pub poset: Option<Poset>,
}

impl Subject {
    pub fn new(name: impl Into<String>, lattice: Lattice) -> Self {
        Subject {
            name: name.into(),
            lattice,
            poset: None,
        }
    }

    pub fn downsets(name: impl Into<String>, poset: Poset) -> Result<Self, crate::lattice::LatticeError> {
        let lattice = crate::lattice::downset_lattice(&poset)?;
        Ok(Subject {
            name: name.into(),
            lattice,
            poset: Some(poset),
        })
    }
}

fn finish(id: &str, out: CheckOut, started: Instant) -> Option<CheckResult> {
    let mut r = match out.unwrap_or_else(|o| o) {
        Outcome::NotApplicable => return None,
        Outcome::Pass(None) => CheckResult::pass(id),
        Outcome::Pass(Some(note)) => CheckResult::pass(id).with_reason(note),
        Outcome::Fail(w) => CheckResult::fail(id, w),
        Outcome::Skip(reason) => CheckResult::skipped(id, reason),
    };
    r.elapsed = started.elapsed();
    Some(r)
}

fn descriptor(name: &str, lattice: &Lattice) -> LatticeDescriptor {
    LatticeDescriptor {
        name: name.to_string(),
        size: lattice.size(),
        hash: lattice.fingerprint(),
    }
}

/// Summary flags without running any check.
fn summarize(ctx: &Ctx) -> Summary {
    let q = ctx.homset.as_ref().ok();
    let autodual_verdict = q
        .filter(|q| q.len() <= ctx.config.max_autodual)
        .and_then(|q| autodual_report(q, ctx.config.max_autodual).ok())
        .map(|v| v.label().to_string());
    Summary {
        is_distributive: ctx.lattice.is_distributive(),
        is_cd: ctx.cd,
        homset_size: q.map(|q| q.len()),
        is_girard: q.and_then(|q| q.is_girard().ok()),
        dualizing_count: q.and_then(|q| q.find_dualizing().ok()).map(|d| d.len()),
        automorphism_count: ctx.automorphisms().map(<[_]>::len),
        tight_unital: q.and_then(|q| q.tight_has_unit().ok()).map(|u| u.is_some()),
        autodual_verdict,
    }
}

fn summary_consistency(s: &Summary) -> CheckOut {
    let mut bad = Vec::new();
    if s.is_girard.is_some_and(|g| g != s.is_cd) {
        bad.push("is_girard");
    }
    if s.tight_unital.is_some_and(|t| t != s.is_cd) {
        bad.push("tight_unital");
    }
    if s.is_distributive != s.is_cd {
        bad.push("is_distributive");
    }
    if let (Some(d), Some(a)) = (s.dualizing_count, s.automorphism_count) {
        if d != if s.is_cd { a } else { 0 } {
            bad.push("dualizing_count");
        }
    }
    if s.autodual_verdict.as_deref() == Some("autodual") && !s.is_distributive {
        bad.push("autodual_verdict");
    }
    if bad.is_empty() {
        Ok(Outcome::Pass(None))
    } else {
        Ok(Outcome::Fail(json!({ "inconsistent": bad })))
    }
}

/// Runs every selected check on `subject`. Deterministic for a fixed
/// subject and configuration.
pub fn run_suite(subject: &Subject, config: &SuiteConfig) -> Report {
    let ctx = Ctx::new(&subject.lattice, subject.poset.as_ref(), config);
    let mut results = Vec::new();
    for &(id, check) in CHECKS {
        if config.selected(id) {
            let started = Instant::now();
            results.extend(finish(id, check(&ctx), started));
        }
    }
    let summary = summarize(&ctx);
    if config.selected("summary-consistency") {
        let started = Instant::now();
        results.extend(finish("summary-consistency", summary_consistency(&summary), started));
    }
    Report {
        lattice: descriptor(&subject.name, &subject.lattice),
        summary,
        checks: results,
    }
}

/// Runs the suite on every subject of the default corpus and the quantale
/// checks on the `M5` example.
pub fn run_corpus(config: &SuiteConfig) -> CorpusReport {
    CorpusReport {
        lattices: default_corpus().iter().map(|s| run_suite(s, config)).collect(),
        quantales: vec![run_m5(config)],
    }
}

type QuantaleCheck = fn(&FiniteQuantale) -> CheckOut;

const QUANTALE_CHECKS: &[(&str, QuantaleCheck)] = &[
    ("quantale-associativity", q_associativity),
    ("quantale-distributivity", q_distributivity),
    ("quantale-residuals", q_residuals),
    ("quantale-top-cyclic", q_top_cyclic),
    ("quantale-dualizing-unit", q_dualizing_unit),
];

const M5_CHECKS: &[(&str, QuantaleCheck)] = &[
    ("m5-table", m5_table),
    ("m5-cyclic", m5_cyclic),
    ("m5-dualizing", m5_dualizing),
];

fn q_associativity(q: &FiniteQuantale) -> CheckOut {
    let n = q.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mult(q.mult(x, y), z) != q.mult(x, q.mult(y, z)) {
                    return Ok(Outcome::Fail(json!([x, y, z])));
                }
            }
        }
    }
    Ok(Outcome::Pass(Some(format!("{} triples", n * n * n))))
}

fn q_distributivity(q: &FiniteQuantale) -> CheckOut {
    let l = q.carrier();
    let n = q.size();
    for x in 0..n {
        if q.mult(x, l.bottom()) != l.bottom() || q.mult(l.bottom(), x) != l.bottom() {
            return Ok(Outcome::Fail(json!({ "bottom": l.name(x) })));
        }
        for y in 0..n {
            for z in 0..n {
                let yz = l.join(y, z);
                if q.mult(x, yz) != l.join(q.mult(x, y), q.mult(x, z))
                    || q.mult(yz, x) != l.join(q.mult(y, x), q.mult(z, x))
                {
                    return Ok(Outcome::Fail(json!([l.name(x), l.name(y), l.name(z)])));
                }
            }
        }
    }
    Ok(Outcome::Pass(Some(format!("{} triples", n * n * n))))
}

fn q_residuals(q: &FiniteQuantale) -> CheckOut {
    match q.residual_law_violation() {
        None => Ok(Outcome::Pass(None)),
        Some((x, y, z)) => Ok(Outcome::Fail(json!([x, y, z]))),
    }
}

fn q_top_cyclic(q: &FiniteQuantale) -> CheckOut {
    if q.cyclic().contains(&q.carrier().top()) {
        Ok(Outcome::Pass(None))
    } else {
        Ok(Outcome::Fail(json!("top is not cyclic")))
    }
}

fn q_dualizing_unit(q: &FiniteQuantale) -> CheckOut {
    let Some(u) = q.unit() else {
        return Ok(Outcome::Skip("no unit".into()));
    };
    for d in q.dualizing() {
        let (dd, _) = q.q_residuals(d, d);
        if dd != u {
            return Ok(Outcome::Fail(json!({ "dualizing": q.carrier().name(d), "d\\d": q.carrier().name(dd) })));
        }
    }
    Ok(Outcome::Pass(None))
}

fn names(q: &FiniteQuantale, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| q.carrier().name(x).to_string()).collect()
}

fn m5_table(q: &FiniteQuantale) -> CheckOut {
    let l = q.carrier();
    let e = |s: &str| l.index_of(s).expect("M5 element");
    let (u, d, a, b, c) = (e("u"), e("d"), e("a"), e("b"), e("c"));
    let top = l.top();
    let expected = [
        (u, u, u),
        (a, c, d),
        (b, a, d),
        (c, b, d),
        (d, d, top),
        (a, a, top),
        (d, u, d),
    ];
    for (x, y, z) in expected {
        if q.mult(x, y) != z {
            return Ok(Outcome::Fail(json!([l.name(x), l.name(y), l.name(q.mult(x, y))])));
        }
    }
    if q.unit() != Some(u) {
        return Ok(Outcome::Fail(json!({ "unit": q.unit().map(|x| l.name(x)) })));
    }
    Ok(Outcome::Pass(None))
}

fn m5_cyclic(q: &FiniteQuantale) -> CheckOut {
    let d = q.carrier().index_of("d").expect("M5 element");
    let non_cyclic: Vec<usize> = (0..q.size()).filter(|x| !q.cyclic().contains(x)).collect();
    if non_cyclic == [d] {
        Ok(Outcome::Pass(None))
    } else {
        Ok(Outcome::Fail(json!({ "non_cyclic": names(q, &non_cyclic) })))
    }
}

fn m5_dualizing(q: &FiniteQuantale) -> CheckOut {
    let d = q.carrier().index_of("d").expect("M5 element");
    if q.dualizing() == [d] {
        Ok(Outcome::Pass(None))
    } else {
        Ok(Outcome::Fail(json!({ "dualizing": names(q, &q.dualizing()) })))
    }
}

fn quantale_report(name: &str, q: &FiniteQuantale, extra: &[(&str, QuantaleCheck)], config: &SuiteConfig) -> QuantaleReport {
    let checks = QUANTALE_CHECKS
        .iter()
        .chain(extra)
        .filter(|(id, _)| config.selected(id))
        .filter_map(|&(id, check)| {
            let started = Instant::now();
            finish(id, check(q), started)
        })
        .collect();
    QuantaleReport {
        carrier: descriptor(name, q.carrier()),
        unit: q.unit().map(|u| q.carrier().name(u).to_string()),
        cyclic: names(q, &q.cyclic()),
        dualizing: names(q, &q.dualizing()),
        checks,
    }
}

/// The generic quantale checks on an arbitrary finite quantale.
pub fn run_quantale(name: &str, q: &FiniteQuantale, config: &SuiteConfig) -> QuantaleReport {
    quantale_report(name, q, &[], config)
}

/// The quantale checks plus the expected facts about the `M5` example.
pub fn run_m5(config: &SuiteConfig) -> QuantaleReport {
    quantale_report("m5-quantale", &m5_quantale(), M5_CHECKS, config)
}
