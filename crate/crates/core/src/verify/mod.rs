//! Claim harness: every checked statement is a [`Claim`] with a hypothesis
//! and a body, evaluated per space to PASS, VACUOUS or FAIL.
//!
//! A claim whose hypothesis fails on a space is VACUOUS there, and vacuous
//! outcomes are tallied apart from passes. Failures keep the offending space
//! together with a copy shrunk by deleting points while the failure persists.

mod claims;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::entourage::{RelationAlgebra, StandardAlgebra};
use crate::invariants::{AnalysisError, Analyzer, Invariant};
use crate::pointset::PointSet;
use crate::space::{enumerate_all_spaces, random_space, FiniteSpace};

pub use claims::standard_claims;

/// Largest carrier on which sweeps enumerate every space.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Densities drawn for random spaces in a sweep.
pub const RANDOM_DENSITIES: [f64; 5] = [0.05, 0.1, 0.15, 0.2, 0.3];
const COUNTEREXAMPLES_KEPT: usize = 8;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Vacuous,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Vacuous => "VACUOUS",
            Status::Fail => "FAIL",
        })
    }
}

/// Finite hypotheses. Several stand in for infinite-scale notions, and the
/// doc comment of each variant says what it replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    T1,
    /// Every non-empty open set contains the closure of a non-empty open
    /// set. For finite spaces this is exactly the partition topologies.
    QuasiRegular,
    /// Normal, with every closed set a countable intersection of open sets,
    /// that is, open.
    PerfectlyNormal,
    /// Every discrete family of finite sets expands to a discrete family of
    /// open sets. Exact: it suffices to expand each point to `U_x`.
    CollectivelyHausdorff,
    CompletelyRegular,
    /// Paracompact in the sense that includes Hausdorff. A finite Hausdorff
    /// space is discrete.
    ParacompactHausdorff,
    /// Regular `T1` with a development, which for finite spaces means
    /// discrete.
    Moore,
    /// Some point `∞` has `U_∞ = X` and every other point is isolated.
    OneNonisolated,
    AtMostPoints(usize),
    /// No finite counterpart; the claim is recorded but never evaluated.
    OutOfScope,
}

impl Predicate {
    pub fn name(&self) -> String {
        match self {
            Predicate::T1 => "t1".into(),
            Predicate::QuasiRegular => "quasi-regular".into(),
            Predicate::PerfectlyNormal => "perfectly-normal".into(),
            Predicate::CollectivelyHausdorff => "collectively-hausdorff-finite".into(),
            Predicate::CompletelyRegular => "completely-regular".into(),
            Predicate::ParacompactHausdorff => "paracompact-hausdorff-finite".into(),
            Predicate::Moore => "moore-finite".into(),
            Predicate::OneNonisolated => "one-nonisolated".into(),
            Predicate::AtMostPoints(n) => format!("at-most-{n}-points"),
            Predicate::OutOfScope => "out-of-scope".into(),
        }
    }

    pub fn holds(&self, x: &FiniteSpace) -> bool {
        match self {
            Predicate::T1 => x.is_t1(),
            Predicate::QuasiRegular => x.is_quasi_regular(),
            Predicate::PerfectlyNormal => x.is_perfectly_normal(),
            Predicate::CollectivelyHausdorff => x.is_collectively_hausdorff(),
            Predicate::CompletelyRegular => x.is_completely_regular(),
            Predicate::ParacompactHausdorff | Predicate::Moore => x.is_discrete(),
            Predicate::OneNonisolated => infinity_point(x).is_some(),
            Predicate::AtMostPoints(n) => x.n() <= *n,
            Predicate::OutOfScope => false,
        }
    }
}

/// The point `∞` of a space with one non-isolated point whose minimal
/// neighbourhood is everything.
pub fn infinity_point(x: &FiniteSpace) -> Option<usize> {
    if x.n() < 2 {
        return None;
    }
    let full: Vec<usize> = (0..x.n())
        .filter(|&p| x.min_open(p) == x.carrier())
        .collect();
    match full[..] {
        [inf] if (0..x.n()).all(|p| p == inf || x.min_open(p) == PointSet::singleton(p)) => {
            Some(inf)
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

impl Relation {
    fn holds(self, a: usize, b: usize) -> bool {
        match self {
            Relation::Le => a <= b,
            Relation::Eq => a == b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

/// A value expression over invariant names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Inv(String),
    Product(String, String),
    Min(String, String),
    Max(String, String),
    Points,
    Const(usize),
}

impl Term {
    pub fn inv(name: impl Into<String>) -> Self {
        Term::Inv(name.into())
    }

    fn eval(&self, ctx: &Context<'_>) -> Result<usize, AnalysisError> {
        Ok(match self {
            Term::Inv(a) => ctx.value(a)?,
            Term::Product(a, b) => ctx.value(a)? * ctx.value(b)?,
            Term::Min(a, b) => ctx.value(a)?.min(ctx.value(b)?),
            Term::Max(a, b) => ctx.value(a)?.max(ctx.value(b)?),
            Term::Points => ctx.space.n(),
            Term::Const(c) => *c,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Inv(a) => write!(f, "{a}"),
            Term::Product(a, b) => write!(f, "{a}*{b}"),
            Term::Min(a, b) => write!(f, "min({a},{b})"),
            Term::Max(a, b) => write!(f, "max({a},{b})"),
            Term::Points => write!(f, "|X|"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Result of a claim body on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub holds: bool,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn compare(lhs: usize, relation: Relation, rhs: usize) -> Self {
        Outcome {
            holds: relation.holds(lhs, rhs),
            lhs: Some(lhs),
            rhs: Some(rhs),
            detail: None,
        }
    }

    pub fn check(holds: bool, detail: impl FnOnce() -> String) -> Self {
        Outcome {
            holds,
            lhs: None,
            rhs: None,
            detail: if holds { None } else { Some(detail()) },
        }
    }
}

pub type CheckFn = fn(&Context<'_>) -> Result<Outcome, AnalysisError>;

#[derive(Clone)]
pub enum Body {
    Compare {
        lhs: Term,
        relation: Relation,
        rhs: Term,
    },
    Custom(CheckFn),
    Stub,
}

#[derive(Clone)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub hypothesis: Vec<Predicate>,
    /// A registered mismatch between the literal statement and finite
    /// spaces. Failures are reported but do not fail a run.
    pub expected_divergence: bool,
    pub note: Option<String>,
    pub body: Body,
}

impl Claim {
    pub fn compare(id: impl Into<String>, lhs: Term, relation: Relation, rhs: Term) -> Self {
        let statement = format!("{lhs} {} {rhs}", relation.symbol());
        Claim {
            id: id.into(),
            statement,
            hypothesis: Vec::new(),
            expected_divergence: false,
            note: None,
            body: Body::Compare { lhs, relation, rhs },
        }
    }

    pub fn custom(id: impl Into<String>, statement: impl Into<String>, check: CheckFn) -> Self {
        Claim {
            id: id.into(),
            statement: statement.into(),
            hypothesis: Vec::new(),
            expected_divergence: false,
            note: None,
            body: Body::Custom(check),
        }
    }

    pub fn stub(
        id: impl Into<String>,
        statement: impl Into<String>,
        note: impl Into<String>,
    ) -> Self {
        Claim {
            id: id.into(),
            statement: statement.into(),
            hypothesis: vec![Predicate::OutOfScope],
            expected_divergence: false,
            note: Some(note.into()),
            body: Body::Stub,
        }
    }

    pub fn given(mut self, hypothesis: &[Predicate]) -> Self {
        self.hypothesis.extend_from_slice(hypothesis);
        self
    }

    pub fn divergent(mut self, note: impl Into<String>) -> Self {
        self.expected_divergence = true;
        self.note = Some(note.into());
        self
    }

    pub fn noted(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn hypothesis_names(&self) -> Vec<String> {
        self.hypothesis.iter().map(Predicate::name).collect()
    }
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("hypothesis", &self.hypothesis)
            .finish_non_exhaustive()
    }
}

/// Per-space evaluation state with memoized invariant values.
pub struct Context<'a> {
    space: &'a FiniteSpace,
    algebra: &'a dyn RelationAlgebra,
    analyzer: Analyzer<'a>,
    cache: RefCell<HashMap<String, usize>>,
}

impl<'a> Context<'a> {
    pub fn new(space: &'a FiniteSpace, algebra: &'a dyn RelationAlgebra) -> Self {
        Context {
            space,
            algebra,
            analyzer: Analyzer::with_algebra(space, algebra),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn space(&self) -> &'a FiniteSpace {
        self.space
    }

    pub fn algebra(&self) -> &'a dyn RelationAlgebra {
        self.algebra
    }

    pub fn analyzer(&self) -> &Analyzer<'a> {
        &self.analyzer
    }

    pub fn value(&self, name: &str) -> Result<usize, AnalysisError> {
        if let Some(&v) = self.cache.borrow().get(name) {
            return Ok(v);
        }
        let inv: Invariant = name.parse()?;
        let v = self.analyzer.evaluate(&inv)?.value;
        self.cache.borrow_mut().insert(name.to_string(), v);
        Ok(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub claim: String,
    pub space_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// The failing space, present exactly for FAIL.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<FiniteSpace>,
    /// A failing subspace with no failing proper subspace one point
    /// smaller.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<FiniteSpace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimTally {
    pub id: String,
    pub statement: String,
    pub pass: usize,
    pub vacuous: usize,
    pub fail: usize,
    pub vacuity_rate: f64,
    pub expected_divergence: bool,
    pub counterexamples: Vec<TheoremReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub claims: Vec<ClaimTally>,
    pub seed: Option<u64>,
    pub spaces: usize,
}

impl AggregateReport {
    pub fn tally(&self, id: &str) -> Option<&ClaimTally> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn total_failures(&self) -> usize {
        self.claims.iter().map(|c| c.fail).sum()
    }

    /// Failures outside claims registered as expected divergences.
    pub fn unexpected_failures(&self) -> usize {
        self.claims
            .iter()
            .filter(|c| !c.expected_divergence)
            .map(|c| c.fail)
            .sum()
    }

    pub fn is_clean(&self) -> bool {
        self.unexpected_failures() == 0
    }
}

/// A named space in a sweep. Random ids have the form `random:n:p:seed`,
/// which reproduces the space with [`random_space`].
#[derive(Clone, Debug)]
pub struct Subject {
    pub id: String,
    pub space: FiniteSpace,
}

impl Subject {
    pub fn new(id: impl Into<String>, space: FiniteSpace) -> Self {
        Subject {
            id: id.into(),
            space,
        }
    }
}

/// Every space on `n ≤ EXHAUSTIVE_LIMIT` points for each listed size, then
/// `random_count` seeded random spaces of each size.
pub fn sweep_subjects(sizes: &[usize], random_count: usize, seed: u64) -> Vec<Subject> {
    let mut out = Vec::new();
    for &n in sizes {
        if n <= EXHAUSTIVE_LIMIT {
            let all = enumerate_all_spaces(n).expect("within the enumeration limit");
            out.extend(
                all.into_iter()
                    .enumerate()
                    .map(|(i, x)| Subject::new(format!("enum:{n}:{i}"), x)),
            );
        }
    }
    out.extend(random_subjects(sizes, random_count, seed));
    out
}

pub fn random_subjects(sizes: &[usize], count: usize, seed: u64) -> Vec<Subject> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in sizes {
        for _ in 0..count {
            let p = RANDOM_DENSITIES[rng.gen_range(0..RANDOM_DENSITIES.len())];
            let s: u32 = rng.gen();
            let x = random_space(n, p, u64::from(s)).expect("random spaces fit");
            out.push(Subject::new(format!("random:{n}:{p}:{s}"), x));
        }
    }
    out
}

pub struct Harness {
    claims: Vec<Claim>,
    algebra: Arc<dyn RelationAlgebra>,
}

impl Harness {
    pub fn standard() -> Self {
        Harness::with_algebra(Arc::new(StandardAlgebra))
    }

    pub fn with_algebra(algebra: Arc<dyn RelationAlgebra>) -> Self {
        Harness {
            claims: standard_claims(),
            algebra,
        }
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn claim(&self, id: &str) -> Result<&Claim, VerifyError> {
        self.claims
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
    }

    /// Claims with the given ids, or all claims for an empty selection.
    /// An id ending in `*` selects every claim with that prefix.
    pub fn select(&self, ids: &[String]) -> Result<Vec<&Claim>, VerifyError> {
        if ids.is_empty() {
            return Ok(self.claims.iter().collect());
        }
        let mut out: Vec<&Claim> = Vec::new();
        for id in ids {
            let matched: Vec<&Claim> = match id.strip_suffix('*') {
                Some(prefix) => self
                    .claims
                    .iter()
                    .filter(|c| c.id.starts_with(prefix))
                    .collect(),
                None => vec![self.claim(id)?],
            };
            if matched.is_empty() {
                return Err(VerifyError::UnknownClaim(id.clone()));
            }
            for c in matched {
                if !out.iter().any(|o| o.id == c.id) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    pub fn check(&self, id: &str, x: &FiniteSpace) -> Result<TheoremReport, VerifyError> {
        let claim = self.claim(id)?;
        let ctx = Context::new(x, self.algebra.as_ref());
        Ok(self.run(claim, &ctx, "input"))
    }

    fn run(&self, claim: &Claim, ctx: &Context<'_>, space_id: &str) -> TheoremReport {
        let mut report = TheoremReport {
            claim: claim.id.clone(),
            space_id: space_id.to_string(),
            status: Status::Vacuous,
            lhs: None,
            rhs: None,
            detail: None,
            space: None,
            reduced: None,
        };
        if !claim.hypothesis.iter().all(|p| p.holds(ctx.space)) {
            report.detail = claim.note.clone();
            return report;
        }
        let outcome = match &claim.body {
            Body::Compare { lhs, relation, rhs } => lhs
                .eval(ctx)
                .and_then(|a| Ok(Outcome::compare(a, *relation, rhs.eval(ctx)?))),
            Body::Custom(f) => f(ctx),
            Body::Stub => return report,
        };
        match outcome {
            Ok(o) => {
                report.status = if o.holds { Status::Pass } else { Status::Fail };
                report.lhs = o.lhs;
                report.rhs = o.rhs;
                report.detail = o.detail;
            }
            Err(e) => {
                report.status = Status::Fail;
                report.detail = Some(format!("evaluation error: {e}"));
            }
        }
        if report.status == Status::Fail {
            report.space = Some(ctx.space.clone());
        }
        report
    }

    fn fails_on(&self, claim: &Claim, x: &FiniteSpace) -> bool {
        let ctx = Context::new(x, self.algebra.as_ref());
        self.run(claim, &ctx, "").status == Status::Fail
    }

    /// Deletes points one at a time while the claim keeps failing.
    pub fn reduce(&self, claim: &Claim, x: &FiniteSpace) -> FiniteSpace {
        let mut current = x.clone();
        'outer: loop {
            for p in 0..current.n() {
                let smaller = current.subspace(current.carrier().without(p));
                if self.fails_on(claim, &smaller) {
                    current = smaller;
                    continue 'outer;
                }
            }
            return current;
        }
    }

    pub fn sweep(
        &self,
        claims: &[&Claim],
        sizes: &[usize],
        random_count: usize,
        seed: u64,
    ) -> AggregateReport {
        let subjects = sweep_subjects(sizes, random_count, seed);
        let mut report = self.sweep_subjects(claims, &subjects);
        report.seed = Some(seed);
        report
    }

    /// Runs every claim on every subject. Reports are collected in subject
    /// order, so the aggregate does not depend on scheduling.
    pub fn sweep_subjects(&self, claims: &[&Claim], subjects: &[Subject]) -> AggregateReport {
        let per_space: Vec<Vec<TheoremReport>> = subjects
            .par_iter()
            .map(|s| {
                let ctx = Context::new(&s.space, self.algebra.as_ref());
                claims.iter().map(|c| self.run(c, &ctx, &s.id)).collect()
            })
            .collect();
        let mut tallies: Vec<ClaimTally> = claims
            .iter()
            .map(|c| ClaimTally {
                id: c.id.clone(),
                statement: c.statement.clone(),
                pass: 0,
                vacuous: 0,
                fail: 0,
                vacuity_rate: 0.0,
                expected_divergence: c.expected_divergence,
                counterexamples: Vec::new(),
            })
            .collect();
        for reports in per_space {
            for (t, r) in tallies.iter_mut().zip(reports) {
                match r.status {
                    Status::Pass => t.pass += 1,
                    Status::Vacuous => t.vacuous += 1,
                    Status::Fail => {
                        t.fail += 1;
                        if t.counterexamples.len() < COUNTEREXAMPLES_KEPT {
                            t.counterexamples.push(r);
                        }
                    }
                }
            }
        }
        tallies
            .par_iter_mut()
            .zip(claims.par_iter())
            .for_each(|(t, c)| {
                let total = t.pass + t.vacuous + t.fail;
                t.vacuity_rate = if total == 0 {
                    0.0
                } else {
                    t.vacuous as f64 / total as f64
                };
                for r in &mut t.counterexamples {
                    if let Some(x) = &r.space {
                        r.reduced = Some(self.reduce(c, x));
                    }
                }
            });
        AggregateReport {
            claims: tallies,
            seed: None,
            spaces: subjects.len(),
        }
    }
}
