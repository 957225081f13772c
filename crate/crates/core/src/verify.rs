//! Invariant suites over ranges of `(n, r, k, family)` and their
//! machine-readable reports.
//!
//! Every check is an exact equality or membership test. A case whose
//! computation returns an error counts as a failure; `NotDivisible` errors
//! are also tallied separately. Reports contain no timing data unless asked
//! for, so repeated runs with the same configuration serialize identically.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::bary::{BaryPoly, RationalPoint};
use crate::blending::{a_div, a_op, c_const, delta_r, proj_pullback, r_div, r_op, BlendCache, Data};
use crate::boundary::{boundary_basis, facet_labels, BoundaryForm};
use crate::error::{Error, Result};
use crate::extension::{constant_coefficients, d_top_diagnostic, extend, extend_at_point, extend_component, extend_ladder};
use crate::forms::{basis, basis_trimmed, delta_whitney, full_labels, whitney, Family, PolyForm, TangentVector};
use crate::homotopy::{mapping_target, patterns, poincare, poincare_bc, verify_complex, Space};
use crate::index::{all_gamma, blending_sets, enumerate_gamma_sub, IndexSet};
use crate::json::{boundary_value, form_value};
use crate::points::interior_points;
use crate::poly::binomial;
use crate::Rational;

/// Hard cap on the simplex dimension.
pub const MAX_N: usize = 4;
/// Counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 5;
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Trace,
    Cochain,
    Preserve,
    Rops,
    Aops,
    Identities,
    Homotopy,
    TopDiagnostic,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Trace,
        Suite::Cochain,
        Suite::Preserve,
        Suite::Rops,
        Suite::Aops,
        Suite::Identities,
        Suite::Homotopy,
        Suite::TopDiagnostic,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Trace => "trace",
            Suite::Cochain => "cochain",
            Suite::Preserve => "preserve",
            Suite::Rops => "rops",
            Suite::Aops => "aops",
            Suite::Identities => "identities",
            Suite::Homotopy => "homotopy",
            Suite::TopDiagnostic => "toplevel-diagnostic",
            Suite::Oracle => "oracle",
        }
    }

    /// What the suite checks.
    pub fn description(self) -> &'static str {
        match self {
            Suite::Trace => "the extension reproduces its boundary data",
            Suite::Cochain => "extension commutes with the exterior derivative for k <= n-2",
            Suite::Preserve => "extensions and their per-index-set pieces stay in the space of the data",
            Suite::Rops => "commuting relation, trace consistency, divisibility and symmetry of R",
            Suite::Aops => "commuting relation, alternating differences, traces, divisibility and constants of A",
            Suite::Identities => "Whitney-form identities behind the extension formula and Whitney dimensions",
            Suite::Homotopy => "Poincaré homotopy identities, mapping degrees and boundary-condition variants",
            Suite::TopDiagnostic => "findings on d E^{n-1}; never fails the run",
            Suite::Oracle => "symbolic extension against the rational formula at interior points",
        }
    }

    /// Whether failures in this suite fail the run.
    pub fn assertable(self) -> bool {
        self != Suite::TopDiagnostic
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parses `all` or a comma-separated list of suite names.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>> {
    if text.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = text.split(',').map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub n: Vec<usize>,
    pub r: Vec<u32>,
    /// Form degrees to visit; `None` visits every admissible degree.
    pub k: Option<Vec<usize>>,
    pub families: Vec<Family>,
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Interior sample points per case in the oracle suite.
    pub points: usize,
    /// Record wall-clock time per suite. Off by default.
    #[serde(skip)]
    pub timings: bool,
}

impl SuiteConfig {
    pub fn new(n: Vec<usize>, r: Vec<u32>, suites: Vec<Suite>) -> Self {
        SuiteConfig {
            n,
            r,
            k: None,
            families: Family::BOTH.to_vec(),
            suites,
            seed: 0,
            points: 5,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.r.is_empty() || self.families.is_empty() || self.suites.is_empty() {
            return Err(Error::Parse("empty n, r, family or suite selection".into()));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n == 0 || n > MAX_N) {
            return Err(Error::DimensionMismatch(format!("n = {n} outside 1..={MAX_N}")));
        }
        if self.r.contains(&0) {
            return Err(Error::Parse("r must be at least 1".into()));
        }
        if self.points == 0 {
            return Err(Error::Parse("the oracle needs at least one point per case".into()));
        }
        Ok(())
    }

    /// Outside the desk-scale envelope: `n <= 2` with `r <= 3`, `n = 3`
    /// with `r <= 2`.
    pub fn is_slow(&self) -> bool {
        self.n.iter().any(|&n| {
            self.r.iter().any(|&r| match n {
                1 | 2 => r > 3,
                3 => r > 2,
                _ => true,
            })
        })
    }

    fn k_selected(&self, k: usize) -> bool {
        self.k.as_ref().map_or(true, |ks| ks.contains(&k))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    pub context: String,
    pub input: Value,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub not_divisible: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failures: 0,
            not_divisible: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub description: &'static str,
    pub assertable: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Value>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: SuiteConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == s)
    }

    pub fn not_divisible(&self) -> usize {
        self.suites.iter().flat_map(|s| &s.checks).map(|c| c.not_divisible).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

type Outcome = Result<Option<String>>;

struct Event {
    check: &'static str,
    context: String,
    result: Outcome,
}

#[derive(Default)]
struct Events(Vec<Event>);

impl Events {
    fn push(&mut self, check: &'static str, context: impl Into<String>, result: Outcome) {
        self.0.push(Event {
            check,
            context: context.into(),
            result,
        });
    }
}

#[derive(Clone, Copy, Default)]
struct Case {
    n: usize,
    r: Option<u32>,
    k: Option<usize>,
    family: Option<Family>,
    element: Option<usize>,
}

impl Case {
    fn new(n: usize) -> Self {
        Case { n, ..Default::default() }
    }

    fn with(n: usize, r: u32, k: usize, family: Family) -> Self {
        Case {
            n,
            r: Some(r),
            k: Some(k),
            family: Some(family),
            element: None,
        }
    }

    fn element(mut self, i: usize) -> Self {
        self.element = Some(i);
        self
    }
}

struct Recorder {
    checks: Vec<Check>,
    findings: Vec<Value>,
}

impl Recorder {
    fn new(names: &[&str]) -> Self {
        Recorder {
            checks: names.iter().map(|n| Check::new(n)).collect(),
            findings: Vec::new(),
        }
    }

    fn entry(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(Check::new(name));
        self.checks.last_mut().unwrap()
    }

    fn record(&mut self, ev: Event, case: Case, input: &dyn Fn() -> Value) {
        let c = self.entry(ev.check);
        c.cases += 1;
        let detail = match ev.result {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => {
                if matches!(e, Error::NotDivisible(_)) {
                    c.not_divisible += 1;
                }
                format!("error: {e}")
            }
        };
        c.failures += 1;
        if c.counterexamples.len() < MAX_COUNTEREXAMPLES {
            c.counterexamples.push(Counterexample {
                n: case.n,
                r: case.r,
                k: case.k,
                family: case.family,
                element: case.element,
                context: ev.context,
                input: input(),
                detail,
            });
        }
    }

    fn record_all(&mut self, events: Events, case: Case, input: &dyn Fn() -> Value) {
        for ev in events.0 {
            self.record(ev, case, input);
        }
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            description: suite.description(),
            assertable: suite.assertable(),
            passed: self.checks.iter().all(Check::passed),
            checks: self.checks,
            findings: self.findings,
        }
    }
}

#[cfg(feature = "parallel")]
fn map_cases<T: Sync, R: Send>(items: &[T], f: impl Fn(usize, &T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_cases<T: Sync, R: Send>(items: &[T], f: impl Fn(usize, &T) -> R + Sync + Send) -> Vec<R> {
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

fn eq_forms(lhs: &PolyForm, rhs: &PolyForm) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs} != {rhs}"))
}

fn eq_boundary(lhs: &BoundaryForm, rhs: &BoundaryForm) -> Option<String> {
    if lhs == rhs {
        return None;
    }
    let facets: Vec<usize> = (0..lhs.facets().len().min(rhs.facets().len()))
        .filter(|&i| lhs.facet(i) != rhs.facet(i))
        .collect();
    Some(format!("traces differ on facets {facets:?}"))
}

fn member(u: &PolyForm, family: Family, r: u32) -> Option<String> {
    (!u.is_member(family, r)).then(|| {
        let space = match family {
            Family::Full => format!("P{r}Λ{}", u.k()),
            Family::Trimmed => format!("P{r}-Λ{}", u.k()),
        };
        format!("{u} is not in {space}")
    })
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Boundary bases with their symbolic extensions, computed once per
/// `(n, r, k, family)` and shared across suites.
type Extended = Vec<(BoundaryForm, Result<PolyForm>)>;

struct Runner<'c> {
    cfg: &'c SuiteConfig,
    extended: BTreeMap<(usize, u32, usize, Family), std::rc::Rc<Extended>>,
}

impl<'c> Runner<'c> {
    fn grid(&self) -> Vec<(usize, u32, usize, Family)> {
        let mut out = Vec::new();
        for &n in &self.cfg.n {
            for &r in &self.cfg.r {
                for &family in &self.cfg.families {
                    for k in (0..n).filter(|&k| self.cfg.k_selected(k)) {
                        out.push((n, r, k, family));
                    }
                }
            }
        }
        out
    }

    fn boundary_bases(&self, rec: &mut Recorder, n: usize, r: u32, k: usize, family: Family) -> Vec<BoundaryForm> {
        match boundary_basis(n, r, k, family) {
            Ok(b) => b,
            Err(e) => {
                rec.record(
                    Event {
                        check: "setup",
                        context: "boundary basis".into(),
                        result: Err(e),
                    },
                    Case::with(n, r, k, family),
                    &|| Value::Null,
                );
                Vec::new()
            }
        }
    }

    fn extended(&mut self, rec: &mut Recorder, n: usize, r: u32, k: usize, family: Family) -> std::rc::Rc<Extended> {
        if let Some(e) = self.extended.get(&(n, r, k, family)) {
            return e.clone();
        }
        let bases = self.boundary_bases(rec, n, r, k, family);
        let ext = map_cases(&bases, |_, b| extend(b));
        let e = std::rc::Rc::new(bases.into_iter().zip(ext).collect::<Extended>());
        self.extended.insert((n, r, k, family), e.clone());
        e
    }

    fn trace(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["extension"]);
        for (n, r, k, family) in self.grid() {
            let ext = self.extended(&mut rec, n, r, k, family);
            let events = map_cases(&ext, |_, (b, e)| {
                let mut ev = Events::default();
                let res = e.clone().and_then(|e| BoundaryForm::trace_of(&e)).map(|t| eq_boundary(&t, b));
                ev.push("extension", "", res);
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &ext[i].0;
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }
        }
        rec.finish(Suite::Trace)
    }

    fn cochain(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["cochain"]);
        for (n, r, k, family) in self.grid() {
            if k + 2 > n {
                continue;
            }
            let ext = self.extended(&mut rec, n, r, k, family);
            let events = map_cases(&ext, |_, (b, e)| {
                let mut ev = Events::default();
                let res = e.clone().and_then(|e| {
                    let rhs = extend(&b.exterior_derivative())?;
                    Ok(eq_forms(&e.exterior_derivative(), &rhs))
                });
                ev.push("cochain", "d E u = E du", res);
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &ext[i].0;
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }
        }
        rec.finish(Suite::Cochain)
    }

    fn preserve(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["membership", "component-membership"]);
        for (n, r, k, family) in self.grid() {
            let ext = self.extended(&mut rec, n, r, k, family);
            let events = map_cases(&ext, |_, (b, e)| {
                let mut ev = Events::default();
                ev.push("membership", "", e.clone().map(|e| member(&e, family, r)));
                for set in blending_sets(n) {
                    let res = extend_component(&set, b).map(|c| member(&c, family, r));
                    ev.push("component-membership", format!("I={set}"), res);
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &ext[i].0;
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }
        }
        rec.finish(Suite::Preserve)
    }

    fn oracle(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["representation", "evaluation", "ladder"]);
        for (n, r, k, family) in self.grid() {
            let ext = self.extended(&mut rec, n, r, k, family);
            let labels = full_labels(n);
            let seed = self.cfg.seed ^ ((n as u64) << 48 | (r as u64) << 32 | (k as u64) << 16 | family as u64);
            let events = map_cases(&ext, |i, (b, e)| {
                let mut ev = Events::default();
                let pts = match interior_points(n, self.cfg.points, seed.wrapping_add(i as u64)) {
                    Ok(p) => p,
                    Err(err) => {
                        ev.push("representation", "sample points", Err(err));
                        return ev;
                    }
                };
                let e = match e {
                    Ok(e) => e,
                    Err(err) => {
                        ev.push("representation", "symbolic extension", Err(err.clone()));
                        return ev;
                    }
                };
                let edges: Vec<TangentVector> = (1..=k).map(|v| TangentVector::edge(&labels, 0, v)).collect::<Result<_>>().unwrap_or_default();
                for x in &pts {
                    let ctx = format!("x={x:?}");
                    let at = extend_at_point(b, x);
                    let res = at.as_ref().map_err(Clone::clone).map(|at| {
                        let lhs = e.eval_alt(x);
                        let rhs = constant_coefficients(at);
                        (lhs != rhs).then(|| format!("symbolic {lhs:?} vs pointwise {rhs:?}"))
                    });
                    ev.push("representation", ctx.clone(), res);
                    let res = at.and_then(|at| {
                        let lhs = e.eval(x, &edges)?;
                        let rhs = at.eval(x, &edges)?;
                        Ok((lhs != rhs).then(|| format!("{lhs} != {rhs}")))
                    });
                    ev.push("evaluation", ctx, res);
                }
                if n <= 2 {
                    for set in blending_sets(n) {
                        for ell in 0..=k {
                            for x in pts.iter().take(2) {
                                let res = extend_ladder(&set, b, ell, x).map(|l| {
                                    (!l.agree()).then(|| format!("{} != {}", l.truncated, l.representation))
                                });
                                ev.push("ladder", format!("I={set} level={ell} x={x:?}"), res);
                            }
                        }
                    }
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &ext[i].0;
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }
        }
        rec.finish(Suite::Oracle)
    }

    fn rops(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&[
            "r-commute",
            "r-trace",
            "r-divisible",
            "r-antisymmetry",
            "r-vertex-pullback",
            "r-top-vanish",
        ]);
        for (n, r, k, family) in self.grid() {
            let labels = full_labels(n);
            // interior data: commuting relation
            let interior = basis(n, r, k, family).unwrap_or_default();
            let events = map_cases(&interior, |_, u| {
                let mut ev = Events::default();
                let du = u.exterior_derivative();
                for set in all_gamma(n) {
                    for fiber in all_gamma(n) {
                        let s = fiber.len() - 1;
                        if s > k + 1 {
                            continue;
                        }
                        let res = (|| {
                            let lhs = if s <= k {
                                r_op(&set, &fiber, Data::Interior(u))?.exterior_derivative()
                            } else {
                                PolyForm::zero(&labels, 0)?
                            };
                            let mut rhs = r_op(&set, &fiber, Data::Interior(&du))?;
                            if s >= 1 {
                                let dr = delta_r(&set, &fiber, Data::Interior(u))?;
                                rhs.add_scaled(&dr, &sign((k + s) % 2 == 1))?;
                            }
                            Ok(eq_forms(&lhs, &rhs))
                        })();
                        ev.push("r-commute", format!("I={set} J={fiber}"), res);
                    }
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let u = &interior[i];
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| form_value(u));
            }

            // boundary data
            let bases = self.boundary_bases(&mut rec, n, r, k, family);
            let events = map_cases(&bases, |_, b| {
                let mut ev = Events::default();
                let data = Data::Boundary(b);
                for set in all_gamma(n) {
                    let m = set.len() - 1;
                    let subs: Vec<IndexSet> = (0..=k.min(m))
                        .flat_map(|s| enumerate_gamma_sub(&set, s).unwrap_or_default())
                        .collect();
                    // trace consistency across I and I ∪ {j}
                    for j in set.complement().labels().iter().copied() {
                        let bigger = match set.with_label_sorted(j) {
                            Ok(x) => x,
                            Err(e) => {
                                ev.push("r-trace", format!("I={set} j={j}"), Err(e));
                                continue;
                            }
                        };
                        let facet = facet_labels(n, j);
                        for fiber in subs.iter().filter(|f| f.len() < set.len()) {
                            let res = (|| {
                                let lhs = r_op(&set, fiber, data)?.trace(&facet)?;
                                let rhs = r_op(&bigger, fiber, data)?.trace(&facet)?;
                                Ok(eq_forms(&lhs, &rhs))
                            })();
                            ev.push("r-trace", format!("I={set} j={j} J={fiber}"), res);
                        }
                    }
                    if m == 0 {
                        continue;
                    }
                    for fiber in subs.iter().filter(|f| f.len() < set.len()) {
                        let ctx = format!("I={set} J={fiber}");
                        ev.push("r-divisible", ctx.clone(), r_div(&set, fiber, data).map(|q| member(&q, family, r)));
                        if fiber.len() == 1 {
                            let res = (|| {
                                let lhs = r_op(&set, fiber, data)?;
                                Ok(eq_forms(&lhs, &proj_pullback(&set, fiber.labels()[0], data)?))
                            })();
                            ev.push("r-vertex-pullback", ctx.clone(), res);
                        } else {
                            let res = (|| {
                                let swapped = swap_front(fiber)?;
                                let lhs = r_op(&set, &swapped, data)?;
                                Ok(eq_forms(&lhs, &r_op(&set, fiber, data)?.scale(&-Rational::one())))
                            })();
                            ev.push("r-antisymmetry", ctx.clone(), res);
                        }
                    }
                    // δR over J ⊆ I with |J| >= 2
                    for s in 1..=(k + 1).min(m) {
                        for fiber in enumerate_gamma_sub(&set, s).unwrap_or_default() {
                            let res = (|| {
                                let swapped = swap_front(&fiber)?;
                                let lhs = delta_r(&set, &swapped, data)?;
                                Ok(eq_forms(&lhs, &delta_r(&set, &fiber, data)?.scale(&-Rational::one())))
                            })();
                            ev.push("r-antisymmetry", format!("δR I={set} J={fiber}"), res);
                        }
                    }
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &bases[i];
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }

            // R^n on interior n-forms vanishes when I ⊄ J; visited once per (n, r, family)
            if k == 0 {
                let top = basis(n, r, n, family).unwrap_or_default();
                let events = map_cases(&top, |_, u| {
                    let mut ev = Events::default();
                    for set in all_gamma(n) {
                        for fiber in all_gamma(n).into_iter().filter(|f| !set.is_subset_of(f)) {
                            let res = r_op(&set, &fiber, Data::Interior(u)).map(|x| (!x.is_zero()).then(|| format!("{x} != 0")));
                            ev.push("r-top-vanish", format!("I={set} J={fiber}"), res);
                        }
                    }
                    ev
                });
                for (i, events) in events.into_iter().enumerate() {
                    let u = &top[i];
                    rec.record_all(events, Case::with(n, r, n, family).element(i), &|| form_value(u));
                }
            }
        }
        rec.finish(Suite::Rops)
    }

    fn aops(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&[
            "a-commute",
            "delta-a",
            "a-trace",
            "a-divisible",
            "a-antisymmetry",
            "a-top-vanish",
            "c-relations",
        ]);
        for (n, r, k, family) in self.grid() {
            let labels = full_labels(n);
            let bases = self.boundary_bases(&mut rec, n, r, k, family);
            let events = map_cases(&bases, |_, b| {
                let mut ev = Events::default();
                let data = Data::Boundary(b);
                let db = b.exterior_derivative();
                for set in blending_sets(n) {
                    let m = set.len() - 1;
                    let mut cache = match BlendCache::new(&set, data) {
                        Ok(c) => c,
                        Err(e) => {
                            ev.push("a-commute", format!("I={set}"), Err(e));
                            continue;
                        }
                    };
                    let top = k.min(m).min(n - 1);
                    // trace consistency across I and I ∪ {j}
                    for j in set.complement().labels().iter().copied() {
                        let facet = facet_labels(n, j);
                        for s in 0..=top {
                            for fiber in enumerate_gamma_sub(&set, s).unwrap_or_default() {
                                let res = (|| {
                                    let bigger = set.with_label_sorted(j)?;
                                    let lhs = cache.a(&fiber)?.trace(&facet)?;
                                    let rhs = a_op(&bigger, &fiber, data)?.trace(&facet)?;
                                    Ok(eq_forms(&lhs, &rhs))
                                })();
                                ev.push("a-trace", format!("I={set} j={j} J={fiber}"), res);
                            }
                        }
                    }
                    let mut db_cache = match BlendCache::new(&set, Data::Boundary(&db)) {
                        Ok(c) => c,
                        Err(e) => {
                            ev.push("a-commute", format!("I={set}"), Err(e));
                            continue;
                        }
                    };
                    for s in 0..=(k + 1).min(m).min(n - 1) {
                        for fiber in enumerate_gamma_sub(&set, s).unwrap_or_default() {
                            let ctx = format!("I={set} J={fiber}");
                            let res = (|| {
                                let lhs = db_cache.a(&fiber)?;
                                // d of A^k u with s = k + 1 lands in degree 0 from degree -1
                                let mut rhs = if s <= k {
                                    cache.a(&fiber)?.exterior_derivative().scale(&sign(s % 2 == 1))
                                } else {
                                    PolyForm::zero(&labels, 0)?
                                };
                                if s >= 1 {
                                    rhs.add_scaled(&cache.delta_a(&fiber)?, &rat(s as i64, 1))?;
                                }
                                Ok(eq_forms(&lhs, &rhs))
                            })();
                            ev.push("a-commute", ctx.clone(), res);
                            if s >= 1 && s - 1 <= k && s <= n {
                                let res = (|| {
                                    let lhs = cache.delta_a(&fiber)?;
                                    let c = c_const(s - 1, n, k)?;
                                    let rhs = delta_r(&set, &fiber, data)?.scale(&(-c * rat(s as i64, 1)));
                                    Ok(eq_forms(&lhs, &rhs))
                                })();
                                ev.push("delta-a", ctx.clone(), res);
                            }
                            if s <= top {
                                ev.push("a-divisible", ctx.clone(), a_div(&set, &fiber, data).map(|q| member(&q, family, r)));
                                if s >= 1 {
                                    let res = (|| {
                                        let lhs = a_op(&set, &swap_front(&fiber)?, data)?;
                                        Ok(eq_forms(&lhs, &cache.a(&fiber)?.scale(&-Rational::one())))
                                    })();
                                    ev.push("a-antisymmetry", ctx, res);
                                }
                            }
                        }
                    }
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &bases[i];
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }

            if k == 0 {
                let top = basis(n, r, n, family).unwrap_or_default();
                let events = map_cases(&top, |_, u| {
                    let mut ev = Events::default();
                    for set in blending_sets(n) {
                        for s in 0..(set.len()).min(n) {
                            for fiber in enumerate_gamma_sub(&set, s).unwrap_or_default() {
                                let res = a_op(&set, &fiber, Data::Interior(u)).map(|x| (!x.is_zero()).then(|| format!("{x} != 0")));
                                ev.push("a-top-vanish", format!("I={set} J={fiber}"), res);
                            }
                        }
                    }
                    ev
                });
                for (i, events) in events.into_iter().enumerate() {
                    let u = &top[i];
                    rec.record_all(events, Case::with(n, r, n, family).element(i), &|| form_value(u));
                }
            }
        }

        // the constants themselves, independent of the configured ranges
        for n in 2..=6 {
            for s in 1..n {
                for k in 0..=n {
                    let ctx = format!("s={s} k={k}");
                    let res = (|| {
                        let c = c_const(s, n, k)?;
                        let by_k = c_const(s, n, k + 1)? / &c;
                        if by_k != sign(s % 2 == 1) {
                            return Ok(Some(format!("c^(k+1)/c^k = {by_k}")));
                        }
                        let by_s = &c / c_const(s - 1, n, k)?;
                        let expected = sign(k % 2 == 1) * rat((s * s) as i64, (n - s) as i64);
                        Ok((by_s != expected).then(|| format!("c_s/c_(s-1) = {by_s}, expected {expected}")))
                    })();
                    rec.record(
                        Event {
                            check: "c-relations",
                            context: ctx,
                            result: res,
                        },
                        Case::new(n),
                        &|| Value::Null,
                    );
                }
            }
        }
        rec.finish(Suite::Aops)
    }

    fn identities(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["dphi-over-lambda", "blend-wedge-identity", "whitney-dimension"]);
        let mut ns = self.cfg.n.clone();
        ns.sort();
        ns.dedup();
        for &n in &ns {
            let labels = full_labels(n);
            for set in all_gamma(n) {
                let m = set.len() - 1;
                for s in 0..=m {
                    for fiber in enumerate_gamma_sub(&set, s).unwrap_or_default() {
                        let res = dphi_over_lambda(&labels, &set, &fiber);
                        rec.record(
                            Event {
                                check: "dphi-over-lambda",
                                context: format!("I={set} J={fiber}"),
                                result: res,
                            },
                            Case::new(n),
                            &|| Value::Null,
                        );
                    }
                }
            }
        }
        for (n, r, k, family) in self.grid() {
            let bases = self.boundary_bases(&mut rec, n, r, k, family);
            let events = map_cases(&bases, |_, b| {
                let mut ev = Events::default();
                for set in blending_sets(n) {
                    let m = set.len() - 1;
                    for s in 1..=m.min(k).min(n - 1) {
                        let res = blend_wedge_identity(&set, s, b);
                        ev.push("blend-wedge-identity", format!("I={set} s={s}"), res);
                    }
                }
                ev
            });
            for (i, events) in events.into_iter().enumerate() {
                let b = &bases[i];
                rec.record_all(events, Case::with(n, r, k, family).element(i), &|| boundary_value(b));
            }
        }
        for n in 1..=MAX_N {
            for k in 0..=n {
                let res = basis_trimmed(n, 1, k).map(|b| {
                    let expected = binomial(n as u64 + 1, k as u64 + 1) as usize;
                    (b.len() != expected).then(|| format!("dimension {} != {expected}", b.len()))
                });
                rec.record(
                    Event {
                        check: "whitney-dimension",
                        context: format!("k={k}"),
                        result: res,
                    },
                    Case {
                        n,
                        r: Some(1),
                        k: Some(k),
                        family: Some(Family::Trimmed),
                        element: None,
                    },
                    &|| Value::Null,
                );
            }
        }
        rec.finish(Suite::Identities)
    }

    fn homotopy(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&[
            "complex",
            "homotopy-identity",
            "poincare-degree",
            "poincare-bc-trace",
        ]);
        for &n in &self.cfg.n {
            let labels = full_labels(n);
            let mut bases_points = match RationalPoint::barycenter(&labels) {
                Ok(p) => vec![p],
                Err(_) => Vec::new(),
            };
            bases_points.extend(interior_points(n, 2, self.cfg.seed ^ 0xa5a5).unwrap_or_default());
            for &r in &self.cfg.r {
                for pattern in patterns(n) {
                    let name: Vec<&str> = pattern.iter().map(|f| f.name()).collect();
                    match verify_complex(n, r, &pattern, &bases_points[0]) {
                        Ok(report) => {
                            let c = rec.entry("complex");
                            for d in &report.degrees {
                                c.cases += d.passes + d.failures.len();
                                if d.k < n {
                                    c.cases += d.bc_dim;
                                }
                                c.failures += d.failures.len();
                                for f in &d.failures {
                                    if c.counterexamples.len() < MAX_COUNTEREXAMPLES {
                                        c.counterexamples.push(Counterexample {
                                            n,
                                            r: Some(r),
                                            k: Some(d.k),
                                            family: None,
                                            element: None,
                                            context: format!("pattern {name:?} {}: {}", d.space, f.check),
                                            input: f.input.clone(),
                                            detail: f.detail.clone(),
                                        });
                                    }
                                }
                            }
                            let top = report.degrees.last().map(|d| (d.bc_dim, d.bc_top_holds));
                            rec.findings.push(json!({
                                "n": n, "r": r, "pattern": name,
                                "spaces": report.degrees.iter().map(|d| d.space.clone()).collect::<Vec<_>>(),
                                "dims": report.degrees.iter().map(|d| d.dim).collect::<Vec<_>>(),
                                "bc_dims": report.degrees.iter().map(|d| d.bc_dim).collect::<Vec<_>>(),
                                "top_bc_identity_holds": top.and_then(|t| t.1),
                                "top_bc_cases": top.map(|t| t.0),
                            }));
                        }
                        Err(Error::InvalidIndexSet(msg)) => {
                            rec.findings.push(json!({"n": n, "r": r, "pattern": name, "inadmissible": msg}));
                        }
                        Err(e) => rec.record(
                            Event {
                                check: "complex",
                                context: format!("pattern {name:?}"),
                                result: Err(e),
                            },
                            Case::new(n),
                            &|| Value::Null,
                        ),
                    }
                }
                for &family in &self.cfg.families {
                    for k in (0..=n).filter(|&k| self.cfg.k_selected(k)) {
                        let forms = basis(n, r, k, family).unwrap_or_default();
                        let space = Space { k, family, r };
                        let events = map_cases(&forms, |_, u| {
                            let mut ev = Events::default();
                            let du = u.exterior_derivative();
                            for (ai, a) in bases_points.iter().enumerate() {
                                let ctx = format!("base point {ai}");
                                let res = (|| {
                                    if k == 0 {
                                        let value = u.eval(a, &[])?;
                                        let c = PolyForm::scalar(BaryPoly::constant(&labels, value)?);
                                        return Ok(eq_forms(&u.sub(&c)?, &poincare(&du, a)?));
                                    }
                                    let mut sum = poincare(u, a)?.exterior_derivative();
                                    if k < n {
                                        sum = sum.add(&poincare(&du, a)?)?;
                                    }
                                    Ok(eq_forms(&sum, u))
                                })();
                                ev.push("homotopy-identity", ctx.clone(), res);
                                if k >= 1 {
                                    let target = mapping_target(&space);
                                    let res = poincare(u, a).map(|q| (!target.contains(&q)).then(|| format!("{q} is not in {target}")));
                                    ev.push("poincare-degree", ctx, res);
                                }
                            }
                            if k >= 1 {
                                let res = poincare_bc(u, &bases_points[0])
                                    .and_then(|q| BoundaryForm::trace_of(&q))
                                    .map(|t| (!t.is_zero()).then(|| "nonzero trace".to_string()));
                                ev.push("poincare-bc-trace", "", res);
                            }
                            ev
                        });
                        for (i, events) in events.into_iter().enumerate() {
                            let u = &forms[i];
                            rec.record_all(events, Case::with(n, r, k, family).element(i), &|| form_value(u));
                        }
                    }
                }
            }
        }
        rec.finish(Suite::Homotopy)
    }

    fn top_diagnostic(&mut self) -> SuiteReport {
        let mut rec = Recorder::new(&["stokes", "d-top-vanishes", "d-top-volume-form"]);
        for &n in &self.cfg.n {
            let k = n - 1;
            if !self.cfg.k_selected(k) {
                continue;
            }
            for &r in &self.cfg.r {
                for &family in &self.cfg.families {
                    let bases = self.boundary_bases(&mut rec, n, r, k, family);
                    let diags = map_cases(&bases, |_, b| d_top_diagnostic(b));
                    let (mut vanish, mut volume, mut total) = (0, 0, 0);
                    for (i, d) in diags.into_iter().enumerate() {
                        let b = &bases[i];
                        let case = Case::with(n, r, k, family).element(i);
                        let input = || boundary_value(b);
                        let mut ev = Events::default();
                        match d {
                            Ok(d) => {
                                total += 1;
                                vanish += d.vanishes as usize;
                                volume += d.matches_volume_form as usize;
                                ev.push(
                                    "stokes",
                                    "",
                                    Ok((!d.stokes_holds()).then(|| format!("{} != {}", d.interior_integral, d.boundary_integral))),
                                );
                                ev.push(
                                    "d-top-vanishes",
                                    "",
                                    Ok((!d.vanishes).then(|| format!("d E u = {}", d.d_extension))),
                                );
                                ev.push(
                                    "d-top-volume-form",
                                    "",
                                    Ok((!d.matches_volume_form).then(|| format!("d E u = {}", d.d_extension))),
                                );
                            }
                            Err(e) => ev.push("stokes", "", Err(e)),
                        }
                        rec.record_all(ev, case, &input);
                    }
                    rec.findings.push(json!({
                        "n": n, "r": r, "family": family, "cases": total,
                        "d_extension_vanishes": vanish,
                        "d_extension_is_volume_multiple": volume,
                    }));
                }
            }
        }
        rec.finish(Suite::TopDiagnostic)
    }
}

fn swap_front(fiber: &IndexSet) -> Result<IndexSet> {
    let mut l = fiber.labels().to_vec();
    l.swap(0, 1);
    IndexSet::new(l, fiber.ambient_n())
}

fn lambda_form(labels: &[usize], set: &IndexSet) -> Result<(BaryPoly, PolyForm)> {
    let lam = BaryPoly::lambda_sum(labels, set.labels())?;
    let dlam = PolyForm::scalar(lam.clone()).exterior_derivative();
    Ok((lam, dlam))
}

/// `λ_I dφ_J - (s+1) dλ_I ∧ φ_J = (s+1) Σ_{i∈I∖J} φ_{(i,J)}`.
fn dphi_over_lambda(labels: &[usize], set: &IndexSet, fiber: &IndexSet) -> Outcome {
    let s = fiber.len() - 1;
    let (lam, dlam) = lambda_form(labels, set)?;
    let phi = whitney(labels, fiber.labels())?;
    let scale = rat(s as i64 + 1, 1);
    let mut lhs = phi.exterior_derivative().mul_poly(&lam)?;
    lhs.add_scaled(&dlam.wedge(&phi)?, &-scale.clone())?;
    let mut rhs = PolyForm::zero(labels, s + 1)?;
    for i in set.difference(fiber) {
        let mut l = vec![i];
        l.extend_from_slice(fiber.labels());
        rhs.add_scaled(&whitney(labels, &l)?, &scale)?;
    }
    Ok(eq_forms(&lhs, &rhs))
}

/// Wedge identity between `δφ`, `A` and `δA` on one index set, cleared of
/// the `λ_I^{s+1}` denominator:
/// `Σ_{J∈Γ_s(I)} [λ_I d(δφ)_J - s dλ_I ∧ (δφ)_J] ∧ A_J + s Σ_{J∈Γ_{s+1}(I)} (δφ)_J ∧ (δA)_J
///  = (m+1) s Σ_{J∈Γ_s(I)} φ_J ∧ A_J`.
fn blend_wedge_identity(set: &IndexSet, s: usize, b: &BoundaryForm) -> Outcome {
    let n = b.n();
    let k = b.k();
    let m = set.len() - 1;
    let labels = full_labels(n);
    let (lam, dlam) = lambda_form(&labels, set)?;
    let mut cache = BlendCache::new(set, Data::Boundary(b))?;
    let sr = rat(s as i64, 1);
    let mut lhs = PolyForm::zero(&labels, k)?;
    let mut rhs = PolyForm::zero(&labels, k)?;
    for fiber in enumerate_gamma_sub(set, s)? {
        let a = cache.a(&fiber)?;
        let dphi = delta_whitney(&labels, fiber.labels())?;
        let mut coeff = dphi.exterior_derivative().mul_poly(&lam)?;
        coeff.add_scaled(&dlam.wedge(&dphi)?, &-sr.clone())?;
        lhs.add_scaled(&coeff.wedge(&a)?, &Rational::one())?;
        rhs.add_scaled(&whitney(&labels, fiber.labels())?.wedge(&a)?, &rat(((m + 1) * s) as i64, 1))?;
    }
    if s < m {
        for fiber in enumerate_gamma_sub(set, s + 1)? {
            let da = cache.delta_a(&fiber)?;
            let dphi = delta_whitney(&labels, fiber.labels())?;
            lhs.add_scaled(&dphi.wedge(&da)?, &sr)?;
        }
    }
    Ok(eq_forms(&lhs, &rhs))
}

/// Runs the configured suites in a fixed order.
pub fn run(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut runner = Runner {
        cfg,
        extended: BTreeMap::new(),
    };
    let mut suites = Vec::new();
    let mut timings = BTreeMap::new();
    let mut selected = cfg.suites.clone();
    selected.sort();
    selected.dedup();
    for suite in selected {
        let start = Instant::now();
        let report = match suite {
            Suite::Trace => runner.trace(),
            Suite::Cochain => runner.cochain(),
            Suite::Preserve => runner.preserve(),
            Suite::Rops => runner.rops(),
            Suite::Aops => runner.aops(),
            Suite::Identities => runner.identities(),
            Suite::Homotopy => runner.homotopy(),
            Suite::TopDiagnostic => runner.top_diagnostic(),
            Suite::Oracle => runner.oracle(),
        };
        timings.insert(suite.name().to_string(), start.elapsed().as_millis());
        suites.push(report);
    }
    let passed = suites.iter().all(|s| s.passed || !s.assertable);
    Ok(Report {
        schema: REPORT_SCHEMA,
        config: cfg.clone(),
        passed,
        suites,
        timings_ms: cfg.timings.then_some(timings),
    })
}
