//! The full verification run and its machine-readable report.
//!
//! Nothing in [`Report`] depends on the worker count, the checkpoint or the wall clock; timing
//! goes to the human summary only.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::GentleAlgebra;
use crate::bridge::arc_to_complex;
use crate::complex::ProjComplex;
use crate::fixtures::{case_fixtures, case_sweep, evaluate, gamma, CaseSweep, FixtureResult};
use crate::hom::HomTable;
use crate::properties::{self, PropertyOutcome};
use crate::search::{enumerate_arcs, run_search, ArcRecord, ConfigEcho, SearchConfig, SearchError};

pub const SCHEMA: &str = "silting-lab-report/1";

/// X(p:1,2,3@0) written out by hand.
pub const GAMMA_LITERAL: &str = "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n";

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub max_crossings: usize,
    pub mu_window: [i32; 2],
    pub arcs_enumerated: usize,
    pub statement: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaSection {
    pub arc: String,
    pub index_sequence: Vec<i32>,
    pub index_ok: bool,
    pub complex: String,
    pub complex_ok: bool,
    /// dim Hom(X, X[d]) for d = 0..=6, agreed at both primes.
    pub self_hom: HomTable,
    pub presilting_ok: bool,
    /// Homology dimension vectors by degree, over the first prime.
    pub homology: BTreeMap<i32, Vec<usize>>,
    pub homology_ok: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub arcs_checked: usize,
    pub presilting: usize,
    pub simple_distinct_ends: usize,
    pub exceptions: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SameEnd {
    pub arcs_checked: usize,
    pub exceptions: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplementSection {
    pub candidates_checked: usize,
    pub excluded: Vec<String>,
    pub complements: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseSection {
    pub fixtures: Vec<FixtureResult>,
    pub sweep: CaseSweep,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub config: ConfigEcho,
    pub bounds: Bounds,
    pub gamma: GammaSection,
    pub properties: Vec<PropertyOutcome>,
    pub classification: Classification,
    pub same_end: SameEnd,
    pub complement: ComplementSection,
    pub case_fixtures: CaseSection,
    pub records: Vec<ArcRecord>,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The first failed check, in run order.
    pub fn first_failure(&self) -> Option<String> {
        let g = &self.gamma;
        for (ok, what) in [
            (g.index_ok, "index sequence of p:1,2,3@0"),
            (g.complex_ok, "complex of p:1,2,3@0"),
            (g.presilting_ok, "self-Hom of p:1,2,3@0"),
            (g.homology_ok, "homology of p:1,2,3@0"),
        ] {
            if !ok {
                return Some(format!("fixture failed: {what}"));
            }
        }
        if let Some(p) = self.properties.iter().find(|p| !p.pass()) {
            return Some(format!("property {} failed: {}", p.name, p.failures.first().cloned().unwrap_or_default()));
        }
        if let Some(e) = self.classification.exceptions.first() {
            return Some(format!("classification exception: {e}"));
        }
        if let Some(e) = self.same_end.exceptions.first() {
            return Some(format!("presilting arc with equal endpoints: {e}"));
        }
        if let Some(c) = self.complement.complements.first() {
            return Some(format!("complement found: {c}"));
        }
        if let Some(f) = self.case_fixtures.fixtures.iter().find(|f| !f.pass) {
            return Some(format!("case fixture {} failed: {}", f.name, f.observed));
        }
        if let Some(v) = self.case_fixtures.sweep.violations.first() {
            return Some(format!("case sweep violation: {v}"));
        }
        None
    }

    /// Plain-text summary; `elapsed` is reported here and nowhere in the JSON.
    pub fn summary(&self, elapsed: std::time::Duration) -> String {
        let mark = |b: bool| if b { "ok" } else { "FAILED" };
        let mut s = String::new();
        s += &format!(
            "search bounds: 1..={} crossings, mu1 in [{}, {}], {} canonical arcs\n",
            self.bounds.max_crossings, self.bounds.mu_window[0], self.bounds.mu_window[1], self.bounds.arcs_enumerated
        );
        s += &format!("gamma fixtures: {}\n", mark(self.gamma.pass));
        for p in &self.properties {
            s += &format!("property {:<12} {:>8} instances  {}\n", p.name, p.instances, mark(p.pass()));
        }
        s += &format!(
            "classification: {} arcs, {} presilting, {} exceptions  {}\n",
            self.classification.arcs_checked,
            self.classification.presilting,
            self.classification.exceptions.len(),
            mark(self.classification.pass)
        );
        s += &format!(
            "equal endpoints: {} arcs, {} presilting  {}\n",
            self.same_end.arcs_checked,
            self.same_end.exceptions.len(),
            mark(self.same_end.pass)
        );
        s += &format!(
            "complement search: {} candidates, {} complements  {}\n",
            self.complement.candidates_checked,
            self.complement.complements.len(),
            mark(self.complement.pass)
        );
        s += &format!(
            "case fixtures: {}/{} pass, sweep up to {} crossings with {} violations  {}\n",
            self.case_fixtures.fixtures.iter().filter(|f| f.pass).count(),
            self.case_fixtures.fixtures.len(),
            self.case_fixtures.sweep.max_crossings,
            self.case_fixtures.sweep.violations.len(),
            mark(self.case_fixtures.pass)
        );
        s += &format!("elapsed: {:.2}s\n", elapsed.as_secs_f64());
        s += &format!("overall: {}\n", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

fn bounds(cfg: &SearchConfig, n: usize) -> Bounds {
    Bounds {
        max_crossings: cfg.max_crossings,
        mu_window: [cfg.mu_window.0, cfg.mu_window.1],
        arcs_enumerated: n,
        statement: format!(
            "every canonical graded arc with 1 to {} crossings and first index in [{}, {}] was checked; \
             arcs outside these bounds were not, so an empty complement list is bounded evidence, not a proof",
            cfg.max_crossings, cfg.mu_window.0, cfg.mu_window.1
        ),
    }
}

pub fn gamma_section(oracle: &crate::hom::Oracle, alg: &Arc<GentleAlgebra>) -> Result<GammaSection, SearchError> {
    let g = gamma();
    let x = arc_to_complex(alg, &g);
    let expected = ProjComplex::parse_literal(GAMMA_LITERAL, alg.clone()).expect("literal parses");
    let index_sequence = g.index_sequence();
    let self_hom = oracle.hom_table(&x, &x, 0..=6)?;
    let presilting_ok = self_hom.get(0) == 1 && (1..=6).all(|d| self_hom.get(d) == 0);
    let homology = x.homology_dims(oracle.prime);
    let homology_ok = homology.len() == 1 && homology.get(&0) == Some(&vec![1, 1, 1]);
    let index_ok = index_sequence == [0, 1, 2];
    let complex_ok = x == expected && x.validate().is_ok();
    Ok(GammaSection {
        arc: g.to_string(),
        index_sequence,
        index_ok,
        complex: x.to_literal(),
        complex_ok,
        self_hom,
        presilting_ok,
        homology,
        homology_ok,
        pass: index_ok && complex_ok && presilting_ok && homology_ok,
    })
}

pub fn classification(records: &[ArcRecord]) -> Classification {
    let exceptions: Vec<String> = records
        .iter()
        .filter(|r| r.presilting != (r.simple && r.start != r.end))
        .map(|r| format!("{}: presilting={} simple={} closed={}", r.arc, r.presilting, r.simple, r.start == r.end))
        .collect();
    Classification {
        arcs_checked: records.len(),
        presilting: records.iter().filter(|r| r.presilting).count(),
        simple_distinct_ends: records.iter().filter(|r| r.simple && r.start != r.end).count(),
        pass: exceptions.is_empty(),
        exceptions,
    }
}

pub fn same_end(records: &[ArcRecord]) -> SameEnd {
    let closed: Vec<&ArcRecord> = records.iter().filter(|r| r.start == r.end).collect();
    let exceptions: Vec<String> = closed.iter().filter(|r| r.presilting).map(|r| r.arc.to_string()).collect();
    SameEnd { arcs_checked: closed.len(), pass: exceptions.is_empty(), exceptions }
}

pub fn complement_section(records: &[ArcRecord]) -> ComplementSection {
    let g = gamma();
    let complements: Vec<String> = records.iter().filter(|r| r.complement).map(|r| r.arc.to_string()).collect();
    let excluded: Vec<String> = records.iter().filter(|r| r.arc == g).map(|r| r.arc.to_string()).collect();
    ComplementSection {
        candidates_checked: records.len() - excluded.len(),
        excluded,
        pass: complements.is_empty(),
        complements,
    }
}

pub fn case_section(oracle: &crate::hom::Oracle, alg: &Arc<GentleAlgebra>, max_n: usize) -> Result<CaseSection, SearchError> {
    let fixtures = case_fixtures()
        .iter()
        .map(|f| evaluate(f, oracle, alg))
        .collect::<Result<Vec<_>, _>>()?;
    let sweep = case_sweep(max_n);
    let pass = fixtures.iter().all(|f| f.pass) && sweep.violations.is_empty();
    Ok(CaseSection { fixtures, sweep, pass })
}

/// Runs everything: fixtures for p:1,2,3@0, the property suites, the exhaustive search with its
/// classification and complement verdicts, and the case fixtures.
pub fn verify_paper(cfg: &SearchConfig, alg: Arc<GentleAlgebra>) -> Result<Report, SearchError> {
    cfg.validate()?;
    let oracle = cfg.oracle();
    let gamma = gamma_section(&oracle, &alg)?;
    let mut props = properties::run_all(&oracle, &alg)?;
    let records = run_search(cfg, alg.clone())?;
    let classification = classification(&records);
    let same_end = same_end(&records);
    let complement = complement_section(&records);
    let case_fixtures = case_section(&oracle, &alg, cfg.max_crossings)?;
    let searched: u64 = records.iter().map(|r| r.hom_evaluations).sum();
    props.push(properties::two_prime_outcome(oracle.evaluations() + searched, oracle.disagreements()));
    let pass = gamma.pass
        && props.iter().all(PropertyOutcome::pass)
        && classification.pass
        && same_end.pass
        && complement.pass
        && case_fixtures.pass;
    Ok(Report {
        schema: SCHEMA.to_string(),
        config: cfg.echo(),
        bounds: bounds(cfg, enumerate_arcs(cfg).len()),
        gamma,
        properties: props,
        classification,
        same_end,
        complement,
        case_fixtures,
        records,
        pass,
    })
}
