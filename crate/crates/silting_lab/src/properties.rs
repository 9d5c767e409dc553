//! Deterministic property suites over fixed enumerations of arcs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::GentleAlgebra;
use crate::arc::{
    complementary_endpoint_index, endpoint_index, germ_left_of, oriented_from, Endpoint, GradedArc,
};
use crate::bridge::arc_to_complex;
use crate::complex::ProjComplex;
use crate::fixtures::{all_words, gamma};
use crate::hom::{HomError, Oracle};
use crate::simplicity::is_simple;

/// Failures kept verbatim per suite; the rest are only counted.
const KEPT_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub scale: String,
    pub instances: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    fn new(name: &str, scale: &str) -> Self {
        PropertyOutcome { name: name.into(), scale: scale.into(), instances: 0, failure_count: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }
}

fn arcs_from(starts: &[Endpoint], max_n: usize, mus: &[i32]) -> Vec<GradedArc> {
    let mut out = Vec::new();
    for w in all_words(max_n) {
        for &s in starts {
            for &m in mus {
                out.push(GradedArc::new(s, w.clone(), m).expect("generated words are valid"));
            }
        }
    }
    out
}

/// At a shared endpoint with distinct germs exactly one order is oriented, the two indices add
/// up to 1, and the oriented one is witnessed by a nonzero Hom. Identical germs (the same word
/// at two gradings) give a nonzero Hom in both orders.
pub fn hkk_suite(oracle: &Oracle, alg: &Arc<GentleAlgebra>) -> Result<PropertyOutcome, HomError> {
    let mut out = PropertyOutcome::new("hkk", "pairs of arcs starting at the same point, <= 3 crossings, mu1 in {0,1}");
    for z in [Endpoint::P, Endpoint::Q] {
        let arcs = arcs_from(&[z], 3, &[0, 1]);
        let xs: Vec<ProjComplex> = arcs.iter().map(|a| arc_to_complex(alg, a)).collect();
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let (a, b) = (&arcs[i], &arcs[j]);
                let ab = oriented_from(a, b, z).expect("both start at z");
                let ba = oriented_from(b, a, z).expect("both start at z");
                let same = germ_left_of(&a.word, &b.word).is_none();
                if same {
                    let d1 = oracle.hom_dim(&xs[i], &xs[j], endpoint_index(a, b).unwrap())?;
                    let d2 = oracle.hom_dim(&xs[j], &xs[i], endpoint_index(b, a).unwrap())?;
                    out.check(ab && ba && d1 > 0 && d2 > 0, || format!("{a} / {b}: identical germs, dims {d1}, {d2}"));
                    continue;
                }
                if ab == ba {
                    out.check(false, || format!("{a} / {b} at {z}: orientation not antisymmetric"));
                    continue;
                }
                let (s, t, xs_s, xs_t) = if ab { (a, b, &xs[i], &xs[j]) } else { (b, a, &xs[j], &xs[i]) };
                let d = endpoint_index(s, t).unwrap();
                let c = complementary_endpoint_index(s, t).unwrap();
                let dim = oracle.hom_dim(xs_s, xs_t, d)?;
                out.check(d + c == 1 && dim > 0, || format!("{s} -> {t} at {z}: index {d}, dim {dim}"));
            }
        }
    }
    Ok(out)
}

/// Consecutive label triples of simplest sequences are pairwise distinct.
pub fn cancel_suite() -> PropertyOutcome {
    let mut out = PropertyOutcome::new("cancel", "all arcs with <= 10 crossings, both starts, mu1 = 0");
    for a in arcs_from(&[Endpoint::P, Endpoint::Q], 10, &[0]) {
        let l = a.simplest_labels();
        let ok = l.windows(3).all(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
        out.check(ok, || format!("{a}: labels {l:?}"));
    }
    out
}

/// Circled words up to `max_n` letters: a forced run of seven at the start, and the reverses.
fn circled_words(max_n: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for lap in [[1u8, 2, 3], [3, 2, 1]] {
        let mut layer: Vec<Vec<u8>> = vec![(0..7).map(|i| lap[i % 3]).collect()];
        for _ in 7..=max_n {
            for w in &layer {
                out.insert(w.clone());
                out.insert(w.iter().rev().copied().collect());
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    (1..=3u8).filter(|&l| Some(&l) != w.last()).map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
    }
    out
}

/// Unwinding a simple arc removes its circles and keeps endpoints, first and last index, relative
/// position and simplicity.
pub fn circle_suite() -> PropertyOutcome {
    let mut out = PropertyOutcome::new("circle", "simple arcs containing a circle, <= 22 crossings, both starts, mu1 = 0");
    for w in circled_words(22) {
        for s in [Endpoint::P, Endpoint::Q] {
            let a = GradedArc::new(s, w.clone(), 0).expect("generated words are valid");
            if !is_simple(&a) {
                continue;
            }
            match a.reduce_circles() {
                Err(e) => out.check(false, || e.to_string()),
                Ok(r) => {
                    let ok = !r.contains_circle()
                        && r.start == a.start
                        && r.end_point() == a.end_point()
                        && r.mu1 == a.mu1
                        && r.mu_last() == a.mu_last()
                        && (!a.is_closed() || r.relative_position() == a.relative_position())
                        && is_simple(&r);
                    out.check(ok, || format!("{a} reduces to {r}"));
                }
            }
        }
    }
    out
}

/// No simple circle-free arc shows all six unprimed or all six primed segment types.
pub fn four_suite() -> PropertyOutcome {
    let mut out = PropertyOutcome::new("four", "simple circle-free arcs with <= 12 crossings, both starts, mu1 = 0");
    for a in arcs_from(&[Endpoint::P, Endpoint::Q], 12, &[0]) {
        if a.contains_circle() || !is_simple(&a) {
            continue;
        }
        out.check(!a.has_all_six(false) && !a.has_all_six(true), || format!("{a}"));
    }
    out
}

/// X(shift(a, d)) = X(a)[d], structurally.
pub fn shift_suite(alg: &Arc<GentleAlgebra>) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("shift", "canonical arcs with <= 5 crossings, mu1 = 0, |d| <= 3");
    let arcs: BTreeSet<GradedArc> = arcs_from(&[Endpoint::P, Endpoint::Q], 5, &[0]).iter().map(GradedArc::canonical).collect();
    for a in &arcs {
        let x = arc_to_complex(alg, a);
        for d in -3..=3 {
            let y = arc_to_complex(alg, &a.shift(d));
            out.check(y == x.shift(d) && y.validate().is_ok(), || format!("{a} shifted by {d}"));
        }
    }
    out
}

/// Ten fixed complexes used to tell arc images apart.
pub fn probe_set(alg: &Arc<GentleAlgebra>) -> Vec<ProjComplex> {
    let mut v: Vec<ProjComplex> = (1..=3).map(|i| ProjComplex::stalk(alg.clone(), i, 0)).collect();
    for s in ["p:1,2,3@0", "p:1,3@0", "q:1,3@0", "p:2,1@0", "q:3,2@0", "p:1,2,1@0", "q:2,3,1@1"] {
        v.push(arc_to_complex(alg, &s.parse().expect("probe arcs parse")));
    }
    v
}

/// Shifts d at which Hom(X, Y[d]) can be nonzero.
fn shift_range(x: &ProjComplex, y: &ProjComplex) -> std::ops::RangeInclusive<i32> {
    match (x.min_degree(), x.max_degree(), y.min_degree(), y.max_degree()) {
        (Some(x0), Some(x1), Some(y0), Some(y1)) => (y0 - x1 - 1)..=(y1 - x0 + 1),
        _ => std::ops::RangeInclusive::new(1, 0),
    }
}

/// Hom tables in both directions against every probe.
pub fn probe_tables(oracle: &Oracle, probes: &[ProjComplex], x: &ProjComplex) -> Result<Vec<String>, HomError> {
    let mut out = Vec::with_capacity(2 * probes.len());
    for p in probes {
        out.push(oracle.hom_table(x, p, shift_range(x, p))?.compact());
        out.push(oracle.hom_table(p, x, shift_range(p, x))?.compact());
    }
    Ok(out)
}

/// X(a) and X(reverse(a)) have the same Hom tables against the probes.
pub fn reverse_suite(oracle: &Oracle, alg: &Arc<GentleAlgebra>) -> Result<PropertyOutcome, HomError> {
    let mut out = PropertyOutcome::new("reverse", "arcs with <= 4 crossings, both starts, mu1 = 0, against 10 probes");
    let probes = probe_set(alg);
    for a in arcs_from(&[Endpoint::P, Endpoint::Q], 4, &[0]) {
        let x = arc_to_complex(alg, &a);
        let y = arc_to_complex(alg, &a.reverse());
        let (tx, ty) = (probe_tables(oracle, &probes, &x)?, probe_tables(oracle, &probes, &y)?);
        for (k, (u, v)) in tx.iter().zip(&ty).enumerate() {
            out.check(u == v, || format!("{a}: probe table {k} differs: {u} vs {v}"));
        }
    }
    Ok(out)
}

/// Distinct canonical arcs give non-isomorphic complexes. Arcs are grouped by their probe
/// tables; inside a group, X(a) and X(b) are told apart directly, since an isomorphism would make
/// Hom(X(a), X(b)[d]) and Hom(X(a), X(a)[d]) agree for every d.
pub fn injectivity_suite(oracle: &Oracle, alg: &Arc<GentleAlgebra>) -> Result<PropertyOutcome, HomError> {
    let mut out = PropertyOutcome::new(
        "injectivity",
        "pairs of canonical arcs with <= 6 crossings, mu1 in [-1,1]; probe tables, then direct Hom tables",
    );
    let probes = probe_set(alg);
    let arcs: BTreeSet<GradedArc> =
        arcs_from(&[Endpoint::P, Endpoint::Q], 6, &[-1, 0, 1]).iter().map(GradedArc::canonical).collect();
    let mut groups: BTreeMap<Vec<String>, Vec<(GradedArc, ProjComplex)>> = BTreeMap::new();
    for a in arcs {
        let x = arc_to_complex(alg, &a);
        groups.entry(probe_tables(oracle, &probes, &x)?).or_default().push((a, x));
    }
    let total: u64 = groups.values().map(|g| g.len() as u64).sum();
    let mut in_groups = 0u64;
    for g in groups.values() {
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                in_groups += 1;
                let ((a, x), (b, y)) = (&g[i], &g[j]);
                let r = shift_range(x, y);
                let apart = oracle.hom_table(x, y, r.clone())? != oracle.hom_table(x, x, r.clone())?
                    || oracle.hom_table(y, x, r.clone())? != oracle.hom_table(y, y, r)?;
                out.check(apart, || format!("{a} and {b} are not told apart"));
            }
        }
    }
    // pairs in different groups are separated by the probes
    out.instances += total * (total - 1) / 2 - in_groups;
    Ok(out)
}

/// Every arc from p touching the start of `p:1,2,3@0` shows the endpoint morphism it should.
pub fn endpoint_suite(oracle: &Oracle, alg: &Arc<GentleAlgebra>) -> Result<PropertyOutcome, HomError> {
    use crate::bridge::{verify_endpoint_morphism, BridgeError};
    let mut out = PropertyOutcome::new("endpoint", "p:1,2,3@0 against arcs from p with <= 6 crossings, mu1 in [-2,2], both orders");
    let g = gamma();
    for a in arcs_from(&[Endpoint::P], 6, &[-2, -1, 0, 1, 2]) {
        for (s, t) in [(&g, &a), (&a, &g)] {
            match verify_endpoint_morphism(oracle, alg, s, t, Endpoint::P) {
                Ok(_) => out.check(true, String::new),
                Err(BridgeError::Hom(e)) => return Err(e),
                Err(e) => out.check(false, || e.to_string()),
            }
        }
    }
    Ok(out)
}

/// All suites except two-prime agreement, which needs the totals of the whole run.
pub fn run_all(oracle: &Oracle, alg: &Arc<GentleAlgebra>) -> Result<Vec<PropertyOutcome>, HomError> {
    Ok(vec![
        hkk_suite(oracle, alg)?,
        endpoint_suite(oracle, alg)?,
        cancel_suite(),
        circle_suite(),
        four_suite(),
        shift_suite(alg),
        reverse_suite(oracle, alg)?,
        injectivity_suite(oracle, alg)?,
    ])
}

/// Two-prime agreement over `evaluations` Hom computations with `disagreements` mismatches.
pub fn two_prime_outcome(evaluations: u64, disagreements: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("two-prime", "every Hom dimension computed in the run");
    out.instances = evaluations;
    if disagreements > 0 {
        out.fail(format!("{disagreements} dimensions differ between the two primes"));
    }
    out
}
