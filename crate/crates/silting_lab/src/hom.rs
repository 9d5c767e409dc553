//! Hom spaces in the homotopy category of projectives.
//!
//! dim Hom(X, Y[d]) = dim{chain maps of degree d} - rank{h -> dY h + h dX}.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{GentleAlgebra, Path};
use crate::complex::ProjComplex;
use crate::linalg::{rank_mod_p, FieldPrime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("complexes live over different algebras")]
    MixedAlgebras,
    #[error("dim Hom(X, Y[{d}]) is {a} over GF({p}) but {b} over GF({q})")]
    PrimeDisagreement { d: i32, p: u64, a: usize, q: u64, b: usize },
}

/// Key of one coordinate of a degree-`d` map: (degree k in X, summand of the target term, summand of X^k, path).
type Coord = (i32, usize, usize, Path);

fn coords(x: &ProjComplex, y: &ProjComplex, d: i32) -> Vec<Coord> {
    let alg = x.algebra();
    let mut out = Vec::new();
    for (&k, xs) in x.terms() {
        let ys = y.term(k + d);
        for (n, &vn) in ys.iter().enumerate() {
            for (s, &vs) in xs.iter().enumerate() {
                for p in alg.basis(vn, vs) {
                    out.push((k, n, s, p.clone()));
                }
            }
        }
    }
    out
}

fn index_of(cs: &[Coord]) -> BTreeMap<&Coord, usize> {
    cs.iter().enumerate().map(|(i, c)| (c, i)).collect()
}

fn compose(alg: &GentleAlgebra, u: &Path, v: &Path) -> Option<Path> {
    alg.compose(u, v).expect("labels compose by construction")
}

/// Integer matrices whose ranks give the Hom dimension: (number of map coordinates,
/// chain-condition matrix, null-homotopy matrix).
fn hom_system(x: &ProjComplex, y: &ProjComplex, d: i32) -> (usize, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let alg = x.algebra().clone();
    let fvars = coords(x, y, d);
    if fvars.is_empty() {
        return (0, Vec::new(), Vec::new());
    }
    let fidx = index_of(&fvars);

    // chain condition: f^{k+1} dX^k - dY^{k+d} f^k = 0, one row per (k, t, s, path)
    let mut rows: BTreeMap<Coord, Vec<(usize, i64)>> = BTreeMap::new();
    for (j, (k, n, s, u)) in fvars.iter().enumerate() {
        if let Some(dx) = x.diffs().get(&(k - 1)) {
            for (&(r, c), comb) in dx {
                if r != *s {
                    continue;
                }
                for (v, a) in comb {
                    if let Some(uv) = compose(&alg, u, v) {
                        rows.entry((k - 1, *n, c, uv)).or_default().push((j, *a));
                    }
                }
            }
        }
        if let Some(dy) = y.diffs().get(&(k + d)) {
            for (&(t, c), comb) in dy {
                if c != *n {
                    continue;
                }
                for (g, b) in comb {
                    if let Some(gu) = compose(&alg, g, u) {
                        rows.entry((*k, t, *s, gu)).or_default().push((j, -b));
                    }
                }
            }
        }
    }
    let eq = rows
        .into_values()
        .map(|entries| {
            let mut row = vec![0i64; fvars.len()];
            for (j, a) in entries {
                row[j] += a;
            }
            row
        })
        .collect();

    // image of homotopies h: X^k -> Y^{k+d-1}; one column per h coordinate
    let hvars = coords(x, y, d - 1);
    let mut cols = Vec::with_capacity(hvars.len());
    for (k, n, s, u) in &hvars {
        let mut col = vec![0i64; fvars.len()];
        if let Some(dy) = y.diffs().get(&(k + d - 1)) {
            for (&(t, c), comb) in dy {
                if c != *n {
                    continue;
                }
                for (g, b) in comb {
                    if let Some(gu) = compose(&alg, g, u) {
                        col[fidx[&(*k, t, *s, gu)]] += b;
                    }
                }
            }
        }
        if let Some(dx) = x.diffs().get(&(k - 1)) {
            for (&(r, c), comb) in dx {
                if r != *s {
                    continue;
                }
                for (v, a) in comb {
                    if let Some(uv) = compose(&alg, u, v) {
                        col[fidx[&(k - 1, *n, c, uv)]] += a;
                    }
                }
            }
        }
        cols.push(col);
    }
    (fvars.len(), eq, cols)
}

/// dim Hom(X, Y[d]) over GF(p) for each prime in `primes`.
pub fn hom_dims(
    x: &ProjComplex,
    y: &ProjComplex,
    d: i32,
    primes: &[FieldPrime],
) -> Result<Vec<usize>, HomError> {
    if x.algebra() != y.algebra() {
        return Err(HomError::MixedAlgebras);
    }
    let (n, eq, cols) = hom_system(x, y, d);
    Ok(primes
        .iter()
        .map(|&p| {
            if n == 0 {
                0
            } else {
                n - rank_mod_p(&eq, p) - rank_mod_p(&cols, p)
            }
        })
        .collect())
}

pub fn hom_dim(x: &ProjComplex, y: &ProjComplex, d: i32, p: FieldPrime) -> Result<usize, HomError> {
    Ok(hom_dims(x, y, d, &[p])?[0])
}

/// Largest d with Hom(X, Y[d]) possibly nonzero: beyond it no degree of X meets a degree of Y[d].
pub fn max_shift(x: &ProjComplex, y: &ProjComplex) -> i32 {
    match (x.min_degree(), y.max_degree()) {
        (Some(a), Some(b)) => b - a,
        _ => i32::MIN,
    }
}

/// Dimensions of Hom(X, Y[d]) over a shift range.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct HomTable(pub BTreeMap<i32, usize>);

impl HomTable {
    pub fn get(&self, d: i32) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    /// `d:dim` pairs for nonzero entries, comma separated.
    pub fn compact(&self) -> String {
        self.0
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(d, v)| format!("{d}:{v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Oracle that evaluates every dimension at two primes and rejects disagreement.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub prime: FieldPrime,
    pub second_prime: FieldPrime,
    evaluations: Arc<AtomicU64>,
    disagreements: Arc<AtomicU64>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(FieldPrime::default(), FieldPrime::new(crate::linalg::DEFAULT_SECOND_PRIME).unwrap())
    }
}

impl Oracle {
    pub fn new(prime: FieldPrime, second_prime: FieldPrime) -> Self {
        Oracle {
            prime,
            second_prime,
            evaluations: Arc::new(AtomicU64::new(0)),
            disagreements: Arc::new(AtomicU64::new(0)),
        }
    }

    /// Same primes, fresh counters.
    pub fn fresh(&self) -> Self {
        Oracle::new(self.prime, self.second_prime)
    }

    pub fn disagreements(&self) -> u64 {
        self.disagreements.load(Ordering::Relaxed)
    }

    /// Number of two-prime evaluations done so far by this oracle and its clones.
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn hom_dim(&self, x: &ProjComplex, y: &ProjComplex, d: i32) -> Result<usize, HomError> {
        let v = hom_dims(x, y, d, &[self.prime, self.second_prime])?;
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        if v[0] != v[1] {
            self.disagreements.fetch_add(1, Ordering::Relaxed);
            return Err(HomError::PrimeDisagreement {
                d,
                p: self.prime.get(),
                a: v[0],
                q: self.second_prime.get(),
                b: v[1],
            });
        }
        Ok(v[0])
    }

    pub fn hom_table(&self, x: &ProjComplex, y: &ProjComplex, ds: impl IntoIterator<Item = i32>) -> Result<HomTable, HomError> {
        let mut t = BTreeMap::new();
        for d in ds {
            t.insert(d, self.hom_dim(x, y, d)?);
        }
        Ok(HomTable(t))
    }

    /// Hom(X, X[d]) = 0 for 1 <= d <= 2 width(X). Past width(X) - 1 the supports of X and X[d]
    /// are disjoint, so the window is more than enough.
    pub fn is_presilting(&self, x: &ProjComplex) -> Result<bool, HomError> {
        let top = 2 * x.width() as i32;
        for d in 1..=top {
            if self.hom_dim(x, x, d)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// X ⊕ Y presilting. Mixed terms are checked up to the support bound [`max_shift`].
    pub fn pair_presilting(&self, x: &ProjComplex, y: &ProjComplex) -> Result<bool, HomError> {
        if !self.is_presilting(x)? || !self.is_presilting(y)? {
            return Ok(false);
        }
        self.mixed_vanish(x, y)
    }

    /// Hom(X, Y[d]) = Hom(Y, X[d]) = 0 for all d > 0.
    pub fn mixed_vanish(&self, x: &ProjComplex, y: &ProjComplex) -> Result<bool, HomError> {
        for (a, b) in [(x, y), (y, x)] {
            for d in 1..=max_shift(a, b) {
                if self.hom_dim(a, b, d)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lambda_fixed;

    fn lam() -> Arc<GentleAlgebra> {
        Arc::new(lambda_fixed())
    }

    fn gamma() -> ProjComplex {
        ProjComplex::parse_literal(
            "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n",
            lam(),
        )
        .unwrap()
    }

    #[test]
    fn stalk_homs() {
        let o = Oracle::default();
        let a = lam();
        let p1 = ProjComplex::stalk(a.clone(), 1, 0);
        let p2 = ProjComplex::stalk(a.clone(), 2, 0);
        let p3 = ProjComplex::stalk(a.clone(), 3, 0);
        assert_eq!(o.hom_dim(&p1, &p1, 0).unwrap(), 1);
        // paths 2 -> 3: x2, y2
        assert_eq!(o.hom_dim(&p3, &p2, 0).unwrap(), 2);
        assert_eq!(o.hom_dim(&p2, &p3, 0).unwrap(), 0);
        assert_eq!(o.hom_dim(&p3, &p1, 0).unwrap(), 2);
        assert_eq!(o.hom_dim(&p3, &p1, 1).unwrap(), 0);
        for i in 1..=3 {
            assert!(o.is_presilting(&ProjComplex::stalk(a.clone(), i, 4)).unwrap());
        }
        assert!(o.pair_presilting(&p1, &p3).unwrap());
    }

    #[test]
    fn three_term_complex_is_presilting() {
        let o = Oracle::default();
        let g = gamma();
        assert_eq!(o.hom_dim(&g, &g, 0).unwrap(), 1);
        for d in 1..=6 {
            assert_eq!(o.hom_dim(&g, &g, d).unwrap(), 0, "d={d}");
        }
        assert!(o.is_presilting(&g).unwrap());
        assert!(o.pair_presilting(&g, &g).unwrap());
        assert!(!o.pair_presilting(&g, &g.shift(-1)).unwrap());
    }

    #[test]
    fn shift_bracket_identity() {
        let o = Oracle::default();
        let g = gamma();
        let p2 = ProjComplex::stalk(lam(), 2, -1);
        for d in -4..=4 {
            for (x, y) in [(&g, &p2), (&p2, &g), (&g, &g)] {
                assert_eq!(o.hom_dim(x, &y.shift(d), 0).unwrap(), o.hom_dim(x, y, d).unwrap());
            }
        }
    }

    #[test]
    fn contractible_complex_has_no_homs() {
        let o = Oracle::default();
        let c = ProjComplex::parse_literal("deg 0: P(2)\ndeg 1: P(2)\nd 0 0 0: 1*e2\n", lam()).unwrap();
        for d in -2..=2 {
            assert_eq!(o.hom_dim(&c, &c, d).unwrap(), 0);
            assert_eq!(o.hom_dim(&gamma(), &c, d).unwrap(), 0);
        }
    }

    #[test]
    fn additivity() {
        let o = Oracle::default();
        let g = gamma();
        let s = ProjComplex::stalk(lam(), 3, -1);
        let sum = g.direct_sum(&s).unwrap();
        for d in -3..=3 {
            for z in [&g, &s] {
                let lhs = o.hom_dim(&sum, z, d).unwrap();
                assert_eq!(lhs, o.hom_dim(&g, z, d).unwrap() + o.hom_dim(&s, z, d).unwrap());
                let rhs = o.hom_dim(z, &sum, d).unwrap();
                assert_eq!(rhs, o.hom_dim(z, &g, d).unwrap() + o.hom_dim(z, &s, d).unwrap());
            }
        }
    }

    #[test]
    fn far_apart_supports() {
        let o = Oracle::default();
        let a = ProjComplex::stalk(lam(), 3, 0);
        let b = ProjComplex::stalk(lam(), 1, 10);
        // Hom(P3, P1[10]) lives at d = 10 although both widths are 1
        assert_eq!(o.hom_dim(&a, &b, 10).unwrap(), 2);
        assert_eq!(max_shift(&a, &b), 10);
        assert!(!o.pair_presilting(&a, &b).unwrap());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let other = Arc::new(GentleAlgebra::parse("vertex 1\n").unwrap());
        let x = ProjComplex::stalk(other, 1, 0);
        assert_eq!(hom_dim(&x, &gamma(), 0, FieldPrime::default()), Err(HomError::MixedAlgebras));
    }
}
