//! Bounded complexes of indecomposable projectives with path-labelled differentials.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{GentleAlgebra, Path, Vertex};
use crate::linalg::{rank_mod_p, FieldPrime};

/// Formal combination of paths with integer coefficients; zero coefficients are never stored.
pub type LinComb = BTreeMap<Path, i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d o d is nonzero starting from degree {degree} at row {row}, column {col}")]
    SquareNonzero { degree: i32, row: usize, col: usize },
    #[error("entry d {degree} {row} {col}: `{path}` does not run from the row vertex to the column vertex or is zero")]
    NotComposable { degree: i32, row: usize, col: usize, path: String },
    #[error("entry d {degree} {row} {col} is out of range")]
    OutOfRange { degree: i32, row: usize, col: usize },
    #[error("complexes live over different algebras")]
    MixedAlgebras,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjComplex {
    alg: Arc<GentleAlgebra>,
    /// Degree to summand vertices. No empty entries.
    terms: BTreeMap<i32, Vec<Vertex>>,
    /// `diffs[k][(row, col)]`: component from summand `col` of degree k to summand `row` of degree k+1,
    /// a combination of paths from the row vertex to the column vertex.
    diffs: BTreeMap<i32, BTreeMap<(usize, usize), LinComb>>,
}

impl ProjComplex {
    pub fn zero(alg: Arc<GentleAlgebra>) -> Self {
        ProjComplex { alg, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn stalk(alg: Arc<GentleAlgebra>, vertex: Vertex, degree: i32) -> Self {
        let mut c = Self::zero(alg);
        c.terms.insert(degree, vec![vertex]);
        c
    }

    /// Builds without validating; call [`validate`](Self::validate) afterwards.
    pub fn from_parts(
        alg: Arc<GentleAlgebra>,
        terms: BTreeMap<i32, Vec<Vertex>>,
        diffs: BTreeMap<i32, BTreeMap<(usize, usize), LinComb>>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let diffs = diffs
            .into_iter()
            .map(|(k, m)| {
                let m: BTreeMap<_, _> = m
                    .into_iter()
                    .map(|(rc, c)| (rc, c.into_iter().filter(|(_, x)| *x != 0).collect::<LinComb>()))
                    .filter(|(_, c)| !c.is_empty())
                    .collect();
                (k, m)
            })
            .filter(|(_, m)| !m.is_empty())
            .collect();
        ProjComplex { alg, terms, diffs }
    }

    pub fn algebra(&self) -> &Arc<GentleAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<Vertex>> {
        &self.terms
    }

    pub fn diffs(&self) -> &BTreeMap<i32, BTreeMap<(usize, usize), LinComb>> {
        &self.diffs
    }

    pub fn term(&self, k: i32) -> &[Vertex] {
        self.terms.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn entry(&self, k: i32, row: usize, col: usize) -> Option<&LinComb> {
        self.diffs.get(&k).and_then(|m| m.get(&(row, col)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `max - min + 1` over the support, 0 for the zero complex.
    pub fn width(&self) -> usize {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        }
    }

    pub fn summand_count(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let alg = &self.alg;
        for (&k, m) in &self.diffs {
            let src = self.term(k);
            let tgt = self.term(k + 1);
            for (&(row, col), comb) in m {
                if row >= tgt.len() || col >= src.len() {
                    return Err(ComplexError::OutOfRange { degree: k, row, col });
                }
                for p in comb.keys() {
                    if p.source != tgt[row] || p.target != src[col] || !alg.is_nonzero(p) {
                        return Err(ComplexError::NotComposable {
                            degree: k,
                            row,
                            col,
                            path: alg.path_name(p),
                        });
                    }
                }
            }
        }
        for &k in self.diffs.keys() {
            let (Some(d0), Some(d1)) = (self.diffs.get(&k), self.diffs.get(&(k + 1))) else {
                continue;
            };
            let mut prod: BTreeMap<(usize, usize), LinComb> = BTreeMap::new();
            for (&(r, m), g) in d1 {
                for (&(m2, c), f) in d0.range((m, 0)..=(m, usize::MAX)) {
                    debug_assert_eq!(m, m2);
                    let cell = prod.entry((r, c)).or_default();
                    for (u, a) in g {
                        for (v, b) in f {
                            if let Some(uv) = alg.compose(u, v).expect("validated entries compose") {
                                *cell.entry(uv).or_insert(0) += a * b;
                            }
                        }
                    }
                }
            }
            for ((row, col), cell) in prod {
                if cell.values().any(|&x| x != 0) {
                    return Err(ComplexError::SquareNonzero { degree: k, row, col });
                }
            }
        }
        Ok(())
    }

    /// `X[d]^k = X^{k+d}`, differential unchanged.
    pub fn shift(&self, d: i32) -> Self {
        ProjComplex {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(&k, v)| (k - d, v.clone())).collect(),
            diffs: self.diffs.iter().map(|(&k, m)| (k - d, m.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.alg != other.alg {
            return Err(ComplexError::MixedAlgebras);
        }
        let mut out = self.clone();
        let offsets: BTreeMap<i32, usize> = self.terms.iter().map(|(&k, v)| (k, v.len())).collect();
        let off = |k: i32| offsets.get(&k).copied().unwrap_or(0);
        for (&k, v) in &other.terms {
            out.terms.entry(k).or_default().extend_from_slice(v);
        }
        for (&k, m) in &other.diffs {
            let dst = out.diffs.entry(k).or_default();
            for (&(r, c), comb) in m {
                dst.insert((r + off(k + 1), c + off(k)), comb.clone());
            }
        }
        Ok(out)
    }

    /// Homology of the underlying complex of representations, per degree and vertex.
    /// Degrees with zero homology are omitted.
    pub fn homology_dims(&self, p: FieldPrime) -> BTreeMap<i32, Vec<usize>> {
        let alg = &self.alg;
        let verts = alg.quiver.vertices.clone();
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return BTreeMap::new();
        };
        // matrix of d^k at vertex v: columns basis of X^k at v, rows basis of X^{k+1} at v
        let dmat = |k: i32, v: Vertex| -> (usize, Vec<Vec<i64>>) {
            let basis_at = |deg: i32| -> Vec<(usize, Path)> {
                self.term(deg)
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &s)| alg.basis(s, v).iter().cloned().map(move |b| (i, b)))
                    .collect()
            };
            let cols = basis_at(k);
            let rows = basis_at(k + 1);
            let mut m = vec![vec![0i64; cols.len()]; rows.len()];
            for (ci, (s, b)) in cols.iter().enumerate() {
                for (ri, (t, rb)) in rows.iter().enumerate() {
                    if let Some(comb) = self.entry(k, *t, *s) {
                        for (u, a) in comb {
                            if alg.compose(u, b).expect("entry lands on summand") .as_ref() == Some(rb) {
                                m[ri][ci] += a;
                            }
                        }
                    }
                }
            }
            (cols.len(), m)
        };
        let mut out = BTreeMap::new();
        for k in lo..=hi {
            let mut dims = Vec::with_capacity(verts.len());
            for &v in &verts {
                let (n, out_m) = dmat(k, v);
                let (_, in_m) = dmat(k - 1, v);
                dims.push(n - rank_mod_p(&out_m, p) - rank_mod_p(&in_m, p));
            }
            if dims.iter().any(|&x| x != 0) {
                out.insert(k, dims);
            }
        }
        out
    }

    pub fn to_literal(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.terms {
            let names: Vec<String> = v.iter().map(|i| format!("P({i})")).collect();
            let _ = writeln!(s, "deg {k}: {}", names.join(","));
        }
        for (k, m) in &self.diffs {
            for ((r, c), comb) in m {
                let parts: Vec<String> =
                    comb.iter().map(|(p, a)| format!("{a}*{}", self.alg.path_name(p))).collect();
                let _ = writeln!(s, "d {k} {r} {c}: {}", parts.join(" + "));
            }
        }
        s
    }

    pub fn parse_literal(text: &str, alg: Arc<GentleAlgebra>) -> Result<Self, ComplexError> {
        let mut terms = BTreeMap::new();
        let mut diffs: BTreeMap<i32, BTreeMap<(usize, usize), LinComb>> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| ComplexError::Parse { line: n + 1, msg };
            let (head, body) = line.split_once(':').ok_or_else(|| perr("missing `:`".into()))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            match head.as_slice() {
                ["deg", k] => {
                    let k: i32 = k.parse().map_err(|_| perr(format!("bad degree `{k}`")))?;
                    let mut v = Vec::new();
                    for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                        let inner = tok
                            .strip_prefix("P(")
                            .and_then(|t| t.strip_suffix(')'))
                            .ok_or_else(|| perr(format!("expected P(i), got `{tok}`")))?;
                        let i: Vertex = inner.parse().map_err(|_| perr(format!("bad vertex `{inner}`")))?;
                        if !alg.quiver.has_vertex(i) {
                            return Err(perr(format!("unknown vertex {i}")));
                        }
                        v.push(i);
                    }
                    if terms.insert(k, v).is_some() {
                        return Err(perr(format!("degree {k} declared twice")));
                    }
                }
                ["d", k, r, c] => {
                    let num = |t: &str| t.parse::<i64>().map_err(|_| perr(format!("bad number `{t}`")));
                    let k = num(k)? as i32;
                    let (r, c) = (num(r)? as usize, num(c)? as usize);
                    let mut comb = LinComb::new();
                    for term in body.split(" + ").map(str::trim) {
                        let (a, p) = term
                            .split_once('*')
                            .ok_or_else(|| perr(format!("expected <coeff>*<path>, got `{term}`")))?;
                        let a = num(a.trim())?;
                        let p = alg.parse_path(p).map_err(|e| perr(e.to_string()))?;
                        *comb.entry(p).or_insert(0) += a;
                    }
                    if diffs.entry(k).or_default().insert((r, c), comb).is_some() {
                        return Err(perr(format!("entry d {k} {r} {c} given twice")));
                    }
                }
                _ => return Err(perr(format!("unrecognised line `{line}`"))),
            }
        }
        Ok(Self::from_parts(alg, terms, diffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lambda_fixed;

    fn lam() -> Arc<GentleAlgebra> {
        Arc::new(lambda_fixed())
    }

    const THREE_TERM: &str = "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n";

    #[test]
    fn three_term_complex_validates() {
        let x = ProjComplex::parse_literal(THREE_TERM, lam()).unwrap();
        x.validate().unwrap();
        assert_eq!(x.width(), 3);
        assert_eq!(x.to_literal(), THREE_TERM);
    }

    #[test]
    fn x_labels_also_square_to_zero() {
        // x1 x2 is a relation too
        let t = THREE_TERM.replace("y2", "x2").replace("y1", "x1");
        ProjComplex::parse_literal(&t, lam()).unwrap().validate().unwrap();
    }

    #[test]
    fn mixed_labels_do_not_square_to_zero() {
        let t = THREE_TERM.replace("y2", "x2");
        let err = ProjComplex::parse_literal(&t, lam()).unwrap().validate().unwrap_err();
        assert_eq!(err, ComplexError::SquareNonzero { degree: -2, row: 0, col: 0 });
    }

    #[test]
    fn wrong_direction_rejected() {
        let t = "deg 0: P(1)\ndeg 1: P(2)\nd 0 0 0: 1*y1\n";
        let err = ProjComplex::parse_literal(t, lam()).unwrap().validate().unwrap_err();
        assert!(matches!(err, ComplexError::NotComposable { .. }));
    }

    #[test]
    fn stalk_and_zero() {
        let s = ProjComplex::stalk(lam(), 1, 0);
        s.validate().unwrap();
        let p = FieldPrime::default();
        assert_eq!(s.homology_dims(p), BTreeMap::from([(0, vec![1, 2, 2])]));
        assert!(ProjComplex::zero(lam()).homology_dims(p).is_empty());
    }

    #[test]
    fn homology_of_three_term() {
        let x = ProjComplex::parse_literal(THREE_TERM, lam()).unwrap();
        for p in [FieldPrime::default(), FieldPrime::new(2).unwrap()] {
            assert_eq!(x.homology_dims(p), BTreeMap::from([(0, vec![1, 1, 1])]));
        }
    }

    #[test]
    fn shift_and_sum() {
        let x = ProjComplex::parse_literal(THREE_TERM, lam()).unwrap();
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).shift(-1), x);
        assert_eq!(x.shift(1).term(-3), &[3]);
        let z = ProjComplex::zero(lam());
        assert_eq!(x.direct_sum(&z).unwrap(), x);
        let s = x.direct_sum(&x.shift(-1)).unwrap();
        s.validate().unwrap();
        assert_eq!(s.width(), 4);
        assert_eq!(s.term(-1), &[2, 3]);
        assert_eq!(s.entry(-1, 1, 1).map(|c| c.len()), Some(1));
        let other = Arc::new(GentleAlgebra::parse("vertex 1\n").unwrap());
        assert_eq!(x.direct_sum(&ProjComplex::zero(other)), Err(ComplexError::MixedAlgebras));
    }

    #[test]
    fn literal_round_trip_with_coefficients() {
        let t = "deg 0: P(1),P(1)\ndeg 1: P(3)\nd 0 0 0: 2*x1,y2 + -1*y1,x2\nd 0 0 1: 1*x1,y2\n";
        let x = ProjComplex::parse_literal(t, lam()).unwrap();
        let printed = x.to_literal();
        assert_eq!(ProjComplex::parse_literal(&printed, lam()).unwrap(), x);
        assert_eq!(printed, t);
    }

    #[test]
    fn lazy_paths_in_literals() {
        let t = "deg 0: P(2)\ndeg 1: P(2)\nd 0 0 0: 1*e2\n";
        let x = ProjComplex::parse_literal(t, lam()).unwrap();
        x.validate().unwrap();
        assert_eq!(x.to_literal(), t);
        // contractible: no homology
        assert!(x.homology_dims(FieldPrime::default()).is_empty());
    }
}
