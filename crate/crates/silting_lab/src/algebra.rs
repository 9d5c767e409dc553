//! Bound quiver algebras with monomial relations.
//!
//! `P(i)` is spanned by the nonzero paths starting at `i`; a map `P(j) -> P(i)`
//! is a combination of paths `i -> j` acting by left concatenation.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

/// Paths longer than this mean the algebra is not finite dimensional.
const MAX_PATH_LEN: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("relation `{0}` is not a composable path of length >= 2")]
    BadRelation(String),
    #[error("paths {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("nonzero paths of length > {MAX_PATH_LEN} exist; algebra is not finite dimensional")]
    Infinite,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    /// Sorted by name, so arrow indices compare like names.
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(AlgebraError::DuplicateVertex(v));
            }
        }
        let mut names = BTreeSet::new();
        for a in &arrows {
            if !names.insert(a.name.clone()) {
                return Err(AlgebraError::DuplicateArrow(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if !seen.contains(&v) {
                    return Err(AlgebraError::UnknownVertex(v));
                }
            }
        }
        let mut vertices = vertices;
        vertices.sort_unstable();
        let mut arrows = arrows;
        arrows.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Quiver { vertices, arrows })
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.name.as_str().cmp(name)).ok()
    }
}

/// A path; `arrows` holds arrow indices. Empty means the lazy path `e_source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: Vertex) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_lazy()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleAlgebra {
    pub quiver: Quiver,
    pub relations: Vec<Vec<usize>>,
    /// `basis[a][b]`: nonzero paths from vertex index a to vertex index b.
    basis: Vec<Vec<Vec<Path>>>,
}

impl GentleAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        for r in &relations {
            let ok = r.len() >= 2
                && r.iter().all(|&a| a < quiver.arrows.len())
                && r.windows(2)
                    .all(|w| quiver.arrows[w[0]].target == quiver.arrows[w[1]].source);
            if !ok {
                let names: Vec<String> = r
                    .iter()
                    .map(|&a| quiver.arrows.get(a).map_or("?".into(), |x| x.name.clone()))
                    .collect();
                return Err(AlgebraError::BadRelation(names.join(",")));
            }
        }
        let mut relations = relations;
        relations.sort();
        relations.dedup();
        let nv = quiver.vertices.len();
        let mut alg = GentleAlgebra {
            quiver,
            relations,
            basis: vec![vec![Vec::new(); nv]; nv],
        };
        let mut frontier: Vec<Path> = alg.quiver.vertices.iter().map(|&v| Path::lazy(v)).collect();
        let mut all = Vec::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                if p.len() >= MAX_PATH_LEN {
                    return Err(AlgebraError::Infinite);
                }
                for (ai, a) in alg.quiver.arrows.iter().enumerate() {
                    if a.source != p.target {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let q = Path { source: p.source, target: a.target, arrows };
                    if alg.is_nonzero(&q) {
                        next.push(q);
                    }
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        for p in all {
            let a = alg.vindex(p.source).expect("declared vertex");
            let b = alg.vindex(p.target).expect("declared vertex");
            alg.basis[a][b].push(p);
        }
        for row in &mut alg.basis {
            for cell in row {
                cell.sort();
            }
        }
        Ok(alg)
    }

    fn vindex(&self, v: Vertex) -> Option<usize> {
        self.quiver.vertices.binary_search(&v).ok()
    }

    /// True iff no relation occurs as a contiguous factor.
    pub fn is_nonzero(&self, p: &Path) -> bool {
        !self
            .relations
            .iter()
            .any(|r| r.len() <= p.arrows.len() && p.arrows.windows(r.len()).any(|w| w == r.as_slice()))
    }

    pub fn path_basis(&self, i: Vertex, j: Vertex) -> Result<&[Path], AlgebraError> {
        let a = self.vindex(i).ok_or(AlgebraError::UnknownVertex(i))?;
        let b = self.vindex(j).ok_or(AlgebraError::UnknownVertex(j))?;
        Ok(&self.basis[a][b])
    }

    /// Panicking variant for callers that already validated vertices.
    pub fn basis(&self, i: Vertex, j: Vertex) -> &[Path] {
        self.path_basis(i, j).expect("vertex of this algebra")
    }

    /// `p` then `q`; `Ok(None)` is the zero marker.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Option<Path>, AlgebraError> {
        if p.target != q.source {
            return Err(AlgebraError::NotComposable(self.path_name(p), self.path_name(q)));
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        let r = Path { source: p.source, target: q.target, arrows };
        Ok(self.is_nonzero(&r).then_some(r))
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().flatten().map(Vec::len).sum()
    }

    pub fn arrow(&self, name: &str) -> Result<Path, AlgebraError> {
        let i = self
            .quiver
            .arrow_index(name)
            .ok_or_else(|| AlgebraError::UnknownArrow(name.to_string()))?;
        let a = &self.quiver.arrows[i];
        Ok(Path { source: a.source, target: a.target, arrows: vec![i] })
    }

    /// Path from arrow names, e.g. `["x1", "y2"]`.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, AlgebraError> {
        let mut it = names.iter();
        let first = it.next().ok_or_else(|| AlgebraError::UnknownArrow(String::new()))?;
        let mut p = self.arrow(first.as_ref())?;
        for n in it {
            let a = self.arrow(n.as_ref())?;
            if a.source != p.target {
                return Err(AlgebraError::NotComposable(self.path_name(&p), n.as_ref().to_string()));
            }
            p.arrows.push(a.arrows[0]);
            p.target = a.target;
        }
        Ok(p)
    }

    /// `e1`, `x1`, `x1,y2`.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_lazy() {
            return format!("e{}", p.source);
        }
        p.arrows
            .iter()
            .map(|&a| self.quiver.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`path_name`](Self::path_name).
    pub fn parse_path(&self, s: &str) -> Result<Path, AlgebraError> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix('e') {
            if let Ok(v) = v.parse::<Vertex>() {
                if !self.quiver.has_vertex(v) {
                    return Err(AlgebraError::UnknownVertex(v));
                }
                return Ok(Path::lazy(v));
            }
        }
        let names: Vec<&str> = s.split(',').map(str::trim).collect();
        self.path_from_names(&names)
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut rels: Vec<(usize, Vec<String>)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: &str| AlgebraError::Parse { line: n + 1, msg: msg.to_string() };
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("vertex") => {
                    let v = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| perr("expected `vertex <id>`"))?;
                    vertices.push(v);
                }
                Some("arrow") => {
                    let name = toks.next().ok_or_else(|| perr("missing arrow name"))?;
                    let src = toks.next().and_then(|t| t.parse().ok());
                    let tgt = toks.next().and_then(|t| t.parse().ok());
                    match (src, tgt) {
                        (Some(source), Some(target)) => arrows.push(Arrow {
                            name: name.to_string(),
                            source,
                            target,
                        }),
                        _ => return Err(perr("expected `arrow <name> <src> <tgt>`")),
                    }
                }
                Some("relation") => {
                    let rest: String = toks.collect::<Vec<_>>().join("");
                    rels.push((n + 1, rest.split(',').map(str::to_string).collect()));
                }
                _ => return Err(perr("unknown declaration")),
            }
        }
        let quiver = Quiver::new(vertices, arrows)?;
        let mut relations = Vec::new();
        for (line, names) in rels {
            let mut r = Vec::new();
            for name in &names {
                r.push(quiver.arrow_index(name).ok_or_else(|| AlgebraError::Parse {
                    line,
                    msg: format!("unknown arrow `{name}`"),
                })?);
            }
            relations.push(r);
        }
        GentleAlgebra::new(quiver, relations)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.quiver.vertices {
            s += &format!("vertex {v}\n");
        }
        for a in &self.quiver.arrows {
            s += &format!("arrow {} {} {}\n", a.name, a.source, a.target);
        }
        for r in &self.relations {
            let names: Vec<&str> = r.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect();
            s += &format!("relation {}\n", names.join(","));
        }
        s
    }
}

impl fmt::Display for GentleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The algebra: 1 ⇉ 2 ⇉ 3 with arrows x1, y1, x2, y2 and relations x1x2, y1y2.
pub fn lambda_fixed() -> GentleAlgebra {
    GentleAlgebra::parse(
        "vertex 1\nvertex 2\nvertex 3\n\
         arrow x1 1 2\narrow y1 1 2\narrow x2 2 3\narrow y2 2 3\n\
         relation x1,x2\nrelation y1,y2\n",
    )
    .expect("built-in algebra is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(a: &GentleAlgebra, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| a.path_name(p)).collect()
    }

    // Brute force: every arrow sequence up to length 4, filter by composability and relations.
    fn naive_count(a: &GentleAlgebra, i: Vertex, j: Vertex) -> usize {
        let arrows = &a.quiver.arrows;
        let mut count = usize::from(i == j);
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for s in &seqs {
                for k in 0..arrows.len() {
                    let mut t = s.clone();
                    t.push(k);
                    next.push(t);
                }
            }
            for s in &next {
                let comp = s.windows(2).all(|w| arrows[w[0]].target == arrows[w[1]].source);
                let bad = [("x1", "x2"), ("y1", "y2")].iter().any(|(u, v)| {
                    s.windows(2).any(|w| arrows[w[0]].name == *u && arrows[w[1]].name == *v)
                });
                if comp && !bad && arrows[s[0]].source == i && arrows[*s.last().unwrap()].target == j {
                    count += 1;
                }
            }
            seqs = next;
        }
        count
    }

    #[test]
    fn fixed_algebra_shape() {
        let a = lambda_fixed();
        assert_eq!(a.quiver.vertices, vec![1, 2, 3]);
        assert_eq!(a.quiver.arrows.len(), 4);
        let rels: Vec<String> = a
            .relations
            .iter()
            .map(|r| r.iter().map(|&x| a.quiver.arrows[x].name.clone()).collect::<Vec<_>>().join(""))
            .collect();
        assert_eq!(rels, vec!["x1x2", "y1y2"]);
    }

    #[test]
    fn length_two_paths() {
        let a = lambda_fixed();
        let mut two: Vec<String> = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                for p in a.basis(i, j) {
                    if p.len() == 2 {
                        two.push(a.path_name(p));
                    }
                }
            }
        }
        assert_eq!(two, vec!["x1,y2", "y1,x2"]);
    }

    #[test]
    fn paths_from_vertex_one() {
        let a = lambda_fixed();
        let mut all = Vec::new();
        for j in 1..=3 {
            all.extend(names(&a, a.basis(1, j)));
        }
        assert_eq!(all, vec!["e1", "x1", "y1", "x1,y2", "y1,x2"]);
    }

    #[test]
    fn basis_examples() {
        let a = lambda_fixed();
        assert_eq!(names(&a, a.basis(1, 1)), vec!["e1"]);
        assert_eq!(names(&a, a.basis(1, 3)), vec!["x1,y2", "y1,x2"]);
        assert!(a.basis(3, 1).is_empty());
        assert_eq!(a.path_basis(1, 9), Err(AlgebraError::UnknownVertex(9)));
    }

    #[test]
    fn basis_matches_naive_enumeration() {
        let a = lambda_fixed();
        let mut total = 0;
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(a.basis(i, j).len(), naive_count(&a, i, j), "{i}->{j}");
                total += naive_count(&a, i, j);
            }
        }
        assert_eq!(a.total_dim(), total);
        assert_eq!(total, 3 + 4 + 2);
    }

    #[test]
    fn compose_examples() {
        let a = lambda_fixed();
        let y1 = a.arrow("y1").unwrap();
        let y2 = a.arrow("y2").unwrap();
        let x1 = a.arrow("x1").unwrap();
        assert_eq!(a.compose(&y1, &y2).unwrap(), None);
        assert_eq!(a.compose(&Path::lazy(1), &x1).unwrap(), Some(x1.clone()));
        let p = a.compose(&x1, &y2).unwrap().unwrap();
        assert_eq!(a.path_name(&p), "x1,y2");
        assert!(matches!(a.compose(&y2, &x1), Err(AlgebraError::NotComposable(..))));
    }

    #[test]
    fn compose_is_associative() {
        let a = lambda_fixed();
        let mut all = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                all.extend(a.basis(i, j).iter().cloned());
            }
        }
        for p in &all {
            for q in all.iter().filter(|q| q.source == p.target) {
                for r in all.iter().filter(|r| r.source == q.target) {
                    let left = a.compose(p, q).unwrap().map(|pq| a.compose(&pq, r).unwrap());
                    let right = a.compose(q, r).unwrap().map(|qr| a.compose(p, &qr).unwrap());
                    assert_eq!(left.flatten(), right.flatten());
                }
                assert_eq!(a.compose(&Path::lazy(p.source), p).unwrap().as_ref(), Some(p));
                assert_eq!(a.compose(p, &Path::lazy(p.target)).unwrap().as_ref(), Some(p));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let a = lambda_fixed();
        let b = GentleAlgebra::parse(&a.to_text()).unwrap();
        assert_eq!(a, b);
        for i in 1..=3 {
            for j in 1..=3 {
                for p in a.basis(i, j) {
                    assert_eq!(&a.parse_path(&a.path_name(p)).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn rejects_cycles_without_relations() {
        let text = "vertex 1\narrow a 1 1\n";
        assert_eq!(GentleAlgebra::parse(text), Err(AlgebraError::Infinite));
        let ok = GentleAlgebra::parse("vertex 1\narrow a 1 1\nrelation a,a\n").unwrap();
        assert_eq!(ok.total_dim(), 2);
    }
}
