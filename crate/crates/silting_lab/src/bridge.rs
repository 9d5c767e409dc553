//! From graded arcs to complexes of projectives.
//!
//! Crossing i gives a summand P(l_i) in degree -μ_i. An interior segment joining a_j and a_k
//! gives a differential component from the summand of lower degree to the other one, labelled
//! by the arrow at that corner of its face, or by the length two path along the face when the
//! segment joins a1 and a3.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{GentleAlgebra, Path};
use crate::arc::{endpoint_index, oriented_from, ArcError, Endpoint, Face, GradedArc};
use crate::complex::{LinComb, ProjComplex};
use crate::hom::{HomError, Oracle};

/// Arrows at the corners of the two faces: the (a1,a2) and (a2,a3) corners of Fp and of Fq.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerArrowTable {
    pub fp12: String,
    pub fp23: String,
    pub fq12: String,
    pub fq23: String,
}

impl Default for CornerArrowTable {
    fn default() -> Self {
        CornerArrowTable { fp12: "x1".into(), fp23: "y2".into(), fq12: "y1".into(), fq23: "x2".into() }
    }
}

impl CornerArrowTable {
    /// The four tables with distinct arrows 1 -> 2 and distinct arrows 2 -> 3 in the two faces.
    pub fn candidates() -> Vec<Self> {
        let mut out = Vec::new();
        for (fp12, fq12) in [("x1", "y1"), ("y1", "x1")] {
            for (fp23, fq23) in [("x2", "y2"), ("y2", "x2")] {
                out.push(CornerArrowTable {
                    fp12: fp12.into(),
                    fp23: fp23.into(),
                    fq12: fq12.into(),
                    fq23: fq23.into(),
                });
            }
        }
        out
    }

    /// Path from the smaller to the larger label for a segment in `face`.
    pub fn label(&self, alg: &GentleAlgebra, face: Face, a: u8, b: u8) -> Path {
        let (lo, hi) = (a.min(b), a.max(b));
        let (c12, c23) = match face {
            Face::Fp => (&self.fp12, &self.fp23),
            Face::Fq => (&self.fq12, &self.fq23),
        };
        let names: Vec<&str> = match (lo, hi) {
            (1, 2) => vec![c12],
            (2, 3) => vec![c23],
            (1, 3) => vec![c12, c23],
            _ => panic!("labels {a}, {b} do not form a segment"),
        };
        alg.path_from_names(&names).expect("table arrows belong to the algebra")
    }

    /// Within-face composites are nonzero and cross-face composites are relations.
    pub fn is_consistent(&self, alg: &GentleAlgebra) -> bool {
        let p = |names: &[&str]| alg.path_from_names(names).map(|p| alg.is_nonzero(&p)).unwrap_or(false);
        p(&[&self.fp12, &self.fp23])
            && p(&[&self.fq12, &self.fq23])
            && !p(&[&self.fp12, &self.fq23])
            && !p(&[&self.fq12, &self.fp23])
    }
}

/// The string complex of an arc with the default corner table.
pub fn arc_to_complex(alg: &Arc<GentleAlgebra>, arc: &GradedArc) -> ProjComplex {
    arc_to_complex_with(alg, arc, &CornerArrowTable::default())
}

pub fn arc_to_complex_with(alg: &Arc<GentleAlgebra>, arc: &GradedArc, table: &CornerArrowTable) -> ProjComplex {
    let mu = arc.index_sequence();
    let mut terms: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    // (degree, position in that degree) of each crossing
    let mut slot = Vec::with_capacity(arc.n());
    for (i, &l) in arc.word.iter().enumerate() {
        let v = terms.entry(-mu[i]).or_default();
        slot.push((-mu[i], v.len()));
        v.push(l as u32);
    }
    let mut diffs: BTreeMap<i32, BTreeMap<(usize, usize), LinComb>> = BTreeMap::new();
    for j in 1..arc.n() {
        let (a, b) = (arc.word[j - 1], arc.word[j]);
        let path = table.label(alg, arc.face_of_segment(j), a, b);
        // the summand of lower degree is the source of the component
        let (src, tgt) = if slot[j].0 < slot[j - 1].0 { (slot[j], slot[j - 1]) } else { (slot[j - 1], slot[j]) };
        debug_assert_eq!(src.0 + 1, tgt.0);
        diffs
            .entry(src.0)
            .or_default()
            .insert((tgt.1, src.1), LinComb::from([(path, 1)]));
    }
    ProjComplex::from_parts(alg.clone(), terms, diffs)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("{a} and {b} share {z} oriented from the first, but dim Hom(X(a), X(b)[{d}]) = 0")]
    Assertion { a: String, b: String, z: Endpoint, d: i32 },
}

/// If z is oriented from a to b, the endpoint intersection shows up as a nonzero morphism
/// X(a) -> X(b)[d] at d = its index. Returns the index checked, or `None` if the orientation
/// runs the other way.
pub fn verify_endpoint_morphism(
    oracle: &Oracle,
    alg: &Arc<GentleAlgebra>,
    a: &GradedArc,
    b: &GradedArc,
    z: Endpoint,
) -> Result<Option<i32>, BridgeError> {
    let (a2, b2) = (a.starting_at(z)?, b.starting_at(z)?);
    if !oriented_from(&a2, &b2, z)? {
        return Ok(None);
    }
    let d = endpoint_index(&a2, &b2)?;
    let dim = oracle.hom_dim(&arc_to_complex(alg, a), &arc_to_complex(alg, b), d)?;
    if dim == 0 {
        return Err(BridgeError::Assertion { a: a.to_string(), b: b.to_string(), z, d });
    }
    Ok(Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lambda_fixed;

    fn lam() -> Arc<GentleAlgebra> {
        Arc::new(lambda_fixed())
    }

    fn arc(s: &str) -> GradedArc {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_complex() {
        let x = arc_to_complex(&lam(), &arc("p:1,2,3@0"));
        assert_eq!(
            x.to_literal(),
            "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n"
        );
        x.validate().unwrap();
    }

    #[test]
    fn table_is_unique() {
        let a = lam();
        let g = arc("p:1,2,3@0");
        let target = ProjComplex::parse_literal(
            "deg -2: P(3)\ndeg -1: P(2)\ndeg 0: P(1)\nd -2 0 0: 1*y2\nd -1 0 0: 1*y1\n",
            a.clone(),
        )
        .unwrap();
        let good: Vec<_> = CornerArrowTable::candidates()
            .into_iter()
            .filter(|t| t.is_consistent(&a) && arc_to_complex_with(&a, &g, t) == target)
            .collect();
        assert_eq!(good, vec![CornerArrowTable::default()]);
    }

    #[test]
    fn single_crossing_is_a_stalk() {
        for l in 1..=3u32 {
            let x = arc_to_complex(&lam(), &arc(&format!("p:{l}@0")));
            assert_eq!(x, ProjComplex::stalk(lam(), l, 0));
        }
    }

    #[test]
    fn a1_a3_segment_uses_the_face_composite() {
        let x = arc_to_complex(&lam(), &arc("p:1,3@0"));
        x.validate().unwrap();
        // second segment lies in Fq
        assert_eq!(x.to_literal(), "deg -1: P(3)\ndeg 0: P(1)\nd -1 0 0: 1*y1,x2\n");
        let y = arc_to_complex(&lam(), &arc("q:1,3@0"));
        assert_eq!(y.to_literal(), "deg -1: P(3)\ndeg 0: P(1)\nd -1 0 0: 1*x1,y2\n");
    }

    #[test]
    fn endpoint_morphism_examples() {
        let o = Oracle::default();
        let a = lam();
        let g = arc("p:1,2,3@0");
        assert_eq!(verify_endpoint_morphism(&o, &a, &g, &g, Endpoint::P).unwrap(), Some(0));
        let d = verify_endpoint_morphism(&o, &a, &arc("p:1@0"), &arc("p:1@-1"), Endpoint::P).unwrap();
        assert_eq!(d, Some(1));
    }
}
