//! Graded arcs on the marked torus, recorded by the arcs a1, a2, a3 they cross.
//!
//! The arc system cuts the surface into two quadrilaterals `Fp` and `Fq`. Read clockwise, each
//! has sides `∂, a3, a2, a1`, and the boundary side of `Fp` (resp. `Fq`) contains p (resp. q).
//! An arc is a start point, the labels of the arcs it crosses in order, and the index `mu1`
//! at its first crossing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("arc must cross at least one arc of the system")]
    EmptyWord,
    #[error("label {0} is not one of 1, 2, 3")]
    BadLabel(u8),
    #[error("consecutive crossings of the same arc a{0}")]
    RepeatedLabel(u8),
    #[error("cannot parse arc `{0}`: expected <p|q>:<l1>,...,<ln>@<mu1>")]
    Parse(String),
    #[error("arcs do not share the endpoint {0}")]
    EndpointsDiffer(Endpoint),
    #[error("arc {0} does not return to its start")]
    NotClosed(String),
    #[error("unwinding {0} does not terminate; the arc spirals around the boundary in both directions")]
    Unwinding(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Endpoint {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "q")]
    Q,
}

impl Endpoint {
    pub fn other(self) -> Self {
        match self {
            Endpoint::P => Endpoint::Q,
            Endpoint::Q => Endpoint::P,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::P => "p",
            Endpoint::Q => "q",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    Fp,
    Fq,
}

impl Face {
    pub fn containing(z: Endpoint) -> Self {
        match z {
            Endpoint::P => Face::Fp,
            Endpoint::Q => Face::Fq,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Face::Fp => Face::Fq,
            Face::Fq => Face::Fp,
        }
    }
}

/// Side label: 0 is the boundary side, 1..=3 the arcs.
pub type Side = u8;
pub const BOUNDARY: Side = 0;

/// Clockwise position of a side in either face: ∂, a3, a2, a1.
pub fn side_index(s: Side) -> u8 {
    if s == BOUNDARY {
        0
    } else {
        4 - s
    }
}

/// Entering a face through `entry`, the exits ordered left to right are the sides that follow
/// `entry` clockwise. Smaller rank is further left.
pub fn exit_rank(entry: Side, exit: Side) -> u8 {
    (side_index(exit) + 4 - side_index(entry)) % 4
}

/// Compares two germs leaving the same marked point, given as the label sequences read from it.
/// `Some(true)` if `a` is to the left of `b`, `None` if the germs coincide.
pub fn germ_left_of(a: &[u8], b: &[u8]) -> Option<bool> {
    let at = |w: &[u8], i: usize| w.get(i).copied().unwrap_or(BOUNDARY);
    let mut entry = BOUNDARY;
    for i in 0..=a.len().max(b.len()) {
        let (x, y) = (at(a, i), at(b, i));
        if x != y {
            return Some(exit_rank(entry, x) < exit_rank(entry, y));
        }
        if x == BOUNDARY {
            return None;
        }
        entry = x;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelPos {
    /// Starting segment to the left of the ending segment.
    #[serde(rename = "SLE")]
    Sle,
    #[serde(rename = "SRE")]
    Sre,
}

impl fmt::Display for RelPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelPos::Sle => "SLE",
            RelPos::Sre => "SRE",
        })
    }
}

/// Interior segment types (i)..(vi) and (i')..(vi').
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentType {
    /// 1..=6
    pub index: u8,
    pub primed: bool,
}

impl SegmentType {
    /// Unprimed types run 1→3, 3→2, 2→1; primed ones the other way.
    pub fn of(face: Face, from: u8, to: u8) -> Self {
        let (primed, a, b) = match (from, to) {
            (1, 3) | (3, 2) | (2, 1) => (false, from, to),
            _ => (true, to, from),
        };
        let index = match (face, a, b) {
            (Face::Fq, 1, 3) => 1,
            (Face::Fp, 3, 2) => 2,
            (Face::Fq, 2, 1) => 3,
            (Face::Fp, 1, 3) => 4,
            (Face::Fq, 3, 2) => 5,
            _ => 6,
        };
        SegmentType { index, primed }
    }
}

impl fmt::Display for SegmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ROMAN: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];
        let r = ROMAN[self.index as usize - 1];
        if self.primed {
            write!(f, "({r}')")
        } else {
            write!(f, "({r})")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedArc {
    pub start: Endpoint,
    pub word: Vec<u8>,
    pub mu1: i32,
}

impl GradedArc {
    pub fn new(start: Endpoint, word: Vec<u8>, mu1: i32) -> Result<Self, ArcError> {
        if word.is_empty() {
            return Err(ArcError::EmptyWord);
        }
        if let Some(&l) = word.iter().find(|&&l| !(1..=3).contains(&l)) {
            return Err(ArcError::BadLabel(l));
        }
        if let Some(w) = word.windows(2).find(|w| w[0] == w[1]) {
            return Err(ArcError::RepeatedLabel(w[0]));
        }
        Ok(GradedArc { start, word, mu1 })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn end_point(&self) -> Endpoint {
        if self.word.len() % 2 == 1 {
            self.start.other()
        } else {
            self.start
        }
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end_point()
    }

    /// Face of segment k, 0 <= k <= n; segment k runs from crossing k to crossing k+1.
    pub fn face_of_segment(&self, k: usize) -> Face {
        let f = Face::containing(self.start);
        if k.is_multiple_of(2) {
            f
        } else {
            f.other()
        }
    }

    /// μ_1..μ_n: +1 on an ascent, -1 on a descent.
    pub fn index_sequence(&self) -> Vec<i32> {
        let mut mu = Vec::with_capacity(self.word.len());
        let mut m = self.mu1;
        mu.push(m);
        for w in self.word.windows(2) {
            m += if w[0] < w[1] { 1 } else { -1 };
            mu.push(m);
        }
        mu
    }

    pub fn mu_last(&self) -> i32 {
        *self.index_sequence().last().expect("nonempty word")
    }

    pub fn reverse(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        GradedArc { start: self.end_point(), word, mu1: self.mu_last() }
    }

    pub fn shift(&self, d: i32) -> Self {
        GradedArc { mu1: self.mu1 + d, ..self.clone() }
    }

    /// Smaller of the arc and its reverse under (start, word, mu1).
    pub fn canonical(&self) -> Self {
        let r = self.reverse();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.reverse() >= *self
    }

    /// Same underlying arc as the presilting arc `p:1,2,3`, any grading.
    pub fn is_gamma(&self) -> bool {
        let c = self.canonical();
        c.start == Endpoint::P && c.word == [1, 2, 3]
    }

    /// Labels read from the marked point z: the word, or its reverse if the arc only ends at z.
    pub fn germ_at(&self, z: Endpoint) -> Result<Vec<u8>, ArcError> {
        if self.start == z {
            Ok(self.word.clone())
        } else if self.end_point() == z {
            Ok(self.word.iter().rev().copied().collect())
        } else {
            Err(ArcError::EndpointsDiffer(z))
        }
    }

    /// The same arc read from z.
    pub fn starting_at(&self, z: Endpoint) -> Result<Self, ArcError> {
        if self.start == z {
            Ok(self.clone())
        } else if self.end_point() == z {
            Ok(self.reverse())
        } else {
            Err(ArcError::EndpointsDiffer(z))
        }
    }

    /// Numerator a of the circle number a/6 from the start.
    pub fn circle_number(&self) -> i32 {
        circle_numerator(&self.word)
    }

    pub fn circle_number_rev(&self) -> i32 {
        let w: Vec<u8> = self.word.iter().rev().copied().collect();
        circle_numerator(&w)
    }

    pub fn contains_circle(&self) -> bool {
        self.circle_number().abs().max(self.circle_number_rev().abs()) > 6
    }

    /// Unwinds boundary laps until no circle is left. One step moves both endpoints a lap around
    /// the boundary: the word becomes `L w rev(L)` with cancelling pairs removed, where L is a lap
    /// `3,2,1,3,2,1` (or `1,2,3,1,2,3`), and the first index is kept.
    pub fn reduce_circles(&self) -> Result<Self, ArcError> {
        let mut cur = self.clone();
        loop {
            let (c, cr) = (cur.circle_number(), cur.circle_number_rev());
            let size = c.abs().max(cr.abs());
            if size <= 6 {
                return Ok(cur);
            }
            let lead = if c.abs() >= cr.abs() { c } else { cr };
            let lap: [u8; 6] = if lead > 0 { [3, 2, 1, 3, 2, 1] } else { [1, 2, 3, 1, 2, 3] };
            let mut w: Vec<u8> = lap.to_vec();
            w.extend_from_slice(&cur.word);
            w.extend(lap.iter().rev());
            let w = cancel_pairs(&w);
            if w.is_empty() {
                return Err(ArcError::Unwinding(self.to_string()));
            }
            let next = GradedArc { start: cur.start, word: w, mu1: cur.mu1 };
            if next.circle_number().abs().max(next.circle_number_rev().abs()) >= size {
                return Err(ArcError::Unwinding(self.to_string()));
            }
            cur = next;
        }
    }

    /// Shortest admissible sequence 0 = i_1 < ... < i_t = n, the lexicographically first among
    /// the shortest. A step i -> j is admissible when j - i is odd, l_{i+1} = l_j and
    /// μ_{i+1} = μ_j; a shortest one has no admissible proper subsequence.
    pub fn simplest_sequence(&self) -> Vec<usize> {
        let n = self.n();
        let mu = self.index_sequence();
        // 1-based accessors
        let l = |i: usize| self.word[i - 1];
        let m = |i: usize| mu[i - 1];
        let step = |i: usize, j: usize| (j - i) % 2 == 1 && l(i + 1) == l(j) && m(i + 1) == m(j);
        let mut dist = vec![usize::MAX; n + 1];
        dist[n] = 0;
        for i in (0..n).rev() {
            dist[i] = ((i + 1)..=n)
                .filter(|&j| step(i, j) && dist[j] != usize::MAX)
                .map(|j| dist[j] + 1)
                .min()
                .expect("i -> i+1 is always admissible");
        }
        let mut seq = vec![0];
        let mut i = 0;
        while i < n {
            i = ((i + 1)..=n)
                .find(|&j| step(i, j) && dist[j] + 1 == dist[i])
                .expect("distance decreases along a shortest path");
            seq.push(i);
        }
        seq
    }

    /// (l_{i_2}, ..., l_{i_t}) for the simplest sequence.
    pub fn simplest_labels(&self) -> Vec<u8> {
        self.simplest_sequence()[1..].iter().map(|&i| self.word[i - 1]).collect()
    }

    /// For an arc returning to its start: is the starting segment left of the ending one?
    pub fn relative_position(&self) -> Result<RelPos, ArcError> {
        if !self.is_closed() {
            return Err(ArcError::NotClosed(self.to_string()));
        }
        let back: Vec<u8> = self.word.iter().rev().copied().collect();
        match germ_left_of(&self.word, &back) {
            Some(true) => Ok(RelPos::Sle),
            Some(false) => Ok(RelPos::Sre),
            // a palindromic word would have to cross itself at its middle segment
            None => unreachable!("adjacent labels differ, so a word never equals its reverse"),
        }
    }

    /// Types of the interior segments 1..n-1.
    pub fn segment_types(&self) -> Vec<SegmentType> {
        (1..self.n())
            .map(|j| SegmentType::of(self.face_of_segment(j), self.word[j - 1], self.word[j]))
            .collect()
    }

    pub fn has_all_six(&self, primed: bool) -> bool {
        let types = self.segment_types();
        (1..=6).all(|index| types.contains(&SegmentType { index, primed }))
    }
}

fn circle_numerator(w: &[u8]) -> i32 {
    // longest prefix with l_i ≡ f(i) mod 3, i counted from 1
    let run = |f: fn(i64) -> i64| {
        w.iter()
            .enumerate()
            .take_while(|&(i, &l)| (l as i64 - f(i as i64 + 1)).rem_euclid(3) == 0)
            .count() as i32
    };
    match w.first() {
        Some(1) => run(|i| i),
        Some(3) => -run(|i| 4 - i),
        _ => 0,
    }
}

/// Removes adjacent equal letters, repeatedly.
fn cancel_pairs(w: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Is the shared endpoint z oriented from `a` to `b`, that is, is a's germ at z to the left of b's?
/// Identical germs count as oriented both ways. An arc with both ends at z contributes its starting germ.
pub fn oriented_from(a: &GradedArc, b: &GradedArc, z: Endpoint) -> Result<bool, ArcError> {
    let (ga, gb) = (a.germ_at(z)?, b.germ_at(z)?);
    Ok(germ_left_of(&ga, &gb).unwrap_or(true))
}

/// Index of the oriented endpoint intersection from `src` to `dst`, both starting at the same point.
pub fn endpoint_index(src: &GradedArc, dst: &GradedArc) -> Result<i32, ArcError> {
    if src.start != dst.start {
        return Err(ArcError::EndpointsDiffer(src.start));
    }
    Ok(src.mu1 - dst.mu1)
}

/// Index of the same endpoint taken in the other order; the two add up to 1.
pub fn complementary_endpoint_index(src: &GradedArc, dst: &GradedArc) -> Result<i32, ArcError> {
    Ok(1 - endpoint_index(src, dst)?)
}

impl fmt::Display for GradedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(u8::to_string).collect();
        write!(f, "{}:{}@{}", self.start, w.join(","), self.mu1)
    }
}

impl FromStr for GradedArc {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArcError::Parse(s.to_string());
        let (start, rest) = s.split_once(':').ok_or_else(bad)?;
        let start = match start {
            "p" => Endpoint::P,
            "q" => Endpoint::Q,
            _ => return Err(bad()),
        };
        let (word, mu) = rest.split_once('@').ok_or_else(bad)?;
        let word = word
            .split(',')
            .map(|t| match t {
                "1" => Ok(1),
                "2" => Ok(2),
                "3" => Ok(3),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if mu.starts_with('+') || mu.is_empty() {
            return Err(bad());
        }
        let mu1: i32 = mu.parse().map_err(|_| bad())?;
        let arc = GradedArc::new(start, word, mu1)?;
        // bit-exact grammar: reject non-canonical spellings such as `-0` or `007`
        if arc.to_string() != s {
            return Err(bad());
        }
        Ok(arc)
    }
}

impl Serialize for GradedArc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GradedArc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arc(s: &str) -> GradedArc {
        s.parse().unwrap()
    }

    #[test]
    fn grammar() {
        let g = arc("p:1,2,3@0");
        assert_eq!(g, GradedArc::new(Endpoint::P, vec![1, 2, 3], 0).unwrap());
        assert_eq!(g.to_string(), "p:1,2,3@0");
        assert_eq!(arc("q:2@-5").mu1, -5);
        for bad in ["p:1,1@0", "r:1@0", "p:@0", "p:1,2", "p:1,4@0", "p:1@+1", "p:1@-0", "p:1@01", "p: 1@0"] {
            assert!(bad.parse::<GradedArc>().is_err(), "{bad}");
        }
        assert_eq!(GradedArc::new(Endpoint::P, vec![], 0), Err(ArcError::EmptyWord));
        assert_eq!(GradedArc::new(Endpoint::P, vec![2, 2], 0), Err(ArcError::RepeatedLabel(2)));
    }

    #[test]
    fn end_points() {
        assert_eq!(arc("p:1,2,3@0").end_point(), Endpoint::Q);
        assert_eq!(arc("p:1,2@0").end_point(), Endpoint::P);
        assert_eq!(arc("q:2@0").end_point(), Endpoint::P);
    }

    #[test]
    fn index_sequences() {
        assert_eq!(arc("p:1,2,3@0").index_sequence(), vec![0, 1, 2]);
        assert_eq!(arc("p:2@5").index_sequence(), vec![5]);
        assert_eq!(arc("p:3,2,1@2").index_sequence(), vec![2, 1, 0]);
    }

    #[test]
    fn reverse_and_canonical() {
        let g = arc("p:1,2,3@0");
        assert_eq!(g.reverse(), arc("q:3,2,1@2"));
        assert_eq!(g.reverse().reverse(), g);
        assert_eq!(g.canonical(), g);
        assert_eq!(g.reverse().canonical(), g);
        assert!(g.is_gamma() && g.reverse().is_gamma() && g.shift(4).is_gamma());
        assert!(!arc("p:1,2@0").is_gamma());
        assert!(!arc("p:3,2,1@0").is_gamma());
        assert_eq!(g.shift(0), g);
        assert_eq!(g.shift(3).shift(-3), g);
    }

    #[test]
    fn endpoint_indices() {
        let g = arc("p:1,2,3@0");
        assert_eq!(endpoint_index(&g, &g), Ok(0));
        assert_eq!(endpoint_index(&g, &arc("p:1@1")), Ok(-1));
        assert_eq!(endpoint_index(&g, &arc("q:1@1")), Err(ArcError::EndpointsDiffer(Endpoint::P)));
    }

    #[test]
    fn germ_order() {
        // leaving the boundary, a3 is leftmost and a1 rightmost
        assert_eq!(germ_left_of(&[3], &[2]), Some(true));
        assert_eq!(germ_left_of(&[2], &[1]), Some(true));
        assert_eq!(germ_left_of(&[1, 2], &[1, 2]), None);
        // p:1,2,3 is the rightmost germ at p and the leftmost at q
        let g = arc("p:1,2,3@0");
        for s in ["p:1@0", "p:2,1,3@0", "p:1,2,1@0", "p:1,3,1@0", "p:1,2,3,1,2@0"] {
            let s = arc(s);
            assert!(oriented_from(&s, &g, Endpoint::P).unwrap(), "{s}");
            assert!(!oriented_from(&g, &s, Endpoint::P).unwrap(), "{s}");
        }
        for s in ["q:1@0", "q:3,1@0", "q:3,2,3@0", "q:3,2,1,2,1@0"] {
            let s = arc(s);
            assert!(oriented_from(&g, &s, Endpoint::Q).unwrap(), "{s}");
        }
        assert!(oriented_from(&g, &arc("q:1,2@0"), Endpoint::P).is_err());
    }

    #[test]
    fn circle_numbers() {
        assert_eq!(arc("p:2,1,2@0").circle_number(), 0);
        assert_eq!(arc("p:1,2,3@0").circle_number(), 3);
        assert_eq!(arc("p:3,2,1@0").circle_number(), -3);
        assert_eq!(arc("p:1,2,3,1,2,3,1@0").circle_number(), 7);
        assert_eq!(arc("p:1,2,3,1,2,3,1@0").circle_number_rev(), 1);
        assert!(!arc("p:1,2,3@0").contains_circle());
        assert!(arc("p:1,2,3,1,2,3,1@0").contains_circle());
        assert!(arc("q:3,2,1,3,2,1,3@0").contains_circle());
        assert_eq!(arc("q:3,2,1,3,2,1,3@0").circle_number(), -7);
    }

    #[test]
    fn unwinding() {
        let a = arc("p:1,2,3,1,2,3,1@0");
        let r = a.reduce_circles().unwrap();
        assert_eq!(r, arc("p:2,3,1,2,3@0"));
        assert_eq!((r.mu1, r.mu_last()), (a.mu1, a.mu_last()));
        let plain = arc("q:2,1,3@4");
        assert_eq!(plain.reduce_circles().unwrap(), plain);
        assert!(matches!(arc("p:1,2,3,1,2,3,1,3@0").reduce_circles(), Err(ArcError::Unwinding(_))));
    }

    #[test]
    fn simplest_sequences() {
        assert_eq!(arc("p:1,2,3@0").simplest_sequence(), vec![0, 1, 2, 3]);
        assert_eq!(arc("q:2@7").simplest_sequence(), vec![0, 1]);
        // 0 -> 3 is admissible: l_1 = l_3 = 1 and μ_1 = μ_3
        assert_eq!(arc("p:1,2,1,3@0").simplest_sequence(), vec![0, 3, 4]);
        assert_eq!(arc("p:1,2,1,3@0").simplest_labels(), vec![1, 3]);
    }

    #[test]
    fn relative_positions() {
        assert_eq!(arc("q:2,1@0").relative_position(), Ok(RelPos::Sle));
        assert_eq!(arc("q:3,1@0").relative_position(), Ok(RelPos::Sle));
        assert_eq!(arc("q:1,2@0").relative_position(), Ok(RelPos::Sre));
        assert!(matches!(arc("p:1,2,3@0").relative_position(), Err(ArcError::NotClosed(_))));
    }

    #[test]
    fn segment_type_table() {
        let g = arc("p:1,2,3@0");
        let t: Vec<String> = g.segment_types().iter().map(ToString::to_string).collect();
        assert_eq!(t, vec!["(iii')", "(ii')"]);
        let mut seen = std::collections::BTreeSet::new();
        for face in [Face::Fp, Face::Fq] {
            for (a, b) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
                seen.insert(SegmentType::of(face, a, b));
            }
        }
        assert_eq!(seen.len(), 12);
        assert!(arc("q:1,2,3,1,2,3,1@0").has_all_six(true));
    }

    fn any_arc(max_len: usize) -> impl Strategy<Value = GradedArc> {
        (any::<bool>(), 1u8..=3, prop::collection::vec(any::<bool>(), 0..max_len), -8i32..=8).prop_map(
            |(s, first, steps, mu1)| {
                let mut w = vec![first];
                for up in steps {
                    let last = *w.last().unwrap();
                    let others: Vec<u8> = (1..=3).filter(|&l| l != last).collect();
                    w.push(others[usize::from(up)]);
                }
                let start = if s { Endpoint::P } else { Endpoint::Q };
                GradedArc::new(start, w, mu1).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn telescoping(a in any_arc(20)) {
            let asc = a.word.windows(2).filter(|w| w[0] < w[1]).count() as i32;
            let desc = a.word.windows(2).filter(|w| w[0] > w[1]).count() as i32;
            prop_assert_eq!(a.mu_last() - a.mu1, asc - desc);
        }

        #[test]
        fn reverse_is_an_involution(a in any_arc(20)) {
            prop_assert_eq!(a.reverse().reverse(), a.clone());
            prop_assert_eq!(a.reverse().canonical(), a.canonical());
            prop_assert_eq!(a.canonical().canonical(), a.canonical());
            let mut idx = a.index_sequence();
            idx.reverse();
            prop_assert_eq!(a.reverse().index_sequence(), idx);
        }

        #[test]
        fn parse_round_trip(a in any_arc(20)) {
            prop_assert_eq!(a.to_string().parse::<GradedArc>().unwrap(), a);
        }

        #[test]
        fn faces_alternate(a in any_arc(20)) {
            for k in 0..=a.n() {
                let fp = a.face_of_segment(k) == Face::Fp;
                prop_assert_eq!(fp, (a.start == Endpoint::P) != (k % 2 == 1));
            }
            prop_assert_eq!(Face::containing(a.end_point()), a.face_of_segment(a.n()));
        }

        #[test]
        fn reversal_swaps_relative_position(a in any_arc(20)) {
            if a.is_closed() {
                let r = a.relative_position().unwrap();
                let s = a.reverse().relative_position().unwrap();
                prop_assert_ne!(r, s);
            }
        }

        #[test]
        fn germs_are_totally_ordered(a in any_arc(10), b in any_arc(10)) {
            let z = a.start;
            if b.germ_at(z).is_ok() {
                let ab = oriented_from(&a, &b, z).unwrap();
                let ba = oriented_from(&b, &a, z).unwrap();
                let same = germ_left_of(&a.germ_at(z).unwrap(), &b.germ_at(z).unwrap()).is_none();
                prop_assert!(same || ab != ba);
            }
        }

        #[test]
        fn simplest_sequences_are_admissible(a in any_arc(20)) {
            let s = a.simplest_sequence();
            let mu = a.index_sequence();
            prop_assert_eq!(s[0], 0);
            prop_assert_eq!(*s.last().unwrap(), a.n());
            for w in s.windows(2) {
                let (i, j) = (w[0], w[1]);
                prop_assert!(i < j && (j - i) % 2 == 1);
                prop_assert_eq!(a.word[i], a.word[j - 1]);
                prop_assert_eq!(mu[i], mu[j - 1]);
            }
            let l = a.simplest_labels();
            for t in l.windows(3) {
                prop_assert!(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
            }
        }
    }
}
