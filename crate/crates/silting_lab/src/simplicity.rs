//! Does an arc admit a drawing without interior self-intersections?
//!
//! Each segment of the arc is a chord of one quadrilateral. We search for orders of the
//! crossing points along a1, a2, a3 such that no two chords of the same face interleave.
//! Points are placed one crossing at a time, so a chord is tested as soon as both of its
//! ends exist; the relative order of already placed points never changes afterwards.

use crate::arc::{side_index, Face, GradedArc, BOUNDARY};

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Marked,
    Crossing(usize),
}

struct Search<'a> {
    arc: &'a GradedArc,
    /// `orders[l]`: crossings on a_l, in the order seen from Fq.
    orders: [Vec<usize>; 4],
    nodes: u64,
}

impl Search<'_> {
    fn key(&self, e: End, face: Face) -> (u8, i64) {
        match e {
            End::Marked => (side_index(BOUNDARY), 0),
            End::Crossing(i) => {
                let l = self.arc.word[i - 1];
                let r = self.orders[l as usize].iter().position(|&x| x == i).expect("placed") as i64;
                let r = if face == Face::Fq { r } else { -r };
                (side_index(l), r)
            }
        }
    }

    /// Ends of segment k (0..=n), from crossing k to crossing k+1.
    fn ends(&self, k: usize) -> (End, End) {
        let n = self.arc.n();
        let a = if k == 0 { End::Marked } else { End::Crossing(k) };
        let b = if k == n { End::Marked } else { End::Crossing(k + 1) };
        (a, b)
    }

    fn crosses(&self, k1: usize, k2: usize) -> bool {
        let face = self.arc.face_of_segment(k1);
        if face != self.arc.face_of_segment(k2) {
            return false;
        }
        let (a, b) = self.ends(k1);
        let (c, d) = self.ends(k2);
        let (a, b, c, d) = (self.key(a, face), self.key(b, face), self.key(c, face), self.key(d, face));
        if a == c || a == d || b == c || b == d {
            // only the marked point can be shared; chords meeting there do not cross
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let inside = |x| lo < x && x < hi;
        inside(c) != inside(d)
    }

    /// Segment k is complete; test it against every earlier complete segment.
    fn segment_ok(&self, k: usize) -> bool {
        (0..k).all(|j| !self.crosses(j, k))
    }

    fn place(&mut self, i: usize) -> bool {
        let n = self.arc.n();
        if i > n {
            return true;
        }
        self.nodes += 1;
        let l = self.arc.word[i - 1] as usize;
        for pos in 0..=self.orders[l].len() {
            self.orders[l].insert(pos, i);
            let ok = self.segment_ok(i - 1) && (i < n || self.segment_ok(n)) && self.place(i + 1);
            self.orders[l].remove(pos);
            if ok {
                return true;
            }
        }
        false
    }
}

/// True iff the arc has a representative without self-intersections away from its endpoints.
pub fn is_simple(arc: &GradedArc) -> bool {
    is_simple_counted(arc).0
}

/// Also returns the number of search nodes visited.
pub fn is_simple_counted(arc: &GradedArc) -> (bool, u64) {
    let mut s = Search { arc, orders: Default::default(), nodes: 0 };
    let ok = s.place(1);
    (ok, s.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: &str) -> GradedArc {
        s.parse().unwrap()
    }

    #[test]
    fn short_arcs() {
        assert!(is_simple(&arc("p:1@0")));
        assert!(is_simple(&arc("p:1,2,3@0")));
        assert!(is_simple(&arc("q:3,2,1@2")));
    }

    #[test]
    fn chord_through_a_side_blocks_the_marked_point() {
        // in Fq the chord a1-a3 separates a2 from the boundary side
        assert!(!is_simple(&arc("q:2,1,3@0")));
        assert!(!is_simple(&arc("q:1,3,2@0")));
    }

    #[test]
    fn simplicity_is_direction_independent() {
        for w in ["p:1,2,1@0", "q:1,3,2,1@0", "p:2,3,1,2,3@0", "q:1,2,3,1,2,3,1,2@0"] {
            let a = arc(w);
            assert_eq!(is_simple(&a), is_simple(&a.reverse()), "{w}");
        }
    }
}
