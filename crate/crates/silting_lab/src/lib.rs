//! Graded arcs on a torus with one boundary component and two marked points, their
//! string complexes over the gentle algebra 1 ⇉ 2 ⇉ 3, and an exact Hom oracle.

pub mod algebra;
pub mod complex;
pub mod hom;
pub mod linalg;
pub mod arc;
pub mod simplicity;
pub mod bridge;
pub mod fixtures;
pub mod properties;
pub mod search;
pub mod report;
