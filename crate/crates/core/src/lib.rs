//! Exact combinatorics of symplectic divisor plumbing graphs.
//!
//! A divisor germ is encoded as a [`PlumbingGraph`] (genus and
//! self-intersection per vertex, intersection counts per edge), optionally
//! augmented with symplectic areas. On top of that this crate provides:
//!
//! * exact linear algebra over the intersection form ([`linalg`]),
//! * the positive/negative GS criteria, the concave/convex flowchart and
//!   inflation path planning ([`gs`]),
//! * blow-up, blow-down, claw extension and dual blow-up, minimal models and
//!   a bounded equivalence search ([`moves`]),
//! * boundary fundamental group presentations and finiteness ([`group`]),
//! * Hirzebruch–Jung continued fractions, the (N1)–(P5) recognizers and the
//!   realizability tables ([`families`]),
//! * first Chern class data and the characterizing-number enumerations
//!   ([`chern`]).
//!
//! Everything is exact: integers are arbitrary precision where products can
//! grow, and every rational is a [`Rational`].

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod canon;
pub mod chern;
pub mod dsl;
mod error;
pub mod families;
mod graph;
pub mod group;
pub mod gs;
pub mod linalg;
pub mod moves;
mod polyhedron;
mod rational;

pub use crate::{canon::*, error::*, graph::*, rational::*};
