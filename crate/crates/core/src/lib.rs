//! Contact graphs of configurations of congruent integer cuboids.
//!
//! The crate covers the whole pipeline from integer box geometry to exact
//! chromatic numbers:
//!
//! * [`geometry`]: cuboids, orientation classes, the touch/collide predicates
//!   and the rescaling map between dimension triples.
//! * [`graph`]: contact graphs, maximum cliques and the common-point
//!   utility for pairwise intersecting boxes.
//! * [`chroma`]: proper-coloring checks, exact k-colorability (a CDCL solver
//!   over the direct encoding, cross-checked by DSATUR branch and bound) and
//!   chromatic numbers.
//! * [`bounds`]: the free-corner neighbor bound computed as an independence
//!   number.
//! * [`periodic`]: periodic colorings of the lattice, their verification,
//!   and the torus graph used to compute the least periodic palette.
//! * [`search`]: seeded configuration searches and criticality reduction.
//!
//! The crate is `no_std` and only needs `alloc`. Wall-clock budgets are
//! supplied by the caller through the [`Budget`] trait.

#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod bitset;
pub mod bounds;
pub mod budget;
pub mod chroma;
mod clique;
pub mod geometry;
pub mod graph;
pub mod periodic;
pub mod sat;
pub mod search;

pub use budget::{Budget, StepBudget, Unlimited};
pub use chroma::{chromatic_number, k_colorable, ChromaResult, Coloring, Decision, Engine, SolveOptions};
pub use geometry::{Configuration, Cuboid, DimTriple, Freedom, GeometryError};
pub use graph::ContactGraph;
