//! Edge-ideal invariants of corona product graphs.
//!
//! Two independent routes to the same numbers:
//!
//! * [`formula`] evaluates closed forms for depth, Stanley depth,
//!   regularity, projective dimension, Krull dimension and the
//!   Cohen–Macaulay property of `S/I(X ⊙ H)` when the spine `X` is a path,
//!   cycle, complete graph, star or complete bipartite graph;
//! * [`oracle`] computes the same invariants from scratch on small graphs:
//!   graded Betti numbers through Hochster's formula on the independence
//!   complex, Krull dimension as the independence number, and Stanley depth
//!   by exhaustive interval-partition search.

pub mod combinatorics;
pub mod dsl;
pub mod error;
pub mod formula;
pub mod graph;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{CoronaLabeling, Graph, GraphSpec};
pub use linalg::{Characteristic, EliminationScalar, Fp};

/// Exact integers for characteristic-zero elimination.
pub type Integer = num_bigint::BigInt;
/// Exact rationals; the field-based characteristic-zero route.
pub type Rational = num_rational::BigRational;
/// The two-element field.
pub type Gf2 = Fp<2>;
/// A word-sized prime field.
pub type Gf65521 = Fp<65521>;
