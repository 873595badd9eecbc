//! Weak Lefschetz property checks for Artinian monomial algebras, with a
//! focus on the algebras `A(G)` of graphs: variable squares plus the edge
//! ideal. Ranks are exact over the rationals.
//!
//! * [`graph`]: paths, complete graphs, lollipops, custom edge lists.
//! * [`indpoly`]: independence polynomials, unimodality and modes.
//! * [`algebra`]: monomial bases, Hilbert series, multiplication matrices,
//!   rank engines.
//! * [`tensor`]: `k[u]/(u)^2 ⊗ A` and its block matrices.
//! * [`lefschetz`]: WLP reports and the path and lollipop classifications.
//! * [`cli`]: the `wlp` command line.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod graph;
pub mod indpoly;
pub mod lefschetz;
pub mod tensor;

pub use error::{Error, Result};
