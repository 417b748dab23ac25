//! Generalized Schur operators on rooted planar binary trees.
//!
//! Trees are prefix-closed sets of words over `{1, 2}`. On the free
//! ℤ-module spanned by trees the crate provides the up operators `U_i`
//! (adding nodes right-strictly), `U'_i` (left-strictly) and the down
//! operators `D_i` (evacuating the top of the removal chain), which satisfy
//!
//! ```text
//! D(t) U(t') = 1/(1 - t t') U(t') D(t)
//! D(t) U'(t') = (1 + t t') U'(t') D(t)
//! ```
//!
//! Alongside the operators live the explicit path bijections behind these
//! relations, the labelling families they count, the quasi-symmetric
//! generating polynomials, and a growth-diagram RSK correspondence between
//! matrices and pairs of paths. Every identity can be checked exhaustively
//! on small trees through the `check_*` functions, which return a
//! [`Report`].

pub mod correspondence;
pub mod error;
pub mod graph;
pub mod labelling;
pub mod operators;
pub mod poly;
pub mod qsym;
pub mod report;
pub mod rsk;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Family, PairVariant, PathPair, UpFamily};
pub use labelling::{Labelling, LabellingKind, Path};
pub use operators::{LinComb, Operator, PolyLinComb};
pub use poly::Polynomial;
pub use report::Report;
pub use rsk::{GrowthDiagram, Matrix};
pub use tree::{enumerate_trees, Letter, Tree, Word};
