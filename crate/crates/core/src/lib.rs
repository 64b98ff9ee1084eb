//! Groupoids, their source-constant tangent bundles and algebroids, and the
//! tangent splitting of pregroupoids, in any category with a tangent
//! witness.
//!
//! Two backends are provided:
//!
//! * [`finite`]: finite sets with the diagonal endofunctor `TX = X x X`.
//!   Everything is exact and exhaustively checked, but only the
//!   projection and zero section exist, so the bracket is unavailable.
//! * [`jet`]: cartesian spaces with smooth maps evaluated on second-order
//!   jets, carrying the full structure needed for the bracket.
//!
//! Composition is written diagrammatically everywhere: `f.then(g)` applies
//! `f` first.

// residual checks are written `!(r <= tol)` so that NaN fails
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebroid;

pub mod error;

pub mod examples;

pub mod finite;

pub mod groupoid;

pub mod jet;

pub mod pregroupoid;

pub mod tangent;

pub use error::{Error, Result};
pub use tangent::{LawReport, SamplePlan};
