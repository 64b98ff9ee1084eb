//! Groupoids `G => M` with their source-constant tangent bundles, the left
//! translation `mu^s` of source-constant vectors, and the bijection between
//! sections of `pi^s_M : T^s_M G -> M` and left-invariant fields.
//!
//! Conventions: composition `mu(g, h)` is defined when `t(g) = s(h)`, and
//! the invariance square is typed over `G x_{t, pi^s} T^sG`, the same
//! pullback on which `mu^s` lives. Right-invariant, target-constant
//! versions are obtained by passing to the opposite groupoid.

pub mod finite;
pub mod smooth;

pub use finite::{BijectionCount, FiniteGroupoid};
pub use smooth::{SmoothGroupoid, SmoothGroupoidSpec};

/// A section `v : M -> T^s_M G` of `pi^s_M`.
#[derive(Debug, Clone)]
pub struct SectionOfBase<M>(pub M);

/// A section `X : G -> T^sG` of `p^s`, expected to be left invariant.
#[derive(Debug, Clone)]
pub struct InvariantField<M>(pub M);
