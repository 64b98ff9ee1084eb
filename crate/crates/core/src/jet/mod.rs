//! Numeric tangent category of cartesian spaces.
//!
//! A point of `T^2(R^n)` is a vector of [`Jet2`] towers. In flat
//! coordinates `T(R^n) = R^{2n}` is `[base, dir]` and `T^2(R^n) = R^{4n}`
//! is `[a, c, b, d]`, so `Tp` keeps `(a, b)` and `p` at `TX` keeps `(a, c)`.
//! Subbundles such as the source-constant vectors are presented by charts
//! ([`ChartedSubbundle`]) whose laws are verified, never solved for.

mod chart;
mod jet2;
mod map;
mod tangent;

pub use chart::ChartedSubbundle;
pub use jet2::{Jet2, Nilpotent};
pub use map::{reals, SmoothMap};
pub use tangent::{
    add_over_p, add_over_tp, central_difference, ell, equaliser_residual, fiber_add, fiber_neg, flat_to_tower, flip_c,
    neg_over_p, neg_over_tp, p_of_t, pushforward_t, pushforward_t2, sample_points, t_of_p, t_of_zero, tower_to_flat,
    vertical_difference, vertical_factor, JetTangent, Space, TVec, BASE_TOLERANCE,
};
