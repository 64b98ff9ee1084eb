//! Pregroupoids `A <-alpha- X -beta-> B` with a pre-composition
//! `x o_y z`, defined when `beta x = beta y` and `alpha y = alpha z`.
//!
//! Given `e : B -> X` with `beta;e;beta = beta`, the bundle `T^alpha X` of
//! alpha-constant vectors splits as `X x_{beta, pi^alpha_B} T^alpha_B X`:
//!
//! * `split(w)`: with `x = p^alpha w`, apply `xi` to `(e(beta x), x, w)`;
//!   the third component is a vector based at `e(beta x)`, i.e. a point
//!   `nu` of `T^alpha_B X`, and `split(w) = (x, nu)`.
//! * `unsplit(x, nu)`: the third component of `xi(x, e(beta x), nu)`.
//!
//! Both are restrictions of the involution `xi`, so they are mutually
//! inverse; this is checked rather than assumed.

pub mod finite;
pub mod smooth;

pub use finite::FinitePregroupoid;
pub use smooth::{SmoothPregroupoid, SmoothPregroupoidSpec};
