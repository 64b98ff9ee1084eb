use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// A second-order jet `a + b e1 + c e2 + d e1 e2` with `e1^2 = e2^2 = 0`.
///
/// A vector of these is a point of `T^2(R^n)`. The `e1` slot is the outer
/// tangent direction and `e2` the inner one: `p` at `TX` drops `(b, d)` and
/// `Tp` drops `(c, d)`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Which nilpotent a jet operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotent {
    E1,
    E2,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Jet2 = Jet2::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Jet2 = Jet2::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Jet2 = Jet2::new(0.0, 0.0, 1.0, 0.0);
    pub const E12: Jet2 = Jet2::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Jet2 { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Jet2::new(a, 0.0, 0.0, 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.b == 0.0 && self.c == 0.0 && self.d == 0.0
    }

    /// True when the jet has a component involving `n`.
    pub fn uses(&self, n: Nilpotent) -> bool {
        match n {
            Nilpotent::E1 => self.b != 0.0 || self.d != 0.0,
            Nilpotent::E2 => self.c != 0.0 || self.d != 0.0,
        }
    }

    /// The unit `e1` or `e2`.
    pub fn unit(n: Nilpotent) -> Self {
        match n {
            Nilpotent::E1 => Jet2::E1,
            Nilpotent::E2 => Jet2::E2,
        }
    }

    /// Splits `x = base + dir * n` where neither part involves `n`.
    pub fn split(&self, n: Nilpotent) -> (Jet2, Jet2) {
        match n {
            Nilpotent::E1 => (Jet2::new(self.a, 0.0, self.c, 0.0), Jet2::new(self.b, 0.0, self.d, 0.0)),
            Nilpotent::E2 => (Jet2::new(self.a, self.b, 0.0, 0.0), Jet2::new(self.c, self.d, 0.0, 0.0)),
        }
    }

    /// Applies a scalar function through its value and first two
    /// derivatives at the point part.
    pub fn lift(&self, f: f64, df: f64, d2f: f64) -> Self {
        Jet2::new(f, df * self.b, df * self.c, df * self.d + d2f * self.b * self.c)
    }

    pub fn recip(&self) -> Self {
        let r = 1.0 / self.a;
        self.lift(r, -r * r, 2.0 * r * r * r)
    }

    pub fn exp(&self) -> Self {
        let e = self.a.exp();
        self.lift(e, e, e)
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.a.sin_cos();
        self.lift(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.a.sin_cos();
        self.lift(c, -s, -c)
    }

    pub fn powi(&self, n: i32) -> Self {
        match n {
            0 => Jet2::ONE,
            1 => *self,
            _ => {
                let nf = n as f64;
                self.lift(
                    self.a.powi(n),
                    nf * self.a.powi(n - 1),
                    nf * (nf - 1.0) * self.a.powi(n - 2),
                )
            }
        }
    }

    pub fn sqrt(&self) -> Self {
        let s = self.a.sqrt();
        self.lift(s, 0.5 / s, -0.25 / (s * self.a))
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}e1 + {}e2 + {}e1e2", self.a, self.b, self.c, self.d)
    }
}

impl From<f64> for Jet2 {
    fn from(a: f64) -> Self {
        Jet2::real(a)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.a * o.a,
            self.a * o.b + self.b * o.a,
            self.a * o.c + self.c * o.a,
            self.a * o.d + self.b * o.c + self.c * o.b + self.d * o.a,
        )
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, o: f64) -> Jet2 {
        Jet2::new(self.a + o, self.b, self.c, self.d)
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, o: f64) -> Jet2 {
        Jet2::new(self.a - o, self.b, self.c, self.d)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, k: f64) -> Jet2 {
        Jet2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

impl AddAssign for Jet2 {
    fn add_assign(&mut self, o: Jet2) {
        *self = *self + o;
    }
}

impl SubAssign for Jet2 {
    fn sub_assign(&mut self, o: Jet2) {
        *self = *self - o;
    }
}

impl MulAssign for Jet2 {
    fn mul_assign(&mut self, o: Jet2) {
        *self = *self * o;
    }
}

impl Sum for Jet2 {
    fn sum<I: Iterator<Item = Jet2>>(iter: I) -> Jet2 {
        iter.fold(Jet2::ZERO, |acc, x| acc + x)
    }
}
