use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jet2::Jet2;
use super::map::SmoothMap;
use crate::error::{Error, Result};
use crate::tangent::{max_abs_diff, Category, SamplePlan, TangentStructure, JET_TOLERANCE};

/// Base points of tangent vectors are compared with this tolerance before
/// fibrewise operations.
pub const BASE_TOLERANCE: f64 = 1e-12;

/// A tangent vector `(base, dir)` in `T(R^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TVec {
    pub base: Vec<f64>,
    pub dir: Vec<f64>,
}

impl TVec {
    pub fn new(base: Vec<f64>, dir: Vec<f64>) -> Self {
        assert_eq!(base.len(), dir.len(), "tangent vector shape");
        TVec { base, dir }
    }

    pub fn zero_at(base: Vec<f64>) -> Self {
        let n = base.len();
        TVec::new(base, vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// Flat coordinates `[base, dir]` of `T(R^n) = R^{2n}`.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut v = self.base.clone();
        v.extend(&self.dir);
        v
    }

    pub fn from_flat(x: &[f64]) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(Error::Shape(format!("odd length {} for a tangent vector", x.len())));
        }
        let n = x.len() / 2;
        Ok(TVec::new(x[..n].to_vec(), x[n..].to_vec()))
    }

    /// `base + dir e1`.
    pub fn to_jets(&self) -> Vec<Jet2> {
        self.base
            .iter()
            .zip(&self.dir)
            .map(|(&x, &v)| Jet2::new(x, v, 0.0, 0.0))
            .collect()
    }

    pub fn scaled(&self, k: f64) -> TVec {
        TVec::new(self.base.clone(), self.dir.iter().map(|v| v * k).collect())
    }
}

/// `Tf` at a tangent vector: evaluates `f` on `base + dir e1`.
pub fn pushforward_t(f: &SmoothMap, v: &TVec) -> Result<TVec> {
    let y = f.eval_jets(&v.to_jets())?;
    Ok(TVec::new(
        y.iter().map(|j| j.a).collect(),
        y.iter().map(|j| j.b).collect(),
    ))
}

/// `T^2 f` on a tower of jets.
pub fn pushforward_t2(f: &SmoothMap, w: &[Jet2]) -> Result<Vec<Jet2>> {
    f.eval_jets(w)
}

/// Flat coordinates of `T^2(R^n) = T(T R^n) = R^{4n}`, laid out as
/// `[a, c, b, d]`: the point of `TX` (`a`, inner direction `c`) followed by
/// the outer direction (`b`, `d`).
pub fn tower_to_flat(w: &[Jet2]) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * w.len());
    out.extend(w.iter().map(|j| j.a));
    out.extend(w.iter().map(|j| j.c));
    out.extend(w.iter().map(|j| j.b));
    out.extend(w.iter().map(|j| j.d));
    out
}

pub fn flat_to_tower(x: &[f64]) -> Result<Vec<Jet2>> {
    if !x.len().is_multiple_of(4) {
        return Err(Error::Shape(format!("length {} is not a T^2 point", x.len())));
    }
    let n = x.len() / 4;
    Ok((0..n)
        .map(|i| Jet2::new(x[i], x[2 * n + i], x[n + i], x[3 * n + i]))
        .collect())
}

/// Vertical lift `l : T -> T^2`, `(x, v) |-> x + v e1e2`.
pub fn ell(v: &TVec) -> Vec<Jet2> {
    v.base
        .iter()
        .zip(&v.dir)
        .map(|(&x, &d)| Jet2::new(x, 0.0, 0.0, d))
        .collect()
}

/// Canonical flip `c : T^2 -> T^2`, exchanging the two directions.
pub fn flip_c(w: &[Jet2]) -> Vec<Jet2> {
    w.iter().map(|j| Jet2::new(j.a, j.c, j.b, j.d)).collect()
}

/// `Tp : T^2 X -> TX`, keeping `(a, b)`.
pub fn t_of_p(w: &[Jet2]) -> TVec {
    TVec::new(w.iter().map(|j| j.a).collect(), w.iter().map(|j| j.b).collect())
}

/// `p_{TX} : T^2 X -> TX`, keeping `(a, c)`.
pub fn p_of_t(w: &[Jet2]) -> TVec {
    TVec::new(w.iter().map(|j| j.a).collect(), w.iter().map(|j| j.c).collect())
}

/// `T0 : TX -> T^2 X`, `(x, v) |-> x + v e1`.
pub fn t_of_zero(v: &TVec) -> Vec<Jet2> {
    v.to_jets()
}

/// The factorisation `{w}` of a tower through `l`, provided `w` equalises
/// `Tp`, `p` and `p;p;0`, which in coordinates means the `b` and `c` parts
/// vanish.
pub fn vertical_factor(w: &[Jet2], tolerance: f64) -> Result<TVec> {
    let residual = equaliser_residual(w);
    if !(residual <= tolerance) {
        return Err(Error::EqualiserViolation { residual, tolerance });
    }
    Ok(TVec::new(
        w.iter().map(|j| j.a).collect(),
        w.iter().map(|j| j.d).collect(),
    ))
}

/// Distance of a tower from the image of `l`: the larger of the
/// `Tp`-versus-`p;p;0` and `p`-versus-`p;p;0` discrepancies.
pub fn equaliser_residual(w: &[Jet2]) -> f64 {
    w.iter().map(|j| j.b.abs().max(j.c.abs())).fold(0.0, f64::max)
}

fn check_bases(u: &[f64], v: &[f64]) -> Result<()> {
    let residual = max_abs_diff(u, v);
    if residual > BASE_TOLERANCE {
        return Err(Error::BaseMismatch { residual });
    }
    Ok(())
}

pub fn fiber_add(u: &TVec, v: &TVec) -> Result<TVec> {
    check_bases(&u.base, &v.base)?;
    Ok(TVec::new(
        u.base.clone(),
        u.dir.iter().zip(&v.dir).map(|(a, b)| a + b).collect(),
    ))
}

pub fn fiber_neg(u: &TVec) -> TVec {
    u.scaled(-1.0)
}

/// Addition in the bundle `p_{TX} : T^2 X -> TX` (fibres over `(a, c)`;
/// adds `(b, d)`).
pub fn add_over_p(u: &[Jet2], v: &[Jet2]) -> Result<Vec<Jet2>> {
    check_bases(&p_of_t(u).to_flat(), &p_of_t(v).to_flat())?;
    Ok(u.iter()
        .zip(v)
        .map(|(x, y)| Jet2::new(x.a, x.b + y.b, x.c, x.d + y.d))
        .collect())
}

pub fn neg_over_p(u: &[Jet2]) -> Vec<Jet2> {
    u.iter().map(|x| Jet2::new(x.a, -x.b, x.c, -x.d)).collect()
}

/// Addition in the bundle `Tp : T^2 X -> TX` (fibres over `(a, b)`; adds
/// `(c, d)`). This is `T(+)`.
pub fn add_over_tp(u: &[Jet2], v: &[Jet2]) -> Result<Vec<Jet2>> {
    check_bases(&t_of_p(u).to_flat(), &t_of_p(v).to_flat())?;
    Ok(u.iter()
        .zip(v)
        .map(|(x, y)| Jet2::new(x.a, x.b, x.c + y.c, x.d + y.d))
        .collect())
}

pub fn neg_over_tp(u: &[Jet2]) -> Vec<Jet2> {
    u.iter().map(|x| Jet2::new(x.a, x.b, -x.c, -x.d)).collect()
}

/// The difference `u - v` of two towers with equal `Tp` and `p` images,
/// landing in the vertical equaliser:
///
/// `(u -_{Tp} v) -_p T0(Tp u)`.
///
/// The first subtraction cancels the inner directions; the second removes
/// the common outer direction, which is the `T0`-image of `Tp u`.
pub fn vertical_difference(u: &[Jet2], v: &[Jet2]) -> Result<Vec<Jet2>> {
    let first = add_over_tp(u, &neg_over_tp(v))?;
    let outer = t_of_zero(&t_of_p(u));
    add_over_p(&first, &neg_over_p(&outer))
}

/// A cartesian space `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Space(pub usize);

/// The jet tangent witness on cartesian spaces: `T(R^n) = R^{2n}`, `Tf`
/// by first-order jets, with addition, negation, lift and flip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetTangent {
    pub tolerance: f64,
}

impl Default for JetTangent {
    fn default() -> Self {
        JetTangent {
            tolerance: JET_TOLERANCE,
        }
    }
}

/// Seeded sample of `count` points of `R^dim`, coordinates in `[-2, 2]`.
pub fn sample_points(dim: usize, plan: &SamplePlan) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..plan.count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect()
}

impl Category for JetTangent {
    type Obj = Space;
    type Map = SmoothMap;
    type Elem = Vec<f64>;

    fn domain(&self, f: &SmoothMap) -> Space {
        Space(f.dom())
    }

    fn codomain(&self, f: &SmoothMap) -> Space {
        Space(f.cod())
    }

    fn apply(&self, f: &SmoothMap, x: &Vec<f64>) -> Result<Vec<f64>> {
        f.eval(x)
    }

    fn elements(&self, obj: &Space, plan: &SamplePlan) -> Vec<Vec<f64>> {
        sample_points(obj.0, plan)
    }

    fn discrepancy(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        max_abs_diff(a, b)
    }

    fn default_tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl TangentStructure for JetTangent {
    fn t_obj(&self, x: &Space) -> Space {
        Space(2 * x.0)
    }

    fn t_map(&self, f: &SmoothMap) -> SmoothMap {
        f.tangent()
    }

    fn projection(&self, x: &Space) -> SmoothMap {
        SmoothMap::coordinates(2 * x.0, 0..x.0).renamed("p")
    }

    fn zero(&self, x: &Space) -> SmoothMap {
        let n = x.0;
        SmoothMap::total("0", n, 2 * n, move |v| {
            let mut out = v.to_vec();
            out.extend(std::iter::repeat_n(Jet2::ZERO, n));
            out
        })
    }

    fn fiber(&self, x: &Space, base: &Vec<f64>, plan: &SamplePlan) -> Result<Vec<Vec<f64>>> {
        Ok(sample_points(x.0, plan)
            .into_iter()
            .map(|dir| TVec::new(base.clone(), dir).to_flat())
            .collect())
    }

    fn fiber_add(&self, _x: &Space, u: &Vec<f64>, v: &Vec<f64>) -> Result<Vec<f64>> {
        Ok(fiber_add(&TVec::from_flat(u)?, &TVec::from_flat(v)?)?.to_flat())
    }

    fn fiber_neg(&self, _x: &Space, u: &Vec<f64>) -> Result<Vec<f64>> {
        Ok(fiber_neg(&TVec::from_flat(u)?).to_flat())
    }

    fn vertical_lift(&self, x: &Space) -> Result<SmoothMap> {
        let n = x.0;
        Ok(SmoothMap::total("l", 2 * n, 4 * n, move |v| {
            // [a, c, b, d] = [x, 0, 0, v]
            let mut out = v[..n].to_vec();
            out.extend(std::iter::repeat_n(Jet2::ZERO, 2 * n));
            out.extend_from_slice(&v[n..]);
            out
        }))
    }

    fn canonical_flip(&self, x: &Space) -> Result<SmoothMap> {
        let n = x.0;
        Ok(SmoothMap::total("c", 4 * n, 4 * n, move |w| {
            let mut out = w[..n].to_vec();
            out.extend_from_slice(&w[2 * n..3 * n]);
            out.extend_from_slice(&w[n..2 * n]);
            out.extend_from_slice(&w[3 * n..]);
            out
        }))
    }
}

/// Central finite-difference directional derivative of `f` at `x` along
/// `v` with step `h`.
pub fn central_difference(f: &SmoothMap, x: &[f64], v: &[f64], h: f64) -> Result<Vec<f64>> {
    let plus: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + h * b).collect();
    let minus: Vec<f64> = x.iter().zip(v).map(|(a, b)| a - h * b).collect();
    let fp = f.eval(&plus)?;
    let fm = f.eval(&minus)?;
    Ok(fp.iter().zip(&fm).map(|(p, m)| (p - m) / (2.0 * h)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent::{check_additive, check_lift_and_flip, check_naturality, check_retraction};

    fn cube() -> SmoothMap {
        SmoothMap::total("cube", 1, 1, |x| vec![x[0] * x[0] * x[0]])
    }

    fn product_xy() -> SmoothMap {
        SmoothMap::total("xy", 2, 1, |x| vec![x[0] * x[1]])
    }

    #[test]
    fn pushforward_examples() {
        let v = TVec::new(vec![3.0], vec![1.0]);
        let sq = SmoothMap::total("sq", 1, 1, |x| vec![x[0] * x[0]]);
        assert_eq!(pushforward_t(&sq, &v).unwrap(), TVec::new(vec![9.0], vec![6.0]));
        assert_eq!(pushforward_t(&SmoothMap::identity(1), &v).unwrap(), v);
        let w = TVec::new(vec![2.0, 5.0], vec![1.0, 0.0]);
        assert_eq!(
            pushforward_t(&product_xy(), &w).unwrap(),
            TVec::new(vec![10.0], vec![5.0])
        );
    }

    #[test]
    fn pushforward_agrees_with_tangent_map() {
        let v = TVec::new(vec![2.0, 5.0], vec![0.3, -0.7]);
        let direct = pushforward_t(&product_xy(), &v).unwrap();
        let via_t = product_xy().tangent().eval(&v.to_flat()).unwrap();
        assert_eq!(direct.to_flat(), via_t);
    }

    #[test]
    fn second_order_examples() {
        let sq = SmoothMap::total("sq", 1, 1, |x| vec![x[0] * x[0]]);
        let w = vec![Jet2::new(1.0, 1.0, 1.0, 0.0)];
        assert_eq!(pushforward_t2(&sq, &w).unwrap(), vec![Jet2::new(1.0, 2.0, 2.0, 2.0)]);
        assert_eq!(pushforward_t2(&SmoothMap::identity(1), &w).unwrap(), w);
        // dropping e2 parts before or after T^2 f agrees (naturality of Tp)
        let w = vec![Jet2::new(0.4, -1.0, 2.0, 0.5)];
        let after = t_of_p(&pushforward_t2(&cube(), &w).unwrap());
        let before = pushforward_t(&cube(), &t_of_p(&w)).unwrap();
        assert!(max_abs_diff(&after.to_flat(), &before.to_flat()) <= 1e-15);
    }

    #[test]
    fn flat_layout_matches_iterated_tangent() {
        let w = vec![Jet2::new(0.4, -1.0, 2.0, 0.5)];
        let direct = tower_to_flat(&pushforward_t2(&cube(), &w).unwrap());
        let iterated = cube().tangent().tangent().eval(&tower_to_flat(&w)).unwrap();
        assert!(max_abs_diff(&direct, &iterated) <= 1e-14);
        assert_eq!(flat_to_tower(&tower_to_flat(&w)).unwrap(), w);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(ell(&TVec::new(vec![2.5], vec![0.0])), vec![Jet2::real(2.5)]);
        let l = ell(&TVec::new(vec![0.0], vec![1.0]));
        assert_eq!(l, vec![Jet2::E12]);
        // all three legs of the equaliser send it to the zero vector at 0
        assert_eq!(t_of_p(&l), TVec::zero_at(vec![0.0]));
        assert_eq!(p_of_t(&l), TVec::zero_at(vec![0.0]));
        assert_eq!(flip_c(&l), l);
    }

    #[test]
    fn flip_examples() {
        let w = vec![Jet2::new(1.0, 2.0, 3.0, 4.0)];
        assert_eq!(flip_c(&flip_c(&w)), w);
        assert_eq!(flip_c(&[Jet2::E1]), vec![Jet2::E2]);
        for x in [-1.3, 0.2, 0.9] {
            let w = vec![Jet2::new(x, 0.7, -0.4, 1.1)];
            let lhs = pushforward_t2(&cube(), &flip_c(&w)).unwrap();
            let rhs = flip_c(&pushforward_t2(&cube(), &w).unwrap());
            assert!((lhs[0] - rhs[0]).norm_inf() <= 1e-12);
        }
    }

    #[test]
    fn vertical_factor_examples() {
        let h = TVec::new(vec![1.0, -2.0], vec![0.25, 3.0]);
        assert_eq!(vertical_factor(&ell(&h), 1e-9).unwrap(), h);
        let bad = vec![Jet2::new(1.0, 0.1, 0.0, 1.0)];
        assert!(matches!(
            vertical_factor(&bad, 1e-9),
            Err(Error::EqualiserViolation { .. })
        ));
    }

    #[test]
    fn fiber_operations() {
        let u = TVec::new(vec![1.0], vec![2.0]);
        let v = TVec::new(vec![1.0], vec![5.0]);
        assert_eq!(fiber_add(&u, &v).unwrap(), TVec::new(vec![1.0], vec![7.0]));
        assert_eq!(fiber_add(&u, &TVec::zero_at(vec![1.0])).unwrap(), u);
        assert_eq!(fiber_add(&u, &fiber_neg(&u)).unwrap(), TVec::zero_at(vec![1.0]));
        let far = TVec::new(vec![1.5], vec![0.0]);
        assert!(matches!(fiber_add(&u, &far), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn vertical_difference_lands_in_equaliser() {
        let u = vec![Jet2::new(0.5, 1.0, -2.0, 3.0)];
        let v = vec![Jet2::new(0.5, 1.0, -2.0, 1.25)];
        let d = vertical_difference(&u, &v).unwrap();
        assert_eq!(d, vec![Jet2::new(0.5, 0.0, 0.0, 1.75)]);
        let skew = vec![Jet2::new(0.5, 2.0, -2.0, 1.25)];
        assert!(vertical_difference(&u, &skew).is_err());
    }

    #[test]
    fn witness_laws() {
        let w = JetTangent::default();
        let plan = SamplePlan::default();
        let objs = [Space(1), Space(2), Space(3)];
        let r = check_retraction(&w, &objs, &plan);
        assert!(r.passed && r.residual <= 1e-12, "{r}");
        for f in [cube(), product_xy(), SmoothMap::identity(2)] {
            let r = check_naturality(&w, &f, &plan);
            assert!(r.passed && r.residual <= 1e-12, "{r}");
        }
        assert!(check_additive(&w, &objs, &plan).unwrap().passed);
        for r in check_lift_and_flip(&w, &objs, &plan).unwrap() {
            assert!(r.passed && r.residual == 0.0, "{r}");
        }
    }

    #[test]
    fn naturality_of_cube_at_half() {
        let v = TVec::new(vec![0.5], vec![1.0]);
        let tv = pushforward_t(&cube(), &v).unwrap();
        assert_eq!(tv, TVec::new(vec![0.125], vec![0.75]));
        assert_eq!(tv.base, cube().eval(&[0.5]).unwrap());
    }

    #[test]
    fn finite_differences_agree() {
        let f = SmoothMap::total("mix", 2, 2, |x| vec![x[0].sin() * x[1], (x[0] * x[1]).exp()]);
        for p in sample_points(2, &SamplePlan::new(8, 3)) {
            let v = vec![0.6, -0.8];
            let jet = pushforward_t(&f, &TVec::new(p.clone(), v.clone())).unwrap();
            let fd = central_difference(&f, &p, &v, 1e-5).unwrap();
            assert!(max_abs_diff(&jet.dir, &fd) <= 1e-6);
        }
    }
}
