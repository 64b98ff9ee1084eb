//! Backend-agnostic tangent witnesses and the law checkers shared by the
//! finite and jet backends.
//!
//! Composition is diagrammatic throughout the crate: `f ; g` (written
//! `f.then(g)` on concrete maps) means "apply `f`, then `g`". A witness
//! supplies an endofunctor `T` together with a projection `p : T => 1` and
//! a zero section `0 : 1 => T`; the fibrewise addition, negation, vertical
//! lift `l : T => T^2` and canonical flip `c : T^2 => T^2` are optional and
//! default to configuration errors.

use std::fmt;

use crate::error::{Error, Result};

/// Which points a law check visits. Finite backends ignore the plan and
/// enumerate exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
}

impl SamplePlan {
    pub const DEFAULT_COUNT: usize = 32;
    pub const DEFAULT_SEED: u64 = 0x5eed_2a1c;

    pub fn new(count: usize, seed: u64) -> Self {
        SamplePlan { count, seed }
    }
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan::new(Self::DEFAULT_COUNT, Self::DEFAULT_SEED)
    }
}

/// Default tolerance for exact (finite) backends.
pub const FINITE_TOLERANCE: f64 = 0.0;
/// Default tolerance for jet law checks; covers float roundoff only.
pub const JET_TOLERANCE: f64 = 1e-9;

/// Outcome of checking one law.
#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub law: String,
    pub passed: bool,
    /// Largest residual seen. Zero for exact backends when the law holds.
    pub residual: f64,
    pub tolerance: f64,
    /// Input at which the worst violation occurred, when the law fails.
    pub counterexample: Option<String>,
    /// Number of points visited.
    pub checked: usize,
}

impl LawReport {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (residual {:.3e}, tolerance {:.1e}, {} points)",
            self.law,
            self.status(),
            self.residual,
            self.tolerance,
            self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ", counterexample {c}")?;
        }
        Ok(())
    }
}

/// Accumulates residuals for one law and produces a [`LawReport`].
#[derive(Debug, Clone)]
pub struct LawCheck {
    law: String,
    tolerance: f64,
    worst: f64,
    worst_failing: f64,
    counterexample: Option<String>,
    checked: usize,
}

impl LawCheck {
    pub fn new(law: impl Into<String>, tolerance: f64) -> Self {
        LawCheck {
            law: law.into(),
            tolerance,
            worst: 0.0,
            worst_failing: f64::NEG_INFINITY,
            counterexample: None,
            checked: 0,
        }
    }

    /// Records a residual; `witness` is only rendered when the residual
    /// violates the tolerance. Non-finite residuals count as violations.
    pub fn record(&mut self, residual: f64, witness: impl FnOnce() -> String) {
        self.checked += 1;
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual.abs()
        };
        if residual > self.worst {
            self.worst = residual;
        }
        if residual > self.tolerance && residual > self.worst_failing {
            self.worst_failing = residual;
            self.counterexample = Some(witness());
        }
    }

    /// Records an exact comparison: residual 0 when equal, 1 otherwise.
    pub fn record_eq<T: PartialEq>(&mut self, lhs: &T, rhs: &T, witness: impl FnOnce() -> String) {
        self.record(if lhs == rhs { 0.0 } else { 1.0 }, witness);
    }

    /// Records a failure that has no numeric size (e.g. an evaluation error).
    pub fn record_failure(&mut self, witness: impl FnOnce() -> String) {
        self.record(f64::INFINITY, witness);
    }

    pub fn finish(self) -> LawReport {
        LawReport {
            passed: self.counterexample.is_none(),
            law: self.law,
            residual: self.worst,
            tolerance: self.tolerance,
            counterexample: self.counterexample,
            checked: self.checked,
        }
    }
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// Maximum absolute componentwise difference of two real vectors;
/// infinite when the lengths differ.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A category whose maps can be evaluated on elements.
pub trait Category {
    type Obj: Clone + fmt::Debug;
    type Map: Clone;
    type Elem: Clone + fmt::Debug;

    fn domain(&self, f: &Self::Map) -> Self::Obj;
    fn codomain(&self, f: &Self::Map) -> Self::Obj;
    fn apply(&self, f: &Self::Map, x: &Self::Elem) -> Result<Self::Elem>;
    /// Elements visited by law checks: every element for finite objects, a
    /// seeded pseudo-random sample otherwise.
    fn elements(&self, obj: &Self::Obj, plan: &SamplePlan) -> Vec<Self::Elem>;
    /// Zero iff the elements agree.
    fn discrepancy(&self, a: &Self::Elem, b: &Self::Elem) -> f64;
    fn default_tolerance(&self) -> f64;
}

/// An endofunctor with a retraction onto the identity, optionally extended
/// with the remaining tangent-structure components.
pub trait TangentStructure: Category {
    fn t_obj(&self, x: &Self::Obj) -> Self::Obj;
    fn t_map(&self, f: &Self::Map) -> Self::Map;
    /// `p_X : TX -> X`.
    fn projection(&self, x: &Self::Obj) -> Self::Map;
    /// `0_X : X -> TX`.
    fn zero(&self, x: &Self::Obj) -> Self::Map;

    /// Elements of `TX` lying over `base`.
    fn fiber(&self, x: &Self::Obj, base: &Self::Elem, plan: &SamplePlan) -> Result<Vec<Self::Elem>> {
        let p = self.projection(x);
        let mut out = Vec::new();
        for v in self.elements(&self.t_obj(x), plan) {
            if self.discrepancy(&self.apply(&p, &v)?, base) == 0.0 {
                out.push(v);
            }
        }
        Ok(out)
    }

    fn fiber_add(&self, _x: &Self::Obj, _u: &Self::Elem, _v: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::missing("add"))
    }

    fn fiber_neg(&self, _x: &Self::Obj, _u: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::missing("neg"))
    }

    /// `l_X : TX -> T^2 X`.
    fn vertical_lift(&self, _x: &Self::Obj) -> Result<Self::Map> {
        Err(Error::missing("ell"))
    }

    /// `c_X : T^2 X -> T^2 X`.
    fn canonical_flip(&self, _x: &Self::Obj) -> Result<Self::Map> {
        Err(Error::missing("flip_c"))
    }
}

fn apply2<C: Category + ?Sized>(c: &C, f: &C::Map, g: &C::Map, x: &C::Elem) -> Result<C::Elem> {
    c.apply(g, &c.apply(f, x)?)
}

/// Compares `lhs(x)` and `rhs(x)`; evaluation errors count as violations.
fn compare<C: Category + ?Sized>(c: &C, check: &mut LawCheck, x: &C::Elem, lhs: Result<C::Elem>, rhs: Result<C::Elem>) {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => check.record(c.discrepancy(&a, &b), || format!("{x:?}")),
        (Err(e), _) | (_, Err(e)) => check.record_failure(|| format!("{x:?} ({e})")),
    }
}

/// `0 ; p = 1` on every visited element of every object.
pub fn check_retraction<W: TangentStructure + ?Sized>(w: &W, objs: &[W::Obj], plan: &SamplePlan) -> LawReport {
    let mut check = LawCheck::new("retraction 0;p = 1", w.default_tolerance());
    for obj in objs {
        let zero = w.zero(obj);
        let p = w.projection(obj);
        for x in w.elements(obj, plan) {
            compare(w, &mut check, &x, apply2(w, &zero, &p, &x), Ok(x.clone()));
        }
    }
    check.finish()
}

/// Both naturality squares, `Tf;p = p;f` on `T dom f` and `f;0 = 0;Tf` on
/// `dom f`, in one report.
pub fn check_naturality<W: TangentStructure + ?Sized>(w: &W, f: &W::Map, plan: &SamplePlan) -> LawReport {
    let mut check = LawCheck::new("naturality of p and 0", w.default_tolerance());
    let dom = w.domain(f);
    let cod = w.codomain(f);
    let tf = w.t_map(f);
    let (p_dom, p_cod) = (w.projection(&dom), w.projection(&cod));
    let (z_dom, z_cod) = (w.zero(&dom), w.zero(&cod));
    for v in w.elements(&w.t_obj(&dom), plan) {
        compare(w, &mut check, &v, apply2(w, &tf, &p_cod, &v), apply2(w, &p_dom, f, &v));
    }
    for x in w.elements(&dom, plan) {
        compare(w, &mut check, &x, apply2(w, f, &z_cod, &x), apply2(w, &z_dom, &tf, &x));
    }
    check.finish()
}

/// Fibrewise additive-bundle laws: unit, commutativity, associativity and
/// inverses. Fails with a configuration error when `add` or `neg` is absent.
pub fn check_additive<W: TangentStructure + ?Sized>(w: &W, objs: &[W::Obj], plan: &SamplePlan) -> Result<LawReport> {
    let mut check = LawCheck::new("additive bundle (unit, comm, assoc, neg)", w.default_tolerance());
    let fiber_plan = SamplePlan::new(3, plan.seed ^ 0xadd);
    for obj in objs {
        let zero = w.zero(obj);
        for base in w.elements(obj, plan) {
            let z = w.apply(&zero, &base)?;
            let fiber = w.fiber(obj, &base, &fiber_plan)?;
            for u in &fiber {
                let unit = w.fiber_add(obj, u, &z)?;
                check.record(w.discrepancy(&unit, u), || format!("unit at {u:?}"));
                let inv = w.fiber_add(obj, u, &w.fiber_neg(obj, u)?)?;
                check.record(w.discrepancy(&inv, &z), || format!("neg at {u:?}"));
                for v in &fiber {
                    let uv = w.fiber_add(obj, u, v)?;
                    let vu = w.fiber_add(obj, v, u)?;
                    check.record(w.discrepancy(&uv, &vu), || format!("comm at {u:?}, {v:?}"));
                    for x in fiber.iter().take(3) {
                        let l = w.fiber_add(obj, &uv, x)?;
                        let r = w.fiber_add(obj, u, &w.fiber_add(obj, v, x)?)?;
                        check.record(w.discrepancy(&l, &r), || format!("assoc at {u:?}, {v:?}, {x:?}"));
                    }
                }
            }
        }
    }
    Ok(check.finish())
}

/// Vertical-lift and flip laws: `l;Tp = p;0`, `l;p_T = p;0`, `l;c = l`
/// and `c;c = 1`. Fails with a configuration error when `l` or `c` is
/// absent.
pub fn check_lift_and_flip<W: TangentStructure + ?Sized>(
    w: &W,
    objs: &[W::Obj],
    plan: &SamplePlan,
) -> Result<Vec<LawReport>> {
    let tol = w.default_tolerance();
    let mut lift_base = LawCheck::new("l;Tp = p;0 and l;p = p;0", tol);
    let mut lift_flip = LawCheck::new("l;c = l", tol);
    let mut involution = LawCheck::new("c;c = 1", tol);
    for obj in objs {
        let tx = w.t_obj(obj);
        let ell = w.vertical_lift(obj)?;
        let flip = w.canonical_flip(obj)?;
        let tp = w.t_map(&w.projection(obj));
        let p_t = w.projection(&tx);
        let p = w.projection(obj);
        let zero = w.zero(obj);
        for v in w.elements(&tx, plan) {
            let expected = apply2(w, &p, &zero, &v);
            compare(w, &mut lift_base, &v, apply2(w, &ell, &tp, &v), expected.clone());
            compare(w, &mut lift_base, &v, apply2(w, &ell, &p_t, &v), expected);
            compare(w, &mut lift_flip, &v, apply2(w, &ell, &flip, &v), w.apply(&ell, &v));
        }
        for t2 in w.elements(&w.t_obj(&tx), plan) {
            compare(w, &mut involution, &t2, apply2(w, &flip, &flip, &t2), Ok(t2.clone()));
        }
    }
    Ok(vec![lift_base.finish(), lift_flip.finish(), involution.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_check_keeps_worst_failure() {
        let mut c = LawCheck::new("demo", 0.5);
        c.record(0.1, || "a".into());
        c.record(0.7, || "b".into());
        c.record(2.0, || "c".into());
        c.record(0.6, || "d".into());
        let r = c.finish();
        assert!(!r.passed);
        assert_eq!(r.residual, 2.0);
        assert_eq!(r.counterexample.as_deref(), Some("c"));
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn nan_residual_fails() {
        let mut c = LawCheck::new("nan", 1e-9);
        c.record(f64::NAN, || "x".into());
        assert!(!c.finish().passed);
    }

    #[test]
    fn empty_check_passes() {
        let r = LawCheck::new("vacuous", 0.0).finish();
        assert!(r.passed);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn max_abs_diff_shape() {
        assert_eq!(max_abs_diff(&[1.0, 2.0], &[1.0, 2.5]), 0.5);
        assert!(max_abs_diff(&[1.0], &[1.0, 2.0]).is_infinite());
    }
}
