//! Exact finite backend: finite sets with the diagonal endofunctor
//! `TX = X x X`, `0 = diagonal`, `p = second projection`.
//!
//! An element `(u, x)` of `TX` is a "tangent vector" at `x` pointing to `u`.
//! Pullbacks are computed, not presented, and every law is checked by
//! exhaustive enumeration. The diagonal witness has no addition, lift or
//! flip, so constructions needing them are rejected with a configuration
//! error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::tangent::{Category, LawCheck, LawReport, SamplePlan, TangentStructure, FINITE_TOLERANCE};

/// An element of a finite set. Ordering is total and canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Int(i64),
    Sym(String),
    Tuple(Vec<Atom>),
}

impl Atom {
    pub fn sym(s: impl Into<String>) -> Self {
        Atom::Sym(s.into())
    }

    /// Integers parse to [`Atom::Int`], anything else is a symbol.
    pub fn parse(token: &str) -> Self {
        token.parse().map(Atom::Int).unwrap_or_else(|_| Atom::sym(token))
    }

    pub fn pair(a: Atom, b: Atom) -> Self {
        Atom::Tuple(vec![a, b])
    }

    pub fn triple(a: Atom, b: Atom, c: Atom) -> Self {
        Atom::Tuple(vec![a, b, c])
    }

    pub fn as_pair(&self) -> Option<(&Atom, &Atom)> {
        match self {
            Atom::Tuple(v) if v.len() == 2 => Some((&v[0], &v[1])),
            _ => None,
        }
    }

    pub fn as_triple(&self) -> Option<(&Atom, &Atom, &Atom)> {
        match self {
            Atom::Tuple(v) if v.len() == 3 => Some((&v[0], &v[1], &v[2])),
            _ => None,
        }
    }

    pub(crate) fn expect_pair(&self) -> Result<(&Atom, &Atom)> {
        self.as_pair()
            .ok_or_else(|| Error::Shape(format!("expected a pair, got {self}")))
    }

    pub(crate) fn expect_triple(&self) -> Result<(&Atom, &Atom, &Atom)> {
        self.as_triple()
            .ok_or_else(|| Error::Shape(format!("expected a triple, got {self}")))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Sym(s) => write!(f, "{s}"),
            Atom::Tuple(items) => {
                write!(f, "(")?;
                for (i, a) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Atom {
    fn from(i: i64) -> Self {
        Atom::Int(i)
    }
}

/// A finite set stored in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FinSet {
    carrier: Vec<Atom>,
}

impl FinSet {
    /// Rejects duplicate atoms.
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut carrier: Vec<Atom> = atoms.into_iter().collect();
        let before = carrier.len();
        carrier.sort();
        carrier.dedup();
        if carrier.len() != before {
            return Err(Error::Shape("finite set has duplicate atoms".into()));
        }
        Ok(FinSet { carrier })
    }

    /// Collects atoms, silently merging duplicates.
    pub fn collect(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        FinSet {
            carrier: set.into_iter().collect(),
        }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        FinSet::collect((0..n as i64).map(Atom::Int))
    }

    pub fn singleton(a: Atom) -> Self {
        FinSet { carrier: vec![a] }
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.carrier.iter()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.carrier
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.carrier.binary_search(a).is_ok()
    }

    pub fn index_of(&self, a: &Atom) -> Option<usize> {
        self.carrier.binary_search(a).ok()
    }

    /// Cartesian product, elements `(a, b)`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        FinSet::collect(
            self.iter()
                .flat_map(|a| other.iter().map(move |b| Atom::pair(a.clone(), b.clone()))),
        )
    }

    fn require(&self, a: &Atom) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInCarrier {
                element: a.to_string(),
                set: format!("a set of {} atoms", self.len()),
            })
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A total function between finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMap {
    domain: FinSet,
    codomain: FinSet,
    table: BTreeMap<Atom, Atom>,
}

impl FinMap {
    pub fn new(domain: FinSet, codomain: FinSet, f: impl Fn(&Atom) -> Atom) -> Result<Self> {
        let table = domain.iter().map(|a| (a.clone(), f(a))).collect();
        Self::from_table(domain, codomain, table)
    }

    pub fn try_new(domain: FinSet, codomain: FinSet, f: impl Fn(&Atom) -> Result<Atom>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for a in domain.iter() {
            table.insert(a.clone(), f(a)?);
        }
        Self::from_table(domain, codomain, table)
    }

    /// Checks totality and that every image lies in the codomain.
    pub fn from_table(domain: FinSet, codomain: FinSet, table: BTreeMap<Atom, Atom>) -> Result<Self> {
        if table.len() != domain.len() || !domain.iter().all(|a| table.contains_key(a)) {
            return Err(Error::Shape("map table is not total on its domain".into()));
        }
        for b in table.values() {
            codomain.require(b)?;
        }
        Ok(FinMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(x: &FinSet) -> Self {
        FinMap {
            domain: x.clone(),
            codomain: x.clone(),
            table: x.iter().map(|a| (a.clone(), a.clone())).collect(),
        }
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn apply(&self, a: &Atom) -> Result<Atom> {
        self.table.get(a).cloned().ok_or_else(|| Error::NotInCarrier {
            element: a.to_string(),
            set: "map domain".into(),
        })
    }

    pub fn table(&self) -> &BTreeMap<Atom, Atom> {
        &self.table
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap> {
        if self.codomain != g.domain {
            return Err(Error::Shape("composite of maps with mismatched middle object".into()));
        }
        let table = self
            .table
            .iter()
            .map(|(a, b)| (a.clone(), g.table[b].clone()))
            .collect();
        Ok(FinMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            table,
        })
    }

    /// `f x f` on pairs: the diagonal functor applied to `self`.
    pub fn squared(&self) -> FinMap {
        let table = self
            .table
            .iter()
            .flat_map(|(a, fa)| {
                self.table
                    .iter()
                    .map(move |(b, fb)| (Atom::pair(a.clone(), b.clone()), Atom::pair(fa.clone(), fb.clone())))
            })
            .collect();
        FinMap {
            domain: self.domain.product(&self.domain),
            codomain: self.codomain.product(&self.codomain),
            table,
        }
    }

    /// Preimage of `b`, in canonical order.
    pub fn fiber(&self, b: &Atom) -> Vec<Atom> {
        self.table
            .iter()
            .filter(|(_, v)| *v == b)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn is_bijection(&self) -> bool {
        self.domain.len() == self.codomain.len()
            && self.table.values().collect::<BTreeSet<_>>().len() == self.domain.len()
    }
}

/// First point where `f` and `g` differ. Errors when the shapes differ.
pub fn first_difference(f: &FinMap, g: &FinMap) -> Result<Option<Atom>> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(Error::Shape("maps have different domain or codomain".into()));
    }
    Ok(f.table.iter().find(|(a, b)| g.table[*a] != **b).map(|(a, _)| a.clone()))
}

/// Exhaustive pointwise equality.
pub fn maps_equal(f: &FinMap, g: &FinMap) -> Result<bool> {
    Ok(first_difference(f, g)?.is_none())
}

/// All right inverses of `bundle`, in canonical order. Empty when some
/// fibre is empty.
pub fn enumerate_sections(bundle: &FinMap) -> Vec<FinMap> {
    let base = bundle.codomain();
    let fibers: Vec<Vec<Atom>> = base.iter().map(|b| bundle.fiber(b)).collect();
    if fibers.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; fibers.len()];
    loop {
        let table = base
            .iter()
            .zip(&choice)
            .zip(&fibers)
            .map(|((b, &i), fib)| (b.clone(), fib[i].clone()))
            .collect();
        out.push(FinMap {
            domain: base.clone(),
            codomain: bundle.domain().clone(),
            table,
        });
        // odometer, last position fastest
        let mut pos = fibers.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < fibers[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// The pullback of a cospan `f : A -> C <- B : g`, with apex
/// `{(a, b) : f(a) = g(b)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPullback {
    pub apex: FinSet,
    pub left: FinMap,
    pub right: FinMap,
    cospan: (FinMap, FinMap),
}

/// Computes the pullback of `f` and `g`.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<FinPullback> {
    if f.codomain() != g.codomain() {
        return Err(Error::Shape("pullback of maps with different codomains".into()));
    }
    let apex = FinSet::collect(f.table.iter().flat_map(|(a, fa)| {
        g.table
            .iter()
            .filter(move |(_, gb)| *gb == fa)
            .map(move |(b, _)| Atom::pair(a.clone(), b.clone()))
    }));
    let left = FinMap::try_new(apex.clone(), f.domain().clone(), |x| Ok(x.expect_pair()?.0.clone()))?;
    let right = FinMap::try_new(apex.clone(), g.domain().clone(), |x| Ok(x.expect_pair()?.1.clone()))?;
    Ok(FinPullback {
        apex,
        left,
        right,
        cospan: (f.clone(), g.clone()),
    })
}

impl FinPullback {
    /// The unique apex element over `(a, b)`, if the pair is a cone.
    pub fn factor(&self, a: &Atom, b: &Atom) -> Option<Atom> {
        let x = Atom::pair(a.clone(), b.clone());
        self.apex.contains(&x).then_some(x)
    }

    pub fn cospan(&self) -> (&FinMap, &FinMap) {
        (&self.cospan.0, &self.cospan.1)
    }

    /// The universal property, checked against all cones from test objects
    /// of size at most `max_test_size`.
    pub fn check_universal_property(&self, max_test_size: usize) -> Result<LawReport> {
        check_pullback_square(
            "pullback universal property",
            &self.left,
            &self.right,
            &self.cospan.0,
            &self.cospan.1,
            max_test_size,
        )
    }
}

/// Checks that the commuting square
///
/// ```text
///  P --v--> B
///  |        |
///  u        g
///  v        v
///  A --f--> C
/// ```
///
/// is a pullback: it commutes, and every cone `(a : Z -> A, b : Z -> B)` with
/// `a;f = b;g` from a test object `Z` with `|Z| <= max_test_size` factors
/// through `P` in exactly one way. A map `Z -> P` is determined pointwise,
/// so the number of factorisations of a cone is the product over `z` of the
/// number of `P`-elements lying over `(a(z), b(z))`; cones are enumerated
/// as tuples of compatible pairs.
pub fn check_pullback_square(
    law: &str,
    u: &FinMap,
    v: &FinMap,
    f: &FinMap,
    g: &FinMap,
    max_test_size: usize,
) -> Result<LawReport> {
    if u.domain() != v.domain()
        || u.codomain() != f.domain()
        || v.codomain() != g.domain()
        || f.codomain() != g.codomain()
    {
        return Err(Error::Shape(format!("{law}: square is not well typed")));
    }
    let mut check = LawCheck::new(law, FINITE_TOLERANCE);
    let (uf, vg) = (u.then(f)?, v.then(g)?);
    for x in u.domain().iter() {
        let lhs = uf.apply(x)?;
        let rhs = vg.apply(x)?;
        check.record_eq(&lhs, &rhs, || format!("square does not commute at {x}"));
    }

    let mut compatible: Vec<(Atom, Atom, usize)> = Vec::new();
    for a in f.domain().iter() {
        let fa = f.apply(a)?;
        for b in g.domain().iter() {
            if g.apply(b)? == fa {
                let lifts = u
                    .domain()
                    .iter()
                    .filter(|x| u.table[*x] == *a && v.table[*x] == *b)
                    .count();
                compatible.push((a.clone(), b.clone(), lifts));
            }
        }
    }

    for size in 0..=max_test_size {
        let mut idx = vec![0usize; size];
        if size > 0 && compatible.is_empty() {
            break;
        }
        loop {
            let count: usize = idx.iter().map(|&i| compatible[i].2).product();
            check.record(if count == 1 { 0.0 } else { 1.0 }, || {
                let cone: Vec<String> = idx
                    .iter()
                    .map(|&i| format!("({},{})", compatible[i].0, compatible[i].1))
                    .collect();
                format!("cone [{}] has {count} factorisations", cone.join(" "))
            });
            let mut pos = size;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < compatible.len() {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(check.finish())
}

/// The diagonal tangent witness on finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct DeltaTangent;

/// Returns the diagonal witness `T = (-) x (-)`.
pub fn delta_tangent() -> DeltaTangent {
    DeltaTangent
}

/// The comparison `T(A x_C B) -> TA x_TC TB`, sending
/// `((a,b),(a',b'))` to `((a,a'),(b,b'))`.
#[derive(Debug, Clone)]
pub struct PullbackComparison {
    pub forward: FinMap,
    /// Pullback of `Tf` and `Tg`.
    pub target: FinPullback,
    backward: BTreeMap<Atom, Atom>,
}

impl PullbackComparison {
    pub fn is_iso(&self) -> bool {
        self.forward.is_bijection()
    }

    /// Inverse image of an element of `TA x_TC TB` in `T(A x_C B)`.
    pub fn pull(&self, x: &Atom) -> Result<Atom> {
        self.backward.get(x).cloned().ok_or_else(|| Error::NotInCarrier {
            element: x.to_string(),
            set: "image of the pullback comparison".into(),
        })
    }
}

impl DeltaTangent {
    pub fn tangent_map(&self, f: &FinMap) -> FinMap {
        f.squared()
    }

    /// `T` preserves `pb` iff the returned comparison is a bijection.
    pub fn compare_pullback(&self, pb: &FinPullback) -> Result<PullbackComparison> {
        let (f, g) = pb.cospan();
        let target = pullback(&f.squared(), &g.squared())?;
        let t_apex = pb.apex.product(&pb.apex);
        let forward = FinMap::try_new(t_apex, target.apex.clone(), |x| {
            let (first, second) = x.expect_pair()?;
            let (a, b) = first.expect_pair()?;
            let (a2, b2) = second.expect_pair()?;
            Ok(Atom::pair(
                Atom::pair(a.clone(), a2.clone()),
                Atom::pair(b.clone(), b2.clone()),
            ))
        })?;
        let backward = forward.table().iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Ok(PullbackComparison {
            forward,
            target,
            backward,
        })
    }
}

impl Category for DeltaTangent {
    type Obj = FinSet;
    type Map = FinMap;
    type Elem = Atom;

    fn domain(&self, f: &FinMap) -> FinSet {
        f.domain().clone()
    }

    fn codomain(&self, f: &FinMap) -> FinSet {
        f.codomain().clone()
    }

    fn apply(&self, f: &FinMap, x: &Atom) -> Result<Atom> {
        f.apply(x)
    }

    fn elements(&self, obj: &FinSet, _plan: &SamplePlan) -> Vec<Atom> {
        obj.atoms().to_vec()
    }

    fn discrepancy(&self, a: &Atom, b: &Atom) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }

    fn default_tolerance(&self) -> f64 {
        FINITE_TOLERANCE
    }
}

impl TangentStructure for DeltaTangent {
    fn t_obj(&self, x: &FinSet) -> FinSet {
        x.product(x)
    }

    fn t_map(&self, f: &FinMap) -> FinMap {
        f.squared()
    }

    fn projection(&self, x: &FinSet) -> FinMap {
        FinMap::new(x.product(x), x.clone(), |v| v.as_pair().expect("pair").1.clone())
            .expect("second projection is total")
    }

    fn zero(&self, x: &FinSet) -> FinMap {
        FinMap::new(x.clone(), x.product(x), |a| Atom::pair(a.clone(), a.clone())).expect("diagonal is total")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent::{check_additive, check_naturality, check_retraction};

    fn two() -> FinSet {
        FinSet::range(2)
    }

    fn swap() -> FinMap {
        FinMap::new(two(), two(), |a| match a {
            Atom::Int(i) => Atom::Int(1 - i),
            _ => unreachable!(),
        })
        .unwrap()
    }

    #[test]
    fn duplicate_atoms_rejected() {
        assert!(FinSet::new(vec![Atom::Int(1), Atom::Int(1)]).is_err());
        assert_eq!(
            FinSet::new(vec![Atom::Int(2), Atom::Int(1)]).unwrap().atoms()[0],
            Atom::Int(1)
        );
    }

    #[test]
    fn delta_on_singleton() {
        let w = delta_tangent();
        let x = FinSet::singleton(Atom::sym("a"));
        let tx = w.t_obj(&x);
        assert_eq!(tx.len(), 1);
        let z = w.zero(&x).apply(&Atom::sym("a")).unwrap();
        assert_eq!(z, Atom::pair(Atom::sym("a"), Atom::sym("a")));
        assert_eq!(w.projection(&x).apply(&z).unwrap(), Atom::sym("a"));
    }

    #[test]
    fn delta_retraction_and_naturality() {
        let w = delta_tangent();
        assert_eq!(w.t_obj(&two()).len(), 4);
        let r = check_retraction(&w, &[two()], &SamplePlan::default());
        assert!(r.passed && r.residual == 0.0 && r.checked == 2);
        assert!(check_naturality(&w, &swap(), &SamplePlan::default()).passed);
        assert!(check_naturality(&w, &FinMap::identity(&two()), &SamplePlan::default()).passed);
    }

    #[test]
    fn delta_has_no_addition() {
        let err = check_additive(&delta_tangent(), &[two()], &SamplePlan::default()).unwrap_err();
        assert!(err.is_config());
    }

    /// A witness whose zero sends everything to `(x, 0)`; `p` is still the
    /// second projection, so `0;p` is constant and fails at `x = 1`.
    struct Corrupted;

    impl Category for Corrupted {
        type Obj = FinSet;
        type Map = FinMap;
        type Elem = Atom;
        fn domain(&self, f: &FinMap) -> FinSet {
            f.domain().clone()
        }
        fn codomain(&self, f: &FinMap) -> FinSet {
            f.codomain().clone()
        }
        fn apply(&self, f: &FinMap, x: &Atom) -> Result<Atom> {
            f.apply(x)
        }
        fn elements(&self, obj: &FinSet, _: &SamplePlan) -> Vec<Atom> {
            obj.atoms().to_vec()
        }
        fn discrepancy(&self, a: &Atom, b: &Atom) -> f64 {
            (a != b) as u8 as f64
        }
        fn default_tolerance(&self) -> f64 {
            0.0
        }
    }

    impl TangentStructure for Corrupted {
        fn t_obj(&self, x: &FinSet) -> FinSet {
            x.product(x)
        }
        fn t_map(&self, f: &FinMap) -> FinMap {
            f.squared()
        }
        fn projection(&self, x: &FinSet) -> FinMap {
            delta_tangent().projection(x)
        }
        fn zero(&self, x: &FinSet) -> FinMap {
            FinMap::new(x.clone(), x.product(x), |a| Atom::pair(a.clone(), Atom::Int(0))).unwrap()
        }
    }

    #[test]
    fn corrupted_zero_fails_retraction_with_counterexample() {
        let r = check_retraction(&Corrupted, &[two()], &SamplePlan::default());
        assert!(!r.passed);
        assert_eq!(r.counterexample.as_deref(), Some("1"));
    }

    #[test]
    fn pullback_examples() {
        let id = FinMap::identity(&two());
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(
            pb.apex.atoms(),
            &[Atom::pair(0.into(), 0.into()), Atom::pair(1.into(), 1.into())]
        );
        let c0 = FinMap::new(two(), two(), |_| Atom::Int(0)).unwrap();
        let c1 = FinMap::new(two(), two(), |_| Atom::Int(1)).unwrap();
        assert!(pullback(&c0, &c1).unwrap().apex.is_empty());
        let three = FinSet::range(3);
        let bad = FinMap::identity(&three);
        assert!(pullback(&id, &bad).is_err());
    }

    #[test]
    fn pullback_universal_property_holds() {
        let c0 = FinMap::new(FinSet::range(3), two(), |a| match a {
            Atom::Int(i) => Atom::Int(i % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let pb = pullback(&c0, &swap()).unwrap();
        let r = pb.check_universal_property(3).unwrap();
        assert!(r.passed, "{r}");
        // three commutation points, then cones of size 0..=3 over three compatible pairs
        assert_eq!(r.checked, 3 + 1 + 3 + 9 + 27);
    }

    #[test]
    fn non_pullback_square_detected() {
        // The terminal-object square over id is not a pullback of id, id on {0,1}.
        let one = FinSet::singleton(Atom::Int(0));
        let u = FinMap::new(one.clone(), two(), |_| Atom::Int(0)).unwrap();
        let id = FinMap::identity(&two());
        let r = check_pullback_square("sq", &u, &u, &id, &id, 1).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn sections_of_identity_and_projection() {
        let id = FinMap::identity(&two());
        let s = enumerate_sections(&id);
        assert_eq!(s.len(), 1);
        assert!(maps_equal(&s[0], &id).unwrap());

        let w = delta_tangent();
        assert_eq!(enumerate_sections(&w.projection(&FinSet::range(3))).len(), 27);

        let empty_fiber = FinMap::new(FinSet::singleton(Atom::Int(0)), two(), |_| Atom::Int(0)).unwrap();
        assert!(enumerate_sections(&empty_fiber).is_empty());
    }

    #[test]
    fn swap_differs_from_identity_at_zero() {
        let id = FinMap::identity(&two());
        assert_eq!(first_difference(&swap(), &id).unwrap(), Some(Atom::Int(0)));
        assert!(!maps_equal(&swap(), &id).unwrap());
        assert!(maps_equal(&id, &id).unwrap());
        assert!(maps_equal(&id, &FinMap::identity(&FinSet::range(3))).is_err());
    }

    #[test]
    fn delta_preserves_pullbacks() {
        let m = two();
        let g = m.product(&m);
        let s = FinMap::new(g.clone(), m.clone(), |a| a.as_pair().unwrap().0.clone()).unwrap();
        let t = FinMap::new(g.clone(), m.clone(), |a| a.as_pair().unwrap().1.clone()).unwrap();
        let pb = pullback(&t, &s).unwrap();
        let cmp = delta_tangent().compare_pullback(&pb).unwrap();
        assert_eq!(pb.apex.len() * pb.apex.len(), 64);
        assert!(cmp.is_iso());
        // s and t of the two-object pair groupoid, pulled back against each other
        let ss = pullback(&s, &t).unwrap();
        assert_eq!(ss.apex.len(), 8);
        let cmp = delta_tangent().compare_pullback(&ss).unwrap();
        assert!(cmp.is_iso());
    }

    #[test]
    fn squared_is_functorial() {
        let f = swap();
        let lhs = f.then(&f).unwrap().squared();
        let rhs = f.squared().then(&f.squared()).unwrap();
        assert!(maps_equal(&lhs, &rhs).unwrap());
    }
}
