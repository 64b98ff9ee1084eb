use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finite::{check_pullback_square, delta_tangent, pullback, Atom, DeltaTangent, FinMap, FinPullback, FinSet};
use crate::groupoid::FiniteGroupoid;
use crate::tangent::{LawCheck, LawReport, TangentStructure, FINITE_TOLERANCE};

/// A finite pregroupoid over the diagonal tangent witness.
///
/// `T^alpha X` is the pullback of `T alpha` along `0 : A -> TA`, elements
/// `((u, w), a)`; `T^alpha_B X` is the pullback of `p^alpha` along `e`,
/// elements `(w, b)`.
#[derive(Debug, Clone)]
pub struct FinitePregroupoid {
    x: FinSet,
    a: FinSet,
    b: FinSet,
    alpha: FinMap,
    beta: FinMap,
    triples: FinSet,
    mu: FinMap,
    t_mu: FinMap,
    unit: Option<FinMap>,
    tangent: DeltaTangent,
    t_alpha: FinPullback,
    p_alpha: FinMap,
}

fn triple(x: &Atom, y: &Atom, z: &Atom) -> Atom {
    Atom::triple(x.clone(), y.clone(), z.clone())
}

impl FinitePregroupoid {
    /// Builds a pregroupoid from `alpha`, `beta` (sharing the domain `X`),
    /// a composition table covering exactly the composable triples, and an
    /// optional `e : B -> X`. Axioms are checked separately.
    pub fn new(
        alpha: FinMap,
        beta: FinMap,
        table: &BTreeMap<(Atom, Atom, Atom), Atom>,
        unit: Option<FinMap>,
    ) -> Result<Self> {
        if alpha.domain() != beta.domain() {
            return Err(Error::Shape("alpha and beta must share their domain".into()));
        }
        let x = alpha.domain().clone();
        let (a, b) = (alpha.codomain().clone(), beta.codomain().clone());
        if let Some(e) = &unit {
            if e.domain() != &b || e.codomain() != &x {
                return Err(Error::Shape("e must be a map B -> X".into()));
            }
        }
        let mut composable = Vec::new();
        for p in x.iter() {
            for q in x.iter() {
                if beta.apply(p)? != beta.apply(q)? {
                    continue;
                }
                for r in x.iter() {
                    if alpha.apply(q)? == alpha.apply(r)? {
                        composable.push(triple(p, q, r));
                    }
                }
            }
        }
        let triples = FinSet::new(composable)?;
        for (p, q, r) in table.keys() {
            if !triples.contains(&triple(p, q, r)) {
                return Err(Error::Composability(format!(
                    "mu3 table entry for ({p}, {q}, {r}), which is not composable"
                )));
            }
        }
        let mu = FinMap::try_new(triples.clone(), x.clone(), |t| {
            let (p, q, r) = t.expect_triple()?;
            table
                .get(&(p.clone(), q.clone(), r.clone()))
                .cloned()
                .ok_or_else(|| Error::Shape(format!("incomplete mu3 table: no entry for ({p}, {q}, {r})")))
        })?;
        let tangent = delta_tangent();
        let t_mu = tangent.t_map(&mu);
        let t_alpha = pullback(&tangent.t_map(&alpha), &tangent.zero(&a))?;
        let p_alpha = t_alpha.left.then(&tangent.projection(&x))?;
        Ok(FinitePregroupoid {
            x,
            a,
            b,
            alpha,
            beta,
            triples,
            mu,
            t_mu,
            unit,
            tangent,
            t_alpha,
            p_alpha,
        })
    }

    /// The pair pregroupoid `X = A x B` with `|A| = |B| = n`, `alpha`,
    /// `beta` the projections, `x o_y z = (alpha x, beta z)` and
    /// `e(b) = (0, b)`.
    pub fn pair(n: usize) -> Self {
        Self::pair_with(n, n, false)
    }

    /// The pair pregroupoid on `A x B` with `B` enlarged by one point
    /// `pad` outside the image of `beta`, and `e(pad) = (0, 0)`: here `e`
    /// satisfies `beta;e;beta = beta` without being a section of `beta`.
    pub fn pair_padded(n: usize) -> Self {
        Self::pair_with(n, n, true)
    }

    fn pair_with(na: usize, nb: usize, padded: bool) -> Self {
        let a = FinSet::range(na);
        let b_image = FinSet::range(nb);
        let x = a.product(&b_image);
        let mut b_atoms: Vec<Atom> = b_image.atoms().to_vec();
        if padded {
            b_atoms.push(Atom::sym("pad"));
        }
        let b = FinSet::new(b_atoms).expect("distinct");
        let first = |p: &Atom| p.as_pair().expect("pair").0.clone();
        let second = |p: &Atom| p.as_pair().expect("pair").1.clone();
        let alpha = FinMap::new(x.clone(), a.clone(), first).expect("alpha");
        let beta = FinMap::new(x.clone(), b.clone(), second).expect("beta");
        let unit = FinMap::new(b.clone(), x.clone(), |q| match q {
            Atom::Int(_) => Atom::pair(Atom::Int(0), q.clone()),
            _ => Atom::pair(Atom::Int(0), Atom::Int(0)),
        })
        .expect("e");
        let mut table = BTreeMap::new();
        for p in x.iter() {
            for q in x.iter() {
                for r in x.iter() {
                    if second(p) == second(q) && first(q) == first(r) {
                        table.insert((p.clone(), q.clone(), r.clone()), Atom::pair(first(p), second(r)));
                    }
                }
            }
        }
        Self::new(alpha, beta, &table, Some(unit)).expect("pair pregroupoid")
    }

    /// The pregroupoid of a groupoid: `alpha = s`, `beta = t`,
    /// `x o_y z = x y^-1 z`, `e` the identities.
    pub fn from_groupoid(g: &FiniteGroupoid) -> Result<Self> {
        let mut table = BTreeMap::new();
        for p in g.arrows().iter() {
            for q in g.arrows().iter() {
                if g.target().apply(p)? != g.target().apply(q)? {
                    continue;
                }
                let pq = g.compose(p, &g.inverse().apply(q)?)?;
                for r in g.arrows().iter() {
                    if g.source().apply(q)? == g.source().apply(r)? {
                        table.insert((p.clone(), q.clone(), r.clone()), g.compose(&pq, r)?);
                    }
                }
            }
        }
        Self::new(g.source().clone(), g.target().clone(), &table, Some(g.unit().clone()))
    }

    /// Replaces one value of the composition table.
    pub fn with_composite(&self, x: &Atom, y: &Atom, z: &Atom, value: Atom) -> Result<Self> {
        let mut table: BTreeMap<_, _> = self
            .mu
            .table()
            .iter()
            .map(|(t, v)| {
                let (p, q, r) = t.as_triple().expect("triple");
                ((p.clone(), q.clone(), r.clone()), v.clone())
            })
            .collect();
        table.insert((x.clone(), y.clone(), z.clone()), value);
        Self::new(self.alpha.clone(), self.beta.clone(), &table, self.unit.clone())
    }

    pub fn carrier(&self) -> &FinSet {
        &self.x
    }

    pub fn alpha(&self) -> &FinMap {
        &self.alpha
    }

    pub fn beta(&self) -> &FinMap {
        &self.beta
    }

    pub fn unit(&self) -> Option<&FinMap> {
        self.unit.as_ref()
    }

    /// `X x_beta X x_alpha X`, as triples.
    pub fn composable(&self) -> &FinSet {
        &self.triples
    }

    /// `T^alpha X`, legs `iota^alpha` (left) and `pi^alpha` (right).
    pub fn t_alpha(&self) -> &FinPullback {
        &self.t_alpha
    }

    pub fn p_alpha(&self) -> &FinMap {
        &self.p_alpha
    }

    fn require_unit(&self) -> Result<&FinMap> {
        self.unit
            .as_ref()
            .ok_or_else(|| Error::Config("pregroupoid has no e : B -> X".into()))
    }

    /// `x o_y z`.
    pub fn mu(&self, x: &Atom, y: &Atom, z: &Atom) -> Result<Atom> {
        let t = triple(x, y, z);
        if !self.triples.contains(&t) {
            return Err(Error::Composability(format!("({x}, {y}, {z})")));
        }
        self.mu.apply(&t)
    }

    /// The alpha-constant vector `(u, w)` based at `w`.
    pub fn vector(&self, u: &Atom, w: &Atom) -> Result<Atom> {
        let a = self.alpha.apply(w)?;
        self.t_alpha
            .factor(&Atom::pair(u.clone(), w.clone()), &a)
            .ok_or_else(|| Error::NotInCarrier {
                element: format!("({u},{w})"),
                set: "T^alpha X".into(),
            })
    }

    /// Direction and base point of an element of `T^alpha X`.
    pub fn direction_of(&self, omega: &Atom) -> Result<(Atom, Atom)> {
        let (u, w) = self
            .t_alpha
            .left
            .apply(omega)?
            .expect_pair()
            .map(|(u, w)| (u.clone(), w.clone()))?;
        Ok((u, w))
    }

    /// `xi-check(x, y, z) = (y, x, x o_y z)`.
    pub fn xi_check(&self, x: &Atom, y: &Atom, z: &Atom) -> Result<(Atom, Atom, Atom)> {
        Ok((y.clone(), x.clone(), self.mu(x, y, z)?))
    }

    /// `X x_beta X x_{alpha, pi^alpha} T^alpha X`, as triples `(x, y, w)`.
    pub fn xi_domain(&self) -> Result<FinSet> {
        let mut out = Vec::new();
        for p in self.x.iter() {
            for q in self.x.iter() {
                if self.beta.apply(p)? != self.beta.apply(q)? {
                    continue;
                }
                let aq = self.alpha.apply(q)?;
                for w in self.t_alpha.apex.iter() {
                    if self.t_alpha.right.apply(w)? == aq {
                        out.push(triple(p, q, w));
                    }
                }
            }
        }
        FinSet::new(out)
    }

    /// `xi(x, y, w) = (y, x, (0x, 0y, iota^alpha w);T mu)`, the last
    /// component factored through `T^alpha X`.
    pub fn xi(&self, x: &Atom, y: &Atom, omega: &Atom) -> Result<(Atom, Atom, Atom)> {
        let ay = self.alpha.apply(y)?;
        if self.beta.apply(x)? != self.beta.apply(y)? || self.t_alpha.right.apply(omega)? != ay {
            return Err(Error::Composability(format!("({x}, {y}, {omega})")));
        }
        let (u, w) = self.direction_of(omega)?;
        // T(X x_B X x_A X) ~ TX x_TB TX x_TA TX componentwise under the
        // diagonal functor
        let lifted = self.t_mu.apply(&Atom::pair(triple(x, y, &u), triple(x, y, &w)))?;
        let ax = self.alpha.apply(x)?;
        let image = self.t_alpha.factor(&lifted, &ax).ok_or_else(|| Error::ChartResidual {
            chart: "T^alpha X".into(),
            residual: 1.0,
            tolerance: FINITE_TOLERANCE,
        })?;
        Ok((y.clone(), x.clone(), image))
    }

    /// `T^alpha_B X`, legs `iota_B` (left) and `pi^alpha_B` (right).
    pub fn t_alpha_b(&self) -> Result<FinPullback> {
        pullback(&self.p_alpha, self.require_unit()?)
    }

    /// `X x_{beta, pi^alpha_B} T^alpha_B X`.
    pub fn split_codomain(&self) -> Result<FinPullback> {
        pullback(&self.beta, &self.t_alpha_b()?.right)
    }

    fn e_beta(&self, x: &Atom) -> Result<Atom> {
        self.require_unit()?.apply(&self.beta.apply(x)?)
    }

    /// `w |-> (x, nu)` with `x = p^alpha w`.
    pub fn split(&self, omega: &Atom) -> Result<(Atom, Atom)> {
        let x = self.p_alpha.apply(omega)?;
        let (_, _, translated) = self.xi(&self.e_beta(&x)?, &x, omega)?;
        let b = self.beta.apply(&x)?;
        let nu = self
            .t_alpha_b()?
            .factor(&translated, &b)
            .ok_or_else(|| Error::ChartResidual {
                chart: "T^alpha_B X".into(),
                residual: 1.0,
                tolerance: FINITE_TOLERANCE,
            })?;
        Ok((x, nu))
    }

    /// Inverse of [`FinitePregroupoid::split`].
    pub fn unsplit(&self, x: &Atom, nu: &Atom) -> Result<Atom> {
        let tab = self.t_alpha_b()?;
        if self.beta.apply(x)? != tab.right.apply(nu)? {
            return Err(Error::Composability(format!("beta({x}) != pi^alpha_B({nu})")));
        }
        let (_, _, omega) = self.xi(x, &self.e_beta(x)?, &tab.left.apply(nu)?)?;
        Ok(omega)
    }

    /// The six axioms, and `beta;e;beta = beta` when `e` is present.
    pub fn check_pregroupoid(&self) -> Result<Vec<LawReport>> {
        let tol = FINITE_TOLERANCE;
        let (alpha, beta) = (&self.alpha, &self.beta);
        let mut ax1 = LawCheck::new("axiom 1: alpha(x o_y z) = alpha x", tol);
        let mut ax2 = LawCheck::new("axiom 2: beta(x o_y z) = beta z", tol);
        for t in self.triples.iter() {
            let (p, q, r) = t.expect_triple()?;
            let v = self.mu.apply(t)?;
            ax1.record_eq(&alpha.apply(&v)?, &alpha.apply(p)?, || format!("({p}, {q}, {r})"));
            ax2.record_eq(&beta.apply(&v)?, &beta.apply(r)?, || format!("({p}, {q}, {r})"));
        }
        let mut ax3 = LawCheck::new("axiom 3: x o_y y = x", tol);
        let mut ax4 = LawCheck::new("axiom 4: x o_x y = y", tol);
        for p in self.x.iter() {
            for q in self.x.iter() {
                if beta.apply(p)? == beta.apply(q)? {
                    ax3.record_eq(&self.mu(p, q, q), &Ok(p.clone()), || format!("({p}, {q})"));
                }
                if alpha.apply(p)? == alpha.apply(q)? {
                    ax4.record_eq(&self.mu(p, p, q), &Ok(q.clone()), || format!("({p}, {q})"));
                }
            }
        }
        let mut ax5 = LawCheck::new("axiom 5: x o_y (y o_z w) = x o_z w", tol);
        let mut ax6 = LawCheck::new("axiom 6: (x o_y z) o_z w = x o_y w", tol);
        for p in self.x.iter() {
            for q in self.x.iter() {
                if beta.apply(p)? != beta.apply(q)? {
                    continue;
                }
                for r in self.x.iter() {
                    for w in self.x.iter() {
                        let witness = || format!("({p}, {q}, {r}, {w})");
                        if beta.apply(r)? == beta.apply(q)? && alpha.apply(r)? == alpha.apply(w)? {
                            let lhs = self.mu(q, r, w).and_then(|v| self.mu(p, q, &v));
                            ax5.record_eq(&lhs, &self.mu(p, r, w), witness);
                        }
                        let aq = alpha.apply(q)?;
                        if alpha.apply(r)? == aq && alpha.apply(w)? == aq {
                            let lhs = self.mu(p, q, r).and_then(|v| self.mu(&v, r, w));
                            ax6.record_eq(&lhs, &self.mu(p, q, w), witness);
                        }
                    }
                }
            }
        }
        let mut reports = vec![
            ax1.finish(),
            ax2.finish(),
            ax3.finish(),
            ax4.finish(),
            ax5.finish(),
            ax6.finish(),
        ];
        if let Some(e) = &self.unit {
            let mut ebeta = LawCheck::new("beta;e;beta = beta", tol);
            for p in self.x.iter() {
                let b = beta.apply(p)?;
                ebeta.record_eq(&beta.apply(&e.apply(&b)?)?, &b, || format!("{p}"));
            }
            reports.push(ebeta.finish());
        }
        Ok(reports)
    }

    /// `xi-check;xi-check = 1` on every composable triple.
    pub fn check_xi_check_involution(&self) -> Result<LawReport> {
        let mut check = LawCheck::new("xi-check involution", FINITE_TOLERANCE);
        for t in self.triples.iter() {
            let (p, q, r) = t.expect_triple()?;
            let twice = self.xi_check(p, q, r).and_then(|(a, b, c)| self.xi_check(&a, &b, &c));
            check.record_eq(&twice, &Ok((p.clone(), q.clone(), r.clone())), || {
                format!("({p}, {q}, {r})")
            });
        }
        Ok(check.finish())
    }

    /// `xi;xi = 1` on every point of its domain.
    pub fn check_xi_involution(&self) -> Result<LawReport> {
        let mut check = LawCheck::new("xi involution", FINITE_TOLERANCE);
        for t in self.xi_domain()?.iter() {
            let (p, q, w) = t.expect_triple()?;
            let twice = self.xi(p, q, w).and_then(|(a, b, c)| self.xi(&a, &b, &c));
            check.record_eq(&twice, &Ok((p.clone(), q.clone(), w.clone())), || {
                format!("({p}, {q}, {w})")
            });
        }
        Ok(check.finish())
    }

    /// `|T^alpha X|` and `|X x_beta T^alpha_B X|`.
    pub fn split_cardinalities(&self) -> Result<(usize, usize)> {
        Ok((self.t_alpha.apex.len(), self.split_codomain()?.apex.len()))
    }

    /// `split;unsplit = 1`, `unsplit;split = 1`, and `split` is a bijection
    /// onto `X x_beta T^alpha_B X`, exhaustively.
    pub fn check_splitting(&self) -> Result<Vec<LawReport>> {
        let tol = FINITE_TOLERANCE;
        let codomain = self.split_codomain()?;
        let mut there = LawCheck::new("split;unsplit = 1", tol);
        let mut image = Vec::new();
        for omega in self.t_alpha.apex.iter() {
            let back = self.split(omega).and_then(|(x, nu)| {
                image.push(Atom::pair(x.clone(), nu.clone()));
                self.unsplit(&x, &nu)
            });
            there.record_eq(&back, &Ok(omega.clone()), || format!("{omega}"));
        }
        let mut back_again = LawCheck::new("unsplit;split = 1", tol);
        for pair in codomain.apex.iter() {
            let (x, nu) = pair.expect_pair()?;
            let round = self.unsplit(x, nu).and_then(|w| self.split(&w));
            back_again.record_eq(&round, &Ok((x.clone(), nu.clone())), || format!("{pair}"));
        }
        let mut bijection = LawCheck::new("split is a bijection onto X x_beta T^alpha_B X", tol);
        let image = FinSet::collect(image);
        bijection.record_eq(&image, &codomain.apex, || {
            format!("image has {} elements, codomain {}", image.len(), codomain.apex.len())
        });
        Ok(vec![there.finish(), back_again.finish(), bijection.finish()])
    }

    /// The middle, lower and outer squares, each checked to be a pullback
    /// against all cones from test objects of size at most `max_test_size`.
    pub fn check_squares(&self, max_test_size: usize) -> Result<Vec<LawReport>> {
        let e = self.require_unit()?.clone();
        let x = &self.x;
        let c0 = &self.triples;
        let c = self.xi_domain()?;
        let split = self.split_codomain()?;
        let tab = self.t_alpha_b()?;
        let e_beta = self.beta.then(&e)?;

        // (pi0, pi1, pi2 p^alpha) : C -> C0
        let down = FinMap::try_new(c.clone(), c0.clone(), |t| {
            let (p, q, w) = t.expect_triple()?;
            Ok(triple(p, q, &self.p_alpha.apply(w)?))
        })?;
        // (1, beta e, beta e) : X -> C0
        let one_ee = FinMap::try_new(x.clone(), c0.clone(), |p| {
            let q = e_beta.apply(p)?;
            Ok(triple(p, &q, &q))
        })?;
        // (beta e, 1, 1) : X -> C0
        let e_one_one = FinMap::try_new(x.clone(), c0.clone(), |p| Ok(triple(&e_beta.apply(p)?, p, p)))?;
        let xi_check = FinMap::try_new(c0.clone(), c0.clone(), |t| {
            let (p, q, r) = t.expect_triple()?;
            let (a, b, v) = self.xi_check(p, q, r)?;
            Ok(triple(&a, &b, &v))
        })?;

        // middle: (pi0, pi1 p^alpha_B, pi1 iota_B) over (1, beta e, beta e)
        let across = FinMap::try_new(split.apex.clone(), c.clone(), |s| {
            let (p, nu) = s.expect_pair()?;
            let w = tab.left.apply(nu)?;
            Ok(triple(p, &self.p_alpha.apply(&w)?, &w))
        })?;
        let middle = check_pullback_square(
            "middle square is a pullback",
            &split.left,
            &across,
            &one_ee,
            &down,
            max_test_size,
        )?;

        let lower = check_pullback_square(
            "lower square is a pullback",
            &e_one_one,
            &FinMap::identity(x),
            &xi_check,
            &one_ee,
            max_test_size,
        )?;

        // outer: (p^alpha beta e, p^alpha, 1) over (beta e, 1, 1)
        let top = FinMap::try_new(self.t_alpha.apex.clone(), c.clone(), |w| {
            let p = self.p_alpha.apply(w)?;
            Ok(triple(&e_beta.apply(&p)?, &p, w))
        })?;
        let outer = check_pullback_square(
            "outer square is a pullback",
            &self.p_alpha,
            &top,
            &e_one_one,
            &down,
            max_test_size,
        )?;
        Ok(vec![middle, lower, outer])
    }

    pub fn tangent(&self) -> &DeltaTangent {
        &self.tangent
    }

    pub fn alpha_codomain(&self) -> &FinSet {
        &self.a
    }

    pub fn beta_codomain(&self) -> &FinSet {
        &self.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> Atom {
        Atom::pair(a.into(), b.into())
    }

    #[test]
    fn pair_pregroupoid_axioms_and_involutions() {
        let pg = FinitePregroupoid::pair(3);
        assert_eq!(pg.composable().len(), 81);
        for r in pg.check_pregroupoid().unwrap() {
            assert!(r.passed, "{r}");
        }
        let r = pg.check_xi_check_involution().unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 81);
        assert!(pg.check_xi_involution().unwrap().passed);
    }

    #[test]
    fn xi_check_examples() {
        let pg = FinitePregroupoid::pair(3);
        // x = y is fixed: (x, x, x o_x z) = (x, x, z)
        assert_eq!(
            pg.xi_check(&p(0, 1), &p(0, 1), &p(0, 2)).unwrap(),
            (p(0, 1), p(0, 1), p(0, 2))
        );
        // z = y: (x, y, y) -> (y, x, x) -> (x, y, y)
        let once = pg.xi_check(&p(0, 1), &p(2, 1), &p(2, 1)).unwrap();
        assert_eq!(once, (p(2, 1), p(0, 1), p(0, 1)));
        assert_eq!(
            pg.xi_check(&once.0, &once.1, &once.2).unwrap(),
            (p(0, 1), p(2, 1), p(2, 1))
        );
        assert!(matches!(
            pg.xi_check(&p(0, 1), &p(0, 2), &p(0, 0)),
            Err(Error::Composability(_))
        ));
    }

    #[test]
    fn xi_of_zero_vector_is_zero() {
        let pg = FinitePregroupoid::pair(2);
        let zero = pg.vector(&p(1, 0), &p(1, 0)).unwrap();
        let (_, _, w) = pg.xi(&p(0, 1), &p(1, 1), &zero).unwrap();
        let target = pg.mu(&p(0, 1), &p(1, 1), &p(1, 0)).unwrap();
        assert_eq!(pg.direction_of(&w).unwrap(), (target.clone(), target));
    }

    #[test]
    fn splitting_pair_pregroupoid() {
        let pg = FinitePregroupoid::pair(2);
        assert_eq!(pg.split_cardinalities().unwrap(), (8, 8));
        for r in pg.check_splitting().unwrap() {
            assert!(r.passed, "{r}");
        }
        for r in pg.check_squares(4).unwrap() {
            assert!(r.passed, "{r}");
        }
        // zero vector at w splits to (w, zero at e(beta w))
        let zero = pg.vector(&p(1, 1), &p(1, 1)).unwrap();
        let (x, nu) = pg.split(&zero).unwrap();
        assert_eq!(x, p(1, 1));
        let w = pg.t_alpha_b().unwrap().left.apply(&nu).unwrap();
        assert_eq!(pg.direction_of(&w).unwrap(), (p(0, 1), p(0, 1)));
        assert_eq!(pg.unsplit(&x, &nu).unwrap(), zero);
    }

    #[test]
    fn non_section_unit() {
        let pg = FinitePregroupoid::pair_padded(2);
        let e = pg.unit().unwrap();
        assert_ne!(
            pg.beta().apply(&e.apply(&Atom::sym("pad")).unwrap()).unwrap(),
            Atom::sym("pad")
        );
        for r in pg.check_pregroupoid().unwrap() {
            assert!(r.passed, "{r}");
        }
        let (a, b) = pg.split_cardinalities().unwrap();
        assert_eq!(a, b);
        assert!(pg.check_splitting().unwrap().iter().all(|r| r.passed));
        assert!(pg.check_squares(3).unwrap().iter().all(|r| r.passed));
    }

    #[test]
    fn groupoid_pregroupoid() {
        let g = FiniteGroupoid::pair(2);
        let pg = FinitePregroupoid::from_groupoid(&g).unwrap();
        assert!(pg.check_pregroupoid().unwrap().iter().all(|r| r.passed));
        assert!(pg.check_splitting().unwrap().iter().all(|r| r.passed));
        // alpha = s and the same pullbacks: T^alpha X = T^sG, T^alpha_B X = T^s_M G
        assert_eq!(pg.t_alpha().apex, g.source_constant().apex);
        assert_eq!(pg.t_alpha_b().unwrap().apex, g.source_constant_at_units().apex);
        let cyclic = FinitePregroupoid::from_groupoid(&FiniteGroupoid::cyclic(3)).unwrap();
        assert!(cyclic.check_pregroupoid().unwrap().iter().all(|r| r.passed));
        assert!(cyclic.check_xi_involution().unwrap().passed);
    }

    #[test]
    fn corrupted_table_fails_axiom_three() {
        let pg = FinitePregroupoid::pair(2);
        let bad = pg.with_composite(&p(0, 1), &p(1, 1), &p(1, 1), p(1, 1)).unwrap();
        let reports = bad.check_pregroupoid().unwrap();
        let ax3 = reports.iter().find(|r| r.law.starts_with("axiom 3")).unwrap();
        assert!(!ax3.passed);
        assert_eq!(ax3.counterexample.as_deref(), Some("((0,1), (1,1))"));
        assert!(!bad.check_xi_check_involution().unwrap().passed);
    }

    #[test]
    fn missing_unit_is_a_configuration_error() {
        let pg = FinitePregroupoid::pair(2);
        let mut table = BTreeMap::new();
        for t in pg.composable().iter() {
            let (a, b, c) = t.as_triple().unwrap();
            table.insert((a.clone(), b.clone(), c.clone()), pg.mu(a, b, c).unwrap());
        }
        let bare = FinitePregroupoid::new(pg.alpha().clone(), pg.beta().clone(), &table, None).unwrap();
        assert!(bare
            .split(&pg.vector(&p(0, 0), &p(0, 0)).unwrap())
            .unwrap_err()
            .is_config());
        assert!(bare.check_squares(2).unwrap_err().is_config());
    }
}
