use std::collections::BTreeMap;

use super::{InvariantField, SectionOfBase};
use crate::error::{Error, Result};
use crate::finite::{
    delta_tangent, enumerate_sections, first_difference, pullback, Atom, DeltaTangent, FinMap, FinPullback, FinSet,
    PullbackComparison,
};
use crate::tangent::{LawCheck, LawReport, TangentStructure, FINITE_TOLERANCE};

/// A finite groupoid over the diagonal tangent witness, with its
/// source-constant bundles computed as genuine pullbacks:
///
/// * `T^sG` is the pullback of `Ts : TG -> TM` along `0 : M -> TM`, with
///   legs `iota^s` and `pi^s`; its elements are `((u, g), m)`.
/// * `T^s_M G` is the pullback of `p^s = iota^s;p` along `e : M -> G`,
///   with legs `iota_M` and `pi^s_M`.
#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    objects: FinSet,
    arrows: FinSet,
    source: FinMap,
    target: FinMap,
    unit: FinMap,
    inverse: FinMap,
    composable: FinPullback,
    compose: FinMap,
    tangent: DeltaTangent,
    ts: FinPullback,
    p_s: FinMap,
    tsm: FinPullback,
    t_compose: FinMap,
    comparison: PullbackComparison,
}

/// Result of enumerating both sides of the section/invariant-field
/// bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionCount {
    pub sections: usize,
    pub invariant_fields: usize,
    /// `(v^)v = v` for every section.
    pub sections_round_trip: bool,
    /// `(Xv)^ = X` for every left-invariant field.
    pub fields_round_trip: bool,
    /// Every extension is left invariant and distinct sections extend to
    /// distinct fields.
    pub extension_injective: bool,
}

impl BijectionCount {
    pub fn is_bijection(&self) -> bool {
        self.sections == self.invariant_fields
            && self.sections_round_trip
            && self.fields_round_trip
            && self.extension_injective
    }
}

impl FiniteGroupoid {
    /// Builds a groupoid from its tables. The composition table must cover
    /// every pair `(g, h)` with `t(g) = s(h)`; axioms are not checked here
    /// (see [`FiniteGroupoid::check_groupoid`]).
    pub fn new(
        objects: FinSet,
        arrows: FinSet,
        source: FinMap,
        target: FinMap,
        unit: FinMap,
        inverse: FinMap,
        compose: &BTreeMap<(Atom, Atom), Atom>,
    ) -> Result<Self> {
        for (name, f, dom, cod) in [
            ("source", &source, &arrows, &objects),
            ("target", &target, &arrows, &objects),
            ("identity", &unit, &objects, &arrows),
            ("inverse", &inverse, &arrows, &arrows),
        ] {
            if f.domain() != dom || f.codomain() != cod {
                return Err(Error::Shape(format!("{name} map has the wrong domain or codomain")));
            }
        }
        let composable = pullback(&target, &source)?;
        for (g, h) in compose.keys() {
            if composable.factor(g, h).is_none() {
                return Err(Error::Composability(format!(
                    "mu table entry for ({g}, {h}) with t({g}) != s({h})"
                )));
            }
        }
        let compose = FinMap::try_new(composable.apex.clone(), arrows.clone(), |x| {
            let (g, h) = x.expect_pair()?;
            compose
                .get(&(g.clone(), h.clone()))
                .cloned()
                .ok_or_else(|| Error::Shape(format!("incomplete mu table: no entry for ({g}, {h})")))
        })?;

        let tangent = delta_tangent();
        let ts = pullback(&tangent.t_map(&source), &tangent.zero(&objects))?;
        let p_s = ts.left.then(&tangent.projection(&arrows))?;
        let tsm = pullback(&p_s, &unit)?;
        let t_compose = tangent.t_map(&compose);
        let comparison = tangent.compare_pullback(&composable)?;
        if !comparison.is_iso() {
            return Err(Error::Config(
                "T does not preserve the composable-pairs pullback".into(),
            ));
        }
        Ok(FiniteGroupoid {
            objects,
            arrows,
            source,
            target,
            unit,
            inverse,
            composable,
            compose,
            tangent,
            ts,
            p_s,
            tsm,
            t_compose,
            comparison,
        })
    }

    /// The pair groupoid on `{0, .., n-1}`: arrows `(a, b)` with source `a`,
    /// target `b`, and `(a, b)(b, c) = (a, c)`.
    pub fn pair(n: usize) -> Self {
        let objects = FinSet::range(n);
        let arrows = objects.product(&objects);
        let first = |x: &Atom| x.as_pair().expect("pair").0.clone();
        let second = |x: &Atom| x.as_pair().expect("pair").1.clone();
        let source = FinMap::new(arrows.clone(), objects.clone(), first).expect("source");
        let target = FinMap::new(arrows.clone(), objects.clone(), second).expect("target");
        let unit = FinMap::new(objects.clone(), arrows.clone(), |m| Atom::pair(m.clone(), m.clone())).expect("unit");
        let inverse = FinMap::new(arrows.clone(), arrows.clone(), |x| {
            let (a, b) = x.as_pair().expect("pair");
            Atom::pair(b.clone(), a.clone())
        })
        .expect("inverse");
        let mut compose = BTreeMap::new();
        for a in objects.iter() {
            for b in objects.iter() {
                for c in objects.iter() {
                    compose.insert(
                        (Atom::pair(a.clone(), b.clone()), Atom::pair(b.clone(), c.clone())),
                        Atom::pair(a.clone(), c.clone()),
                    );
                }
            }
        }
        Self::new(objects, arrows, source, target, unit, inverse, &compose).expect("pair groupoid")
    }

    /// The cyclic group `Z/n` as a one-object groupoid.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let point = FinSet::singleton(Atom::sym("*"));
        let arrows = FinSet::range(n);
        let to_point = FinMap::new(arrows.clone(), point.clone(), |_| Atom::sym("*")).expect("to point");
        let unit = FinMap::new(point.clone(), arrows.clone(), |_| Atom::Int(0)).expect("unit");
        let k = n as i64;
        let int = |a: &Atom| match a {
            Atom::Int(i) => *i,
            _ => unreachable!("cyclic arrows are integers"),
        };
        let inverse = FinMap::new(arrows.clone(), arrows.clone(), |a| Atom::Int((k - int(a)) % k)).expect("inverse");
        let mut compose = BTreeMap::new();
        for g in arrows.iter() {
            for h in arrows.iter() {
                compose.insert((g.clone(), h.clone()), Atom::Int((int(g) + int(h)) % k));
            }
        }
        Self::new(point, arrows, to_point.clone(), to_point, unit, inverse, &compose).expect("cyclic group")
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn arrows(&self) -> &FinSet {
        &self.arrows
    }

    pub fn source(&self) -> &FinMap {
        &self.source
    }

    pub fn target(&self) -> &FinMap {
        &self.target
    }

    pub fn unit(&self) -> &FinMap {
        &self.unit
    }

    pub fn inverse(&self) -> &FinMap {
        &self.inverse
    }

    /// `G x_{t,s} G`.
    pub fn composable(&self) -> &FinPullback {
        &self.composable
    }

    pub fn compose_map(&self) -> &FinMap {
        &self.compose
    }

    pub fn compose(&self, g: &Atom, h: &Atom) -> Result<Atom> {
        let pair = self
            .composable
            .factor(g, h)
            .ok_or_else(|| Error::Composability(format!("({g}, {h})")))?;
        self.compose.apply(&pair)
    }

    pub fn tangent(&self) -> &DeltaTangent {
        &self.tangent
    }

    /// `T^sG` with legs `iota^s` (left) and `pi^s` (right).
    pub fn source_constant(&self) -> &FinPullback {
        &self.ts
    }

    /// `p^s = iota^s ; p`.
    pub fn p_s(&self) -> &FinMap {
        &self.p_s
    }

    /// `T^s_M G` with legs `iota_M` (left) and `pi^s_M` (right).
    pub fn source_constant_at_units(&self) -> &FinPullback {
        &self.tsm
    }

    /// `mu^s(g, w)`: the factorisation of `(0 g, iota^s w) ; Tmu` through
    /// `iota^s`, with `M`-leg `s(g)`.
    pub fn mu_s(&self, g: &Atom, w: &Atom) -> Result<Atom> {
        let base = self.ts.right.apply(w)?;
        let tg = self.target.apply(g)?;
        if tg != base {
            return Err(Error::Composability(format!("t({g}) = {tg} but pi^s({w}) = {base}")));
        }
        let zero_g = self.tangent.zero(&self.arrows).apply(g)?;
        let vector = self.ts.left.apply(w)?;
        let in_pullback = Atom::pair(zero_g, vector);
        let lifted = self.t_compose.apply(&self.comparison.pull(&in_pullback)?)?;
        let sg = self.source.apply(g)?;
        self.ts.factor(&lifted, &sg).ok_or_else(|| Error::ChartResidual {
            chart: "T^sG".into(),
            residual: 1.0,
            tolerance: FINITE_TOLERANCE,
        })
    }

    /// `G x_{t, pi^s} T^sG`, the domain of `mu^s`.
    pub fn mu_s_domain(&self) -> Result<FinPullback> {
        pullback(&self.target, &self.ts.right)
    }

    pub fn mu_s_map(&self) -> Result<FinMap> {
        let dom = self.mu_s_domain()?;
        FinMap::try_new(dom.apex.clone(), self.ts.apex.clone(), |x| {
            let (g, w) = x.expect_pair()?;
            self.mu_s(g, w)
        })
    }

    fn require_section(&self, v: &FinMap) -> Result<()> {
        if v.domain() != &self.objects || v.codomain() != &self.tsm.apex {
            return Err(Error::Shape("section must be a map M -> T^s_M G".into()));
        }
        if let Some(m) = first_difference(&v.then(&self.tsm.right)?, &FinMap::identity(&self.objects))? {
            return Err(Error::NotASection(format!("v;pi^s_M differs from the identity at {m}")));
        }
        Ok(())
    }

    fn require_field(&self, x: &FinMap) -> Result<()> {
        if x.domain() != &self.arrows || x.codomain() != &self.ts.apex {
            return Err(Error::Shape("field must be a map G -> T^sG".into()));
        }
        if let Some(g) = first_difference(&x.then(&self.p_s)?, &FinMap::identity(&self.arrows))? {
            return Err(Error::NotASection(format!("X;p^s differs from the identity at {g}")));
        }
        Ok(())
    }

    /// `v^ = (1_G, t;v;iota_M) ; mu^s`.
    pub fn extend(&self, v: &SectionOfBase<FinMap>) -> Result<InvariantField<FinMap>> {
        self.require_section(&v.0)?;
        let iota_m = &self.tsm.left;
        let field = FinMap::try_new(self.arrows.clone(), self.ts.apex.clone(), |g| {
            let w = iota_m.apply(&v.0.apply(&self.target.apply(g)?)?)?;
            self.mu_s(g, &w)
        })?;
        Ok(InvariantField(field))
    }

    /// `Xv`: the factorisation of `(1_M, e;X)` through `T^s_M G`.
    pub fn restrict(&self, x: &InvariantField<FinMap>) -> Result<SectionOfBase<FinMap>> {
        self.require_field(&x.0)?;
        let section = FinMap::try_new(self.objects.clone(), self.tsm.apex.clone(), |m| {
            let w = x.0.apply(&self.unit.apply(m)?)?;
            self.tsm.factor(&w, m).ok_or_else(|| Error::ChartResidual {
                chart: "T^s_M G".into(),
                residual: 1.0,
                tolerance: FINITE_TOLERANCE,
            })
        })?;
        Ok(SectionOfBase(section))
    }

    /// Residual of `(pi_0, pi_1 X) ; mu^s` against `mu ; X` over all
    /// composable pairs.
    pub fn is_left_invariant(&self, x: &InvariantField<FinMap>) -> Result<LawReport> {
        self.require_field(&x.0)?;
        let mut check = LawCheck::new("left invariance", FINITE_TOLERANCE);
        for pair in self.composable.apex.iter() {
            let (g, h) = pair.expect_pair()?;
            let lhs = self.mu_s(g, &x.0.apply(h)?)?;
            let rhs = x.0.apply(&self.compose.apply(pair)?)?;
            check.record_eq(&lhs, &rhs, || format!("({g}, {h})"));
        }
        Ok(check.finish())
    }

    fn invariant_exact(&self, x: &FinMap) -> Result<bool> {
        for pair in self.composable.apex.iter() {
            let (g, h) = pair.expect_pair()?;
            if self.mu_s(g, &x.apply(h)?)? != x.apply(&self.compose.apply(pair)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `mu^s` and the composable pairs in index form, for the exhaustive
    /// search over sections of `p^s`.
    fn index_tables(&self) -> Result<IndexTables> {
        let arrows = self.arrows.atoms();
        let vectors = self.ts.apex.atoms();
        let arrow_ix = |a: &Atom| self.arrows.index_of(a).expect("arrow");
        let vector_ix = |w: &Atom| self.ts.apex.index_of(w).expect("vector");
        let mut fibres = vec![Vec::new(); arrows.len()];
        for (i, w) in vectors.iter().enumerate() {
            fibres[arrow_ix(&self.p_s.apply(w)?)].push(i);
        }
        let mut mu = vec![None; arrows.len() * vectors.len()];
        for x in self.mu_s_domain()?.apex.iter() {
            let (g, w) = x.expect_pair()?;
            mu[arrow_ix(g) * vectors.len() + vector_ix(w)] = Some(vector_ix(&self.mu_s(g, w)?));
        }
        let mut constraints = vec![Vec::new(); arrows.len()];
        for pair in self.composable.apex.iter() {
            let (g, h) = pair.expect_pair()?;
            let (g, h, gh) = (arrow_ix(g), arrow_ix(h), arrow_ix(&self.compose.apply(pair)?));
            // checked once both X(h) and X(gh) are assigned
            constraints[h.max(gh)].push((g, h, gh));
        }
        Ok(IndexTables {
            width: vectors.len(),
            fibres,
            mu,
            constraints,
        })
    }
    /// `Gamma(M, T^s_M G)`, in canonical order.
    pub fn sections(&self) -> Vec<SectionOfBase<FinMap>> {
        enumerate_sections(&self.tsm.right)
            .into_iter()
            .map(SectionOfBase)
            .collect()
    }

    /// `LeftInv(G, T^sG)`: sections of `p^s` that are left invariant, in
    /// canonical order. The search is exhaustive over sections of `p^s`,
    /// abandoning a partial assignment as soon as an invariance square
    /// between assigned arrows fails.
    pub fn left_invariant_fields(&self) -> Result<Vec<InvariantField<FinMap>>> {
        let tables = self.index_tables()?;
        let mut found = Vec::new();
        let mut choice = Vec::with_capacity(tables.fibres.len());
        tables.search(&mut choice, &mut found);
        let arrows = self.arrows.atoms();
        let vectors = self.ts.apex.atoms();
        found
            .into_iter()
            .map(|choice| {
                let table = arrows
                    .iter()
                    .cloned()
                    .zip(choice.iter().map(|&i| vectors[i].clone()))
                    .collect();
                Ok(InvariantField(FinMap::from_table(
                    self.arrows.clone(),
                    self.ts.apex.clone(),
                    table,
                )?))
            })
            .collect()
    }

    /// Enumerates both sides of the bijection and checks both round trips
    /// exhaustively.
    pub fn count_bijection(&self) -> Result<BijectionCount> {
        let sections = self.sections();
        let fields = self.left_invariant_fields()?;
        let mut sections_round_trip = true;
        let mut extension_injective = true;
        let mut extended = Vec::with_capacity(sections.len());
        for v in &sections {
            let x = self.extend(v)?;
            extension_injective &= self.invariant_exact(&x.0)?;
            sections_round_trip &= self.restrict(&x)?.0 == v.0;
            extended.push(x.0);
        }
        extended.sort_by(|a, b| a.table().cmp(b.table()));
        extended.dedup();
        extension_injective &= extended.len() == sections.len();
        let mut fields_round_trip = true;
        for x in &fields {
            fields_round_trip &= self.extend(&self.restrict(x)?)?.0 == x.0;
        }
        Ok(BijectionCount {
            sections: sections.len(),
            invariant_fields: fields.len(),
            sections_round_trip,
            fields_round_trip,
            extension_injective,
        })
    }

    /// Groupoid axioms and bundle laws, exhaustively.
    pub fn check_groupoid(&self) -> Result<Vec<LawReport>> {
        let tol = FINITE_TOLERANCE;
        let (s, t, e, inv) = (&self.source, &self.target, &self.unit, &self.inverse);
        let mut unit_st = LawCheck::new("s(e m) = m = t(e m)", tol);
        for m in self.objects.iter() {
            let em = e.apply(m)?;
            unit_st.record_eq(&s.apply(&em)?, m, || format!("{m}"));
            unit_st.record_eq(&t.apply(&em)?, m, || format!("{m}"));
        }
        let mut comp_st = LawCheck::new("s(gh) = s g, t(gh) = t h", tol);
        for pair in self.composable.apex.iter() {
            let (g, h) = pair.expect_pair()?;
            let gh = self.compose.apply(pair)?;
            comp_st.record_eq(&s.apply(&gh)?, &s.apply(g)?, || format!("({g}, {h})"));
            comp_st.record_eq(&t.apply(&gh)?, &t.apply(h)?, || format!("({g}, {h})"));
        }
        let mut units = LawCheck::new("unit laws e(s g) g = g = g e(t g)", tol);
        let mut inverses = LawCheck::new("inverse laws", tol);
        for g in self.arrows.iter() {
            let left = self.compose(&e.apply(&s.apply(g)?)?, g);
            let right = self.compose(g, &e.apply(&t.apply(g)?)?);
            units.record_eq(&left, &Ok(g.clone()), || format!("{g}"));
            units.record_eq(&right, &Ok(g.clone()), || format!("{g}"));
            let gi = inv.apply(g)?;
            inverses.record_eq(&s.apply(&gi)?, &t.apply(g)?, || format!("s of inverse at {g}"));
            inverses.record_eq(&t.apply(&gi)?, &s.apply(g)?, || format!("t of inverse at {g}"));
            inverses.record_eq(&self.compose(g, &gi), &e.apply(&s.apply(g)?), || {
                format!("g g^-1 at {g}")
            });
            inverses.record_eq(&self.compose(&gi, g), &e.apply(&t.apply(g)?), || {
                format!("g^-1 g at {g}")
            });
        }
        let mut assoc = LawCheck::new("associativity", tol);
        for pair in self.composable.apex.iter() {
            let (g, h) = pair.expect_pair()?;
            for k in self.arrows.iter() {
                if t.apply(h)? != s.apply(k)? {
                    continue;
                }
                let lhs = self.compose(&self.compose(g, h)?, k);
                let rhs = self.compose(g, &self.compose(h, k)?);
                assoc.record_eq(&lhs, &rhs, || format!("({g}, {h}, {k})"));
            }
        }

        let tg = &self.tangent;
        let mut bundles = LawCheck::new(
            "bundle squares iota^s;Ts = pi^s;0, iota_M;p^s = pi^s_M;e, q = pi^s_M",
            tol,
        );
        let ts_map = tg.t_map(s);
        let zero_m = tg.zero(&self.objects);
        for w in self.ts.apex.iter() {
            let lhs = ts_map.apply(&self.ts.left.apply(w)?)?;
            let rhs = zero_m.apply(&self.ts.right.apply(w)?)?;
            bundles.record_eq(&lhs, &rhs, || format!("T^sG square at {w}"));
        }
        for w in self.tsm.apex.iter() {
            let lhs = self.p_s.apply(&self.tsm.left.apply(w)?)?;
            let base = self.tsm.right.apply(w)?;
            bundles.record_eq(&lhs, &e.apply(&base)?, || format!("T^s_M G square at {w}"));
            // the double-pullback leg q : T^s_M G -> M with iota^s_M;Ts = q;0
            // coincides with pi^s_M
            let vector = self.ts.left.apply(&self.tsm.left.apply(w)?)?;
            let q = self.ts.right.apply(&self.tsm.left.apply(w)?)?;
            bundles.record_eq(&ts_map.apply(&vector)?, &zero_m.apply(&q)?, || {
                format!("double pullback at {w}")
            });
            bundles.record_eq(&q, &base, || format!("q != pi^s_M at {w}"));
        }

        Ok(vec![
            unit_st.finish(),
            comp_st.finish(),
            units.finish(),
            inverses.finish(),
            assoc.finish(),
            bundles.finish(),
        ])
    }

    /// `mu^s ; p^s = (pi_0, pi_1 p^s) ; mu` on all of `G x_{t,pi^s} T^sG`.
    pub fn check_mu_s_base_law(&self) -> Result<LawReport> {
        let mut check = LawCheck::new("mu^s;p^s = (pi0, pi1 p^s);mu", FINITE_TOLERANCE);
        for x in self.mu_s_domain()?.apex.iter() {
            let (g, w) = x.expect_pair()?;
            let lhs = self.p_s.apply(&self.mu_s(g, w)?)?;
            let rhs = self.compose(g, &self.p_s.apply(w)?)?;
            check.record_eq(&lhs, &rhs, || format!("({g}, {w})"));
        }
        Ok(check.finish())
    }

    /// Replaces one composite; used to build corrupted examples.
    pub fn with_composite(&self, g: &Atom, h: &Atom, gh: Atom) -> Result<Self> {
        let mut table: BTreeMap<(Atom, Atom), Atom> = BTreeMap::new();
        for pair in self.composable.apex.iter() {
            let (a, b) = pair.expect_pair()?;
            table.insert((a.clone(), b.clone()), self.compose.apply(pair)?);
        }
        table.insert((g.clone(), h.clone()), gh);
        Self::new(
            self.objects.clone(),
            self.arrows.clone(),
            self.source.clone(),
            self.target.clone(),
            self.unit.clone(),
            self.inverse.clone(),
            &table,
        )
    }

    /// Element of `T^sG` with direction `u` at arrow `g`.
    pub fn vector(&self, u: &Atom, g: &Atom) -> Result<Atom> {
        let sg = self.source.apply(g)?;
        self.ts
            .factor(&Atom::pair(u.clone(), g.clone()), &sg)
            .ok_or_else(|| Error::NotInCarrier {
                element: format!("({u},{g})"),
                set: "T^sG".into(),
            })
    }

    /// Element of `T^s_M G` with direction `u` at `e(m)`.
    pub fn vector_at_unit(&self, u: &Atom, m: &Atom) -> Result<Atom> {
        let w = self.vector(u, &self.unit.apply(m)?)?;
        self.tsm.factor(&w, m).ok_or_else(|| Error::NotInCarrier {
            element: format!("({u},{m})"),
            set: "T^s_M G".into(),
        })
    }

    /// Direction and base arrow of an element of `T^sG`.
    pub fn direction_of(&self, w: &Atom) -> Result<(Atom, Atom)> {
        let (u, g) = self
            .ts
            .left
            .apply(w)?
            .expect_pair()
            .map(|(u, g)| (u.clone(), g.clone()))?;
        Ok((u, g))
    }
}

struct IndexTables {
    width: usize,
    fibres: Vec<Vec<usize>>,
    mu: Vec<Option<usize>>,
    constraints: Vec<Vec<(usize, usize, usize)>>,
}

impl IndexTables {
    fn search(&self, choice: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        let next = choice.len();
        if next == self.fibres.len() {
            found.push(choice.clone());
            return;
        }
        for &w in &self.fibres[next] {
            choice.push(w);
            let ok = self.constraints[next]
                .iter()
                .all(|&(g, h, gh)| self.mu[g * self.width + choice[h]] == Some(choice[gh]));
            if ok {
                self.search(choice, found);
            }
            choice.pop();
        }
    }
}
