use super::{InvariantField, SectionOfBase};
use crate::error::{Error, Result};
use crate::jet::{sample_points, ChartedSubbundle, Jet2, SmoothMap};
use crate::tangent::{max_abs_diff, LawCheck, LawReport, SamplePlan, JET_TOLERANCE};

/// Data for a groupoid `G => M` with `G = R^n`, `M = R^m`.
///
/// `compose` is an ambient formula `R^{2n} -> R^n` that is only meaningful
/// on composable pairs `t(g) = s(h)`. `source_fiber : R^{m+k} -> R^n`
/// parametrises the arrows with a given source and is used for sampling.
/// The `T^sG` chart has coordinates `[g, w]` with `w` in `R^k`; the
/// `T^s_M G` chart has coordinates `[m, w]` and, when omitted, is derived
/// from the `T^sG` chart by restricting to `g = e(m)`.
#[derive(Debug, Clone)]
pub struct SmoothGroupoidSpec {
    pub name: String,
    pub source: SmoothMap,
    pub target: SmoothMap,
    pub unit: SmoothMap,
    pub inverse: SmoothMap,
    pub compose: SmoothMap,
    pub source_fiber: SmoothMap,
    pub ts_embed: SmoothMap,
    pub ts_project: SmoothMap,
    pub tsm_charts: Option<(SmoothMap, SmoothMap)>,
}

/// A groupoid in the jet backend with presented source-constant bundles.
///
/// The defining residuals of both charts are built here from `s` and `e`
/// rather than taken from the example, so a wrong chart shows up in the
/// chart laws instead of being trusted.
#[derive(Debug, Clone)]
pub struct SmoothGroupoid {
    name: String,
    n: usize,
    m: usize,
    k: usize,
    source: SmoothMap,
    target: SmoothMap,
    unit: SmoothMap,
    inverse: SmoothMap,
    compose: SmoothMap,
    source_fiber: SmoothMap,
    ts: ChartedSubbundle,
    tsm: ChartedSubbundle,
    mu_s: SmoothMap,
    iota_m: SmoothMap,
    tolerance: f64,
}

fn expect_shape(name: &str, f: &SmoothMap, dom: usize, cod: usize) -> Result<()> {
    if f.dom() != dom || f.cod() != cod {
        return Err(Error::Shape(format!(
            "{name} should be R^{dom} -> R^{cod}, got R^{} -> R^{}",
            f.dom(),
            f.cod()
        )));
    }
    Ok(())
}

impl SmoothGroupoid {
    pub fn new(spec: SmoothGroupoidSpec) -> Result<Self> {
        let n = spec.source.dom();
        let m = spec.source.cod();
        if spec.source_fiber.dom() < m {
            return Err(Error::Shape(
                "source_fiber has fewer inputs than the base dimension".into(),
            ));
        }
        let k = spec.source_fiber.dom() - m;
        expect_shape("target", &spec.target, n, m)?;
        expect_shape("unit", &spec.unit, m, n)?;
        expect_shape("inverse", &spec.inverse, n, n)?;
        expect_shape("compose", &spec.compose, 2 * n, n)?;
        expect_shape("source_fiber", &spec.source_fiber, m + k, n)?;
        expect_shape("T^sG embed", &spec.ts_embed, n + k, 2 * n)?;
        expect_shape("T^sG project", &spec.ts_project, 2 * n, n + k)?;

        let ts_dir = spec.source.tangent().then(&SmoothMap::coordinates(2 * m, m..2 * m))?;
        let ts = ChartedSubbundle::new(
            format!("{} T^sG", spec.name),
            n,
            k,
            spec.ts_embed.clone(),
            spec.ts_project.clone(),
            ts_dir.clone().renamed("Ts direction"),
        )?;

        let (tsm_embed, tsm_project) = match spec.tsm_charts {
            Some(charts) => charts,
            None => {
                let unit = spec.unit.clone();
                let embed = ts.embed.clone();
                let derived_embed = SmoothMap::new("iota^s_M", m + k, 2 * n, move |x| {
                    let mut chart = unit.eval_jets(&x[..m])?;
                    chart.extend_from_slice(&x[m..]);
                    embed.eval_jets(&chart)
                });
                let source = spec.source.clone();
                let project = ts.project.clone();
                let derived_project = SmoothMap::new("T^s_M G chart", 2 * n, m + k, move |x| {
                    let mut out = source.eval_jets(&x[..n])?;
                    out.extend_from_slice(&project.eval_jets(x)?[n..]);
                    Ok(out)
                });
                (derived_embed, derived_project)
            }
        };
        expect_shape("T^s_M G embed", &tsm_embed, m + k, 2 * n)?;
        expect_shape("T^s_M G project", &tsm_project, 2 * n, m + k)?;
        let (source, unit) = (spec.source.clone(), spec.unit.clone());
        let unit_residual = SmoothMap::new("g - e(s g)", 2 * n, n, move |x| {
            let back = unit.eval_jets(&source.eval_jets(&x[..n])?)?;
            Ok(x[..n].iter().zip(&back).map(|(a, b)| *a - *b).collect())
        });
        let tsm = ChartedSubbundle::new(
            format!("{} T^s_M G", spec.name),
            m,
            k,
            tsm_embed,
            tsm_project,
            ts_dir.pair(&unit_residual)?.renamed("T^s_M G residual"),
        )?;

        // mu^s(g, w) = project(T mu (0 g, iota^s w))
        let (embed, project, tmu) = (ts.embed.clone(), ts.project.clone(), spec.compose.tangent());
        let mu_s = SmoothMap::new("mu^s", 2 * n + k, n + k, move |x| {
            let w = embed.eval_jets(&x[n..])?;
            let mut input = x[..n].to_vec();
            input.extend_from_slice(&w[..n]);
            input.extend(std::iter::repeat_n(Jet2::ZERO, n));
            input.extend_from_slice(&w[n..]);
            project.eval_jets(&tmu.eval_jets(&input)?)
        });
        let iota_m = tsm.embed.then(&ts.project)?.renamed("iota_M");

        Ok(SmoothGroupoid {
            name: spec.name,
            n,
            m,
            k,
            source: spec.source,
            target: spec.target,
            unit: spec.unit,
            inverse: spec.inverse,
            compose: spec.compose,
            source_fiber: spec.source_fiber,
            ts,
            tsm,
            mu_s,
            iota_m,
            tolerance: JET_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Dimension of `G`.
    pub fn arrow_dim(&self) -> usize {
        self.n
    }

    /// Dimension of `M`.
    pub fn base_dim(&self) -> usize {
        self.m
    }

    /// Rank of the source-constant bundles.
    pub fn fiber_dim(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> &SmoothMap {
        &self.source
    }

    pub fn target(&self) -> &SmoothMap {
        &self.target
    }

    pub fn unit(&self) -> &SmoothMap {
        &self.unit
    }

    pub fn inverse(&self) -> &SmoothMap {
        &self.inverse
    }

    pub fn compose_map(&self) -> &SmoothMap {
        &self.compose
    }

    pub fn source_fiber(&self) -> &SmoothMap {
        &self.source_fiber
    }

    /// `T^sG`, chart `[g, w]`.
    pub fn ts(&self) -> &ChartedSubbundle {
        &self.ts
    }

    /// `T^s_M G`, chart `[m, w]`.
    pub fn tsm(&self) -> &ChartedSubbundle {
        &self.tsm
    }

    /// `mu^s` on `G x_{t, pi^s} T^sG`, coordinates `[g, w]` with `w` a
    /// `T^sG` chart point. Unchecked: use [`SmoothGroupoid::mu_s`] on
    /// individual points.
    pub fn mu_s_map(&self) -> &SmoothMap {
        &self.mu_s
    }

    /// `iota_M : T^s_M G -> T^sG` in chart coordinates.
    pub fn iota_m(&self) -> &SmoothMap {
        &self.iota_m
    }

    /// `p^s : T^sG -> G` in chart coordinates.
    pub fn p_s(&self) -> SmoothMap {
        self.ts.bundle_projection()
    }

    /// `pi^s : T^sG -> M`.
    pub fn pi_s(&self) -> Result<SmoothMap> {
        self.p_s().then(&self.source)
    }

    /// `mu(g, h)`, checking `t(g) = s(h)`.
    pub fn compose(&self, g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
        let residual = max_abs_diff(&self.target.eval(g)?, &self.source.eval(h)?);
        if !(residual <= self.tolerance) {
            return Err(Error::Composability(format!(
                "t({g:?}) != s({h:?}), residual {residual:e}"
            )));
        }
        self.compose.eval(&[g, h].concat())
    }

    /// `mu^s(g, w)` for a `T^sG` chart point `w`, checking composability and
    /// that the result lies on `T^sG`.
    pub fn mu_s(&self, g: &[f64], w: &[f64]) -> Result<Vec<f64>> {
        let h = &w[..self.n.min(w.len())];
        let residual = max_abs_diff(&self.target.eval(g)?, &self.source.eval(h)?);
        if !(residual <= self.tolerance) {
            return Err(Error::Composability(format!(
                "t(g) != pi^s(w) at g = {g:?}, residual {residual:e}"
            )));
        }
        let chart = self.mu_s.eval(&[g, w].concat())?;
        self.ts.factor(&self.ts.embed.eval(&chart)?, self.tolerance)?;
        Ok(chart)
    }

    /// Sampled points of `M`.
    pub fn sample_base(&self, plan: &SamplePlan) -> Vec<Vec<f64>> {
        sample_points(self.m, plan)
    }

    /// Sampled arrows, each drawn from a sampled source fibre.
    pub fn sample_arrows(&self, plan: &SamplePlan) -> Result<Vec<Vec<f64>>> {
        sample_points(self.m + self.k, plan)
            .iter()
            .map(|x| self.source_fiber.eval(x))
            .collect()
    }

    /// An arrow with source `m` at fibre coordinates `f`.
    pub fn arrow_from(&self, m: &[f64], f: &[f64]) -> Result<Vec<f64>> {
        self.source_fiber.eval(&[m, f].concat())
    }

    /// Sampled composable pairs `(g, h)`: `g` arbitrary, `h` drawn from the
    /// source fibre over `t(g)`.
    pub fn sample_composable(&self, plan: &SamplePlan) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        let (m, k) = (self.m, self.k);
        sample_points(m + 2 * k, plan)
            .iter()
            .map(|x| {
                let g = self.source_fiber.eval(&x[..m + k])?;
                let h = self.arrow_from(&self.target.eval(&g)?, &x[m + k..])?;
                Ok((g, h))
            })
            .collect()
    }

    /// Sampled composable triples.
    pub fn sample_triples(&self, plan: &SamplePlan) -> Result<Vec<[Vec<f64>; 3]>> {
        let (m, k) = (self.m, self.k);
        sample_points(m + 3 * k, plan)
            .iter()
            .map(|x| {
                let g = self.source_fiber.eval(&x[..m + k])?;
                let h = self.arrow_from(&self.target.eval(&g)?, &x[m + k..m + 2 * k])?;
                let l = self.arrow_from(&self.target.eval(&h)?, &x[m + 2 * k..])?;
                Ok([g, h, l])
            })
            .collect()
    }

    /// Sampled points `(g, w)` of `G x_{t, pi^s} T^sG`: for a sampled
    /// composable pair `(g, h)`, `w` is a `T^s_M G` vector at `t(h)`
    /// translated to `h` by `mu^s`, so that `pi^s(w) = s(h) = t(g)`.
    pub fn sample_mu_s_domain(&self, plan: &SamplePlan) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        let pairs = self.sample_composable(plan)?;
        let fibres = sample_points(self.k + 1, plan);
        pairs
            .into_iter()
            .zip(fibres)
            .map(|((g, h), f)| {
                let w = self.translate_from_unit(&h, &f[..self.k])?;
                Ok((g, w))
            })
            .collect()
    }

    /// `mu^s(h, iota_M(t h, f))`: the source-constant vector at `h` with
    /// left-trivialised fibre coordinates `f`.
    pub fn translate_from_unit(&self, h: &[f64], f: &[f64]) -> Result<Vec<f64>> {
        let th = self.target.eval(h)?;
        let at_unit = self.iota_m.eval(&[&th[..], f].concat())?;
        self.mu_s(h, &at_unit)
    }

    /// The section `m |-> [m, f(m)]` of `pi^s_M` for fibre coordinates
    /// `f : R^m -> R^k`.
    pub fn section_from_fibre(&self, f: &SmoothMap) -> Result<SectionOfBase<SmoothMap>> {
        expect_shape("section fibre map", f, self.m, self.k)?;
        let map = SmoothMap::identity(self.m)
            .pair(f)?
            .renamed(format!("section[{}]", f.name()));
        Ok(SectionOfBase(map))
    }

    /// The section with constant fibre coordinates `dir`.
    pub fn constant_section(&self, dir: &[f64]) -> Result<SectionOfBase<SmoothMap>> {
        self.section_from_fibre(&SmoothMap::constant(self.m, dir.to_vec()).renamed(format!("{dir:?}")))
    }

    fn check_section_at(&self, v: &SmoothMap, plan: &SamplePlan) -> Result<LawReport> {
        expect_shape("section", v, self.m, self.m + self.k)?;
        let mut check = LawCheck::new("v;pi^s_M = 1", self.tolerance);
        for x in self.sample_base(plan) {
            let y = v.eval(&x)?;
            check.record(max_abs_diff(&y[..self.m], &x), || format!("{x:?}"));
        }
        Ok(check.finish())
    }

    /// `X;p^s = 1` on sampled arrows.
    pub fn check_field_section(&self, x: &SmoothMap, plan: &SamplePlan) -> Result<LawReport> {
        expect_shape("field", x, self.n, self.n + self.k)?;
        let mut check = LawCheck::new("X;p^s = 1", self.tolerance);
        for g in self.sample_arrows(plan)? {
            let w = x.eval(&g)?;
            check.record(max_abs_diff(&w[..self.n], &g), || format!("{g:?}"));
        }
        Ok(check.finish())
    }

    /// `v^ = (1_G, t;v;iota_M);mu^s`, after checking that `v` is a section
    /// on sampled base points.
    pub fn extend(&self, v: &SectionOfBase<SmoothMap>, plan: &SamplePlan) -> Result<InvariantField<SmoothMap>> {
        let report = self.check_section_at(&v.0, plan)?;
        if !report.passed {
            return Err(Error::NotASection(report.to_string()));
        }
        let n = self.n;
        let vertical = self.target.then(&v.0)?.then(&self.iota_m)?;
        let mu_s = self.mu_s.clone();
        let field = SmoothMap::new(format!("({})^", v.0.name()), n, n + self.k, move |g| {
            let mut input = g.to_vec();
            input.extend(vertical.eval_jets(g)?);
            mu_s.eval_jets(&input)
        });
        Ok(InvariantField(field))
    }

    /// `Xv = e;X` read in the `T^s_M G` chart, after checking that `X` is a
    /// section of `p^s` and that `e;X` lies on `T^s_M G` at sampled points.
    pub fn restrict(&self, x: &InvariantField<SmoothMap>, plan: &SamplePlan) -> Result<SectionOfBase<SmoothMap>> {
        let report = self.check_field_section(&x.0, plan)?;
        if !report.passed {
            return Err(Error::NotASection(report.to_string()));
        }
        let ambient = self.unit.then(&x.0)?.then(&self.ts.embed)?;
        for m in self.sample_base(plan) {
            self.tsm.factor(&ambient.eval(&m)?, self.tolerance)?;
        }
        let section = ambient.then(&self.tsm.project)?.renamed(format!("({})v", x.0.name()));
        Ok(SectionOfBase(section))
    }

    /// Residual of `(pi_0, pi_1 X);mu^s` against `mu;X` on sampled
    /// composable pairs.
    pub fn is_left_invariant(&self, x: &InvariantField<SmoothMap>, plan: &SamplePlan) -> Result<LawReport> {
        expect_shape("field", &x.0, self.n, self.n + self.k)?;
        let mut check = LawCheck::new("left invariance", self.tolerance);
        for (g, h) in self.sample_composable(plan)? {
            let lhs = self.mu_s.eval(&[&g[..], &x.0.eval(&h)?[..]].concat());
            let rhs = x.0.eval(&self.compose.eval(&[&g[..], &h[..]].concat())?);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => check.record(max_abs_diff(&l, &r), || format!("({g:?}, {h:?})")),
                _ => check.record_failure(|| format!("evaluation failed at ({g:?}, {h:?})")),
            }
        }
        Ok(check.finish())
    }

    /// `mu^s;p^s = (pi_0, pi_1 p^s);mu` on sampled points of the domain.
    pub fn check_mu_s_base_law(&self, plan: &SamplePlan) -> Result<LawReport> {
        let mut check = LawCheck::new("mu^s;p^s = (pi0, pi1 p^s);mu", self.tolerance);
        for (g, w) in self.sample_mu_s_domain(plan)? {
            let lhs = self.mu_s(&g, &w)?;
            let rhs = self.compose(&g, &w[..self.n])?;
            check.record(max_abs_diff(&lhs[..self.n], &rhs), || format!("({g:?}, {w:?})"));
        }
        Ok(check.finish())
    }

    /// Groupoid axioms, chart laws and bundle squares on samples.
    pub fn check_groupoid(&self, plan: &SamplePlan) -> Result<Vec<LawReport>> {
        let tol = self.tolerance;
        let (n, m, k) = (self.n, self.m, self.k);
        let cat = |a: &[f64], b: &[f64]| [a, b].concat();

        let mut unit_st = LawCheck::new("s(e m) = m = t(e m)", tol);
        for x in self.sample_base(plan) {
            let e = self.unit.eval(&x)?;
            unit_st.record(max_abs_diff(&self.source.eval(&e)?, &x), || format!("{x:?}"));
            unit_st.record(max_abs_diff(&self.target.eval(&e)?, &x), || format!("{x:?}"));
        }

        let mut fibre = LawCheck::new("s(source_fiber(m, f)) = m", tol);
        for x in sample_points(m + k, plan) {
            let g = self.source_fiber.eval(&x)?;
            fibre.record(max_abs_diff(&self.source.eval(&g)?, &x[..m]), || format!("{x:?}"));
        }

        let mut comp_st = LawCheck::new("s(gh) = s g, t(gh) = t h", tol);
        let mut units = LawCheck::new("unit laws e(s g) g = g = g e(t g)", tol);
        let mut inverses = LawCheck::new("inverse laws", tol);
        for (g, h) in self.sample_composable(plan)? {
            let gh = self.compose.eval(&cat(&g, &h))?;
            comp_st.record(max_abs_diff(&self.source.eval(&gh)?, &self.source.eval(&g)?), || {
                format!("({g:?}, {h:?})")
            });
            comp_st.record(max_abs_diff(&self.target.eval(&gh)?, &self.target.eval(&h)?), || {
                format!("({g:?}, {h:?})")
            });
        }
        for g in self.sample_arrows(plan)? {
            let es = self.unit.eval(&self.source.eval(&g)?)?;
            let et = self.unit.eval(&self.target.eval(&g)?)?;
            units.record(max_abs_diff(&self.compose.eval(&cat(&es, &g))?, &g), || {
                format!("{g:?}")
            });
            units.record(max_abs_diff(&self.compose.eval(&cat(&g, &et))?, &g), || {
                format!("{g:?}")
            });
            let gi = self.inverse.eval(&g)?;
            inverses.record(max_abs_diff(&self.source.eval(&gi)?, &self.target.eval(&g)?), || {
                format!("{g:?}")
            });
            inverses.record(max_abs_diff(&self.target.eval(&gi)?, &self.source.eval(&g)?), || {
                format!("{g:?}")
            });
            inverses.record(max_abs_diff(&self.compose.eval(&cat(&g, &gi))?, &es), || {
                format!("g g^-1 at {g:?}")
            });
            inverses.record(max_abs_diff(&self.compose.eval(&cat(&gi, &g))?, &et), || {
                format!("g^-1 g at {g:?}")
            });
        }

        let mut assoc = LawCheck::new("associativity", tol);
        for [g, h, l] in self.sample_triples(plan)? {
            let lhs = self.compose.eval(&cat(&self.compose.eval(&cat(&g, &h))?, &l))?;
            let rhs = self.compose.eval(&cat(&g, &self.compose.eval(&cat(&h, &l))?))?;
            assoc.record(max_abs_diff(&lhs, &rhs), || format!("({g:?}, {h:?}, {l:?})"));
        }

        let ts_points: Vec<Vec<f64>> = sample_points(m + 2 * k, plan)
            .iter()
            .map(|x| Ok(cat(&self.source_fiber.eval(&x[..m + k])?, &x[m + k..])))
            .collect::<Result<_>>()?;
        let tsm_points = sample_points(m + k, plan);
        let ts_laws = self.ts.check_laws(&ts_points, tol)?;
        let tsm_laws = self.tsm.check_laws(&tsm_points, tol)?;

        let mut bundles = LawCheck::new(
            "bundle squares iota^s;Ts = pi^s;0, iota_M;p^s = pi^s_M;e, q = pi^s_M",
            tol,
        );
        let ts_map = self.source.tangent();
        for w in &ts_points {
            let image = ts_map.eval(&self.ts.embed.eval(w)?)?;
            let base = self.source.eval(&w[..n])?;
            bundles.record(max_abs_diff(&image, &cat(&base, &vec![0.0; m])), || {
                format!("T^sG square at {w:?}")
            });
        }
        for w in &tsm_points {
            let chart = self.iota_m.eval(w)?;
            let e = self.unit.eval(&w[..m])?;
            bundles.record(max_abs_diff(&chart[..n], &e), || format!("T^s_M G square at {w:?}"));
            let q = self.source.eval(&chart[..n])?;
            bundles.record(max_abs_diff(&q, &w[..m]), || format!("q != pi^s_M at {w:?}"));
        }

        Ok(vec![
            unit_st.finish(),
            fibre.finish(),
            comp_st.finish(),
            units.finish(),
            inverses.finish(),
            assoc.finish(),
            ts_laws,
            tsm_laws,
            bundles.finish(),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{affine1, pair_groupoid};

    fn close(a: &[f64], b: &[f64]) -> bool {
        max_abs_diff(a, b) <= 1e-12
    }

    #[test]
    fn affine_mu_s_is_left_translation() {
        let g = affine1();
        // L_(2,1)(c, d) = (2c, 2d + 1) has differential diag(2, 2)
        let w = g.mu_s(&[2.0, 1.0], &[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(close(&w, &[2.0, 1.0, 2.0, 0.0]), "{w:?}");
    }

    #[test]
    fn affine_extend_and_restrict() {
        let g = affine1();
        let plan = SamplePlan::default();
        let v = g.constant_section(&[0.0, 1.0]).unwrap();
        let x = g.extend(&v, &plan).unwrap();
        for (a, b) in [(2.0, 1.0), (0.5, -3.0)] {
            assert!(close(&x.0.eval(&[a, b]).unwrap(), &[a, b, 0.0, a]));
        }
        assert!(g.is_left_invariant(&x, &plan).unwrap().passed);

        let field = SmoothMap::total("(a,0)", 2, 4, |x| vec![x[0], x[1], x[0], Jet2::ZERO]);
        let back = g.restrict(&InvariantField(field), &plan).unwrap();
        assert!(close(&back.0.eval(&[]).unwrap(), &[1.0, 0.0]));
    }

    #[test]
    fn non_invariant_field_detected() {
        let g = affine1();
        let field = SmoothMap::total("(1,0)", 2, 4, |x| vec![x[0], x[1], Jet2::ONE, Jet2::ZERO]);
        let r = g
            .is_left_invariant(&InvariantField(field), &SamplePlan::default())
            .unwrap();
        assert!(!r.passed);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn pair_groupoid_round_trip() {
        let g = pair_groupoid(1);
        let plan = SamplePlan::default();
        let u = SmoothMap::total("m^2", 1, 1, |x| vec![x[0] * x[0]]);
        let v = g.section_from_fibre(&u).unwrap();
        let x = g.extend(&v, &plan).unwrap();
        // u(b) d/db at (a, b)
        assert!(close(&x.0.eval(&[0.3, -1.5]).unwrap(), &[0.3, -1.5, 2.25]));
        assert!(g.is_left_invariant(&x, &plan).unwrap().passed);
        let back = g.restrict(&x, &plan).unwrap();
        for m in g.sample_base(&plan) {
            assert!(close(&back.0.eval(&m).unwrap(), &v.0.eval(&m).unwrap()));
        }
    }

    #[test]
    fn composability_is_checked() {
        let g = pair_groupoid(1);
        assert!(matches!(
            g.compose(&[0.0, 1.0], &[2.0, 3.0]),
            Err(Error::Composability(_))
        ));
        assert!(matches!(
            g.mu_s(&[0.0, 1.0], &[2.0, 3.0, 1.0]),
            Err(Error::Composability(_))
        ));
        assert_eq!(g.compose(&[0.0, 1.0], &[1.0, 3.0]).unwrap(), vec![0.0, 3.0]);
    }

    #[test]
    fn non_section_rejected() {
        let g = pair_groupoid(1);
        let bad = SectionOfBase(SmoothMap::total("shift", 1, 2, |x| vec![x[0] + 1.0, Jet2::ZERO]));
        assert!(matches!(
            g.extend(&bad, &SamplePlan::default()),
            Err(Error::NotASection(_))
        ));
    }

    #[test]
    fn wrong_chart_fails_chart_laws() {
        let n = 1;
        let spec = SmoothGroupoidSpec {
            name: "bad".into(),
            source: SmoothMap::coordinates(2, 0..1),
            target: SmoothMap::coordinates(2, 1..2),
            unit: SmoothMap::total("e", 1, 2, |x| [x, x].concat()),
            inverse: SmoothMap::total("inv", 2, 2, |x| vec![x[1], x[0]]),
            compose: SmoothMap::total("mu", 4, 2, |x| vec![x[0], x[3]]),
            source_fiber: SmoothMap::identity(2),
            // the vector (w, 0) is not source-constant
            ts_embed: SmoothMap::total("bad", 3 * n, 4 * n, |x| vec![x[0], x[1], x[2], Jet2::ZERO]),
            ts_project: SmoothMap::total("bad", 4, 3, |x| vec![x[0], x[1], x[2]]),
            tsm_charts: None,
        };
        let g = SmoothGroupoid::new(spec).unwrap();
        let reports = g.check_groupoid(&SamplePlan::default()).unwrap();
        let failing: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.law.clone()).collect();
        assert!(failing.iter().any(|l| l.contains("T^sG chart laws")), "{failing:?}");
    }
}
