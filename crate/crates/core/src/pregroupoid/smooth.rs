use crate::error::{Error, Result};
use crate::groupoid::SmoothGroupoid;
use crate::jet::{sample_points, ChartedSubbundle, SmoothMap};
use crate::tangent::{max_abs_diff, LawCheck, LawReport, SamplePlan, JET_TOLERANCE};

/// Data for a pregroupoid on `X = R^n` with `A = R^a`, `B = R^b`.
///
/// `compose : R^{3n} -> R^n` is an ambient formula for `x o_y z`.
/// `alpha_fiber : R^{a+k} -> R^n` and `beta_fiber : R^{b+j} -> R^n`
/// parametrise the fibres of `alpha` and `beta` and are used for sampling.
/// The `T^alpha X` chart is `[x, w]` with `w` in `R^k`; the `T^alpha_B X`
/// chart `[b, w]` is derived from it when omitted, which requires `e` to be
/// a section of `beta`.
#[derive(Debug, Clone)]
pub struct SmoothPregroupoidSpec {
    pub name: String,
    pub alpha: SmoothMap,
    pub beta: SmoothMap,
    pub compose: SmoothMap,
    pub unit: Option<SmoothMap>,
    pub alpha_fiber: SmoothMap,
    pub beta_fiber: SmoothMap,
    pub ta_embed: SmoothMap,
    pub ta_project: SmoothMap,
    pub tab_charts: Option<(SmoothMap, SmoothMap)>,
}

/// A pregroupoid in the jet backend. Points of `T^alpha X` and
/// `T^alpha_B X` are handled in chart coordinates.
#[derive(Debug, Clone)]
pub struct SmoothPregroupoid {
    name: String,
    n: usize,
    a: usize,
    b: usize,
    k: usize,
    alpha: SmoothMap,
    beta: SmoothMap,
    compose: SmoothMap,
    t_compose: SmoothMap,
    unit: Option<SmoothMap>,
    alpha_fiber: SmoothMap,
    beta_fiber: SmoothMap,
    ta: ChartedSubbundle,
    tab: Option<ChartedSubbundle>,
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

type Triple = (Vec<f64>, Vec<f64>, Vec<f64>);

impl SmoothPregroupoid {
    pub fn new(spec: SmoothPregroupoidSpec) -> Result<Self> {
        let n = spec.alpha.dom();
        let (a, b) = (spec.alpha.cod(), spec.beta.cod());
        if spec.alpha_fiber.dom() < a {
            return Err(Error::Shape("alpha_fiber has fewer inputs than dim A".into()));
        }
        let k = spec.alpha_fiber.dom() - a;
        expect_shape("beta", &spec.beta, n, b)?;
        expect_shape("compose", &spec.compose, 3 * n, n)?;
        expect_shape("alpha_fiber", &spec.alpha_fiber, a + k, n)?;
        if spec.beta_fiber.dom() < b || spec.beta_fiber.cod() != n {
            return Err(Error::Shape("beta_fiber should be R^{b+j} -> X".into()));
        }
        expect_shape("T^alpha X embed", &spec.ta_embed, n + k, 2 * n)?;
        expect_shape("T^alpha X project", &spec.ta_project, 2 * n, n + k)?;
        if let Some(e) = &spec.unit {
            expect_shape("e", e, b, n)?;
        }

        let ta_dir = spec.alpha.tangent().then(&SmoothMap::coordinates(2 * a, a..2 * a))?;
        let ta = ChartedSubbundle::new(
            format!("{} T^alpha X", spec.name),
            n,
            k,
            spec.ta_embed.clone(),
            spec.ta_project.clone(),
            ta_dir.clone().renamed("T alpha direction"),
        )?;

        let tab = match &spec.unit {
            None => None,
            Some(unit) => {
                let (embed, project) = match spec.tab_charts.clone() {
                    Some(charts) => charts,
                    None => {
                        let (unit, ta_embed) = (unit.clone(), ta.embed.clone());
                        let derived_embed = SmoothMap::new("iota^alpha_B", b + k, 2 * n, move |x| {
                            let mut chart = unit.eval_jets(&x[..b])?;
                            chart.extend_from_slice(&x[b..]);
                            ta_embed.eval_jets(&chart)
                        });
                        let (beta, ta_project) = (spec.beta.clone(), ta.project.clone());
                        let derived_project = SmoothMap::new("T^alpha_B X chart", 2 * n, b + k, move |x| {
                            let mut out = beta.eval_jets(&x[..n])?;
                            out.extend_from_slice(&ta_project.eval_jets(x)?[n..]);
                            Ok(out)
                        });
                        (derived_embed, derived_project)
                    }
                };
                let (beta, unit2) = (spec.beta.clone(), unit.clone());
                let unit_residual = SmoothMap::new("x - e(beta x)", 2 * n, n, move |x| {
                    let back = unit2.eval_jets(&beta.eval_jets(&x[..n])?)?;
                    Ok(x[..n].iter().zip(&back).map(|(p, q)| *p - *q).collect())
                });
                Some(ChartedSubbundle::new(
                    format!("{} T^alpha_B X", spec.name),
                    b,
                    k,
                    embed,
                    project,
                    ta_dir.pair(&unit_residual)?.renamed("T^alpha_B X residual"),
                )?)
            }
        };

        Ok(SmoothPregroupoid {
            name: spec.name,
            n,
            a,
            b,
            k,
            t_compose: spec.compose.tangent(),
            alpha: spec.alpha,
            beta: spec.beta,
            compose: spec.compose,
            unit: spec.unit,
            alpha_fiber: spec.alpha_fiber,
            beta_fiber: spec.beta_fiber,
            ta,
            tab,
            tolerance: JET_TOLERANCE,
        })
    }

    /// The pregroupoid of a groupoid: `alpha = s`, `beta = t`,
    /// `x o_y z = x y^-1 z`, `e` the identities; the charts are those of
    /// `T^sG`.
    pub fn from_groupoid(g: &SmoothGroupoid) -> Result<Self> {
        let n = g.arrow_dim();
        let (mu, inv) = (g.compose_map().clone(), g.inverse().clone());
        let compose = SmoothMap::new("x y^-1 z", 3 * n, n, move |x| {
            let mut xy = x[..n].to_vec();
            xy.extend(inv.eval_jets(&x[n..2 * n])?);
            let mut xyz = mu.eval_jets(&xy)?;
            xyz.extend_from_slice(&x[2 * n..]);
            mu.eval_jets(&xyz)
        });
        Self::new(SmoothPregroupoidSpec {
            name: format!("{} as a pregroupoid", g.name()),
            alpha: g.source().clone(),
            beta: g.target().clone(),
            compose,
            unit: Some(g.unit().clone()),
            alpha_fiber: g.source_fiber().clone(),
            beta_fiber: g.source_fiber().then(g.inverse())?,
            ta_embed: g.ts().embed.clone(),
            ta_project: g.ts().project.clone(),
            tab_charts: None,
        })
        .map(|p| p.with_tolerance(g.tolerance()))
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

    pub fn carrier_dim(&self) -> usize {
        self.n
    }

    pub fn fiber_dim(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &SmoothMap {
        &self.alpha
    }

    pub fn beta(&self) -> &SmoothMap {
        &self.beta
    }

    pub fn compose_map(&self) -> &SmoothMap {
        &self.compose
    }

    pub fn unit(&self) -> Option<&SmoothMap> {
        self.unit.as_ref()
    }

    /// `T^alpha X`, chart `[x, w]`.
    pub fn t_alpha(&self) -> &ChartedSubbundle {
        &self.ta
    }

    /// `T^alpha_B X`, chart `[b, w]`.
    pub fn t_alpha_b(&self) -> Result<&ChartedSubbundle> {
        self.tab
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{} has no e : B -> X", self.name)))
    }

    fn require_unit(&self) -> Result<&SmoothMap> {
        self.unit
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{} has no e : B -> X", self.name)))
    }

    fn near(&self, p: &[f64], q: &[f64], what: &str) -> Result<()> {
        let residual = max_abs_diff(p, q);
        if !(residual <= self.tolerance) {
            return Err(Error::Composability(format!("{what}: residual {residual:e}")));
        }
        Ok(())
    }

    /// `x o_y z`, checking composability.
    pub fn mu(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
        self.near(&self.beta.eval(x)?, &self.beta.eval(y)?, "beta x != beta y")?;
        self.near(&self.alpha.eval(y)?, &self.alpha.eval(z)?, "alpha y != alpha z")?;
        self.compose.eval(&[x, y, z].concat())
    }

    pub fn xi_check(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<Triple> {
        Ok((y.to_vec(), x.to_vec(), self.mu(x, y, z)?))
    }

    /// `xi(x, y, w) = (y, x, (0x, 0y, iota^alpha w);T mu)` for a `T^alpha X`
    /// chart point `w`; the result is factored through the chart.
    pub fn xi(&self, x: &[f64], y: &[f64], w: &[f64]) -> Result<Triple> {
        let n = self.n;
        self.near(&self.beta.eval(x)?, &self.beta.eval(y)?, "beta x != beta y")?;
        self.near(
            &self.alpha.eval(y)?,
            &self.alpha.eval(&w[..n])?,
            "alpha y != pi^alpha w",
        )?;
        let tw = self.ta.embed.eval(w)?;
        let input = [x, y, &tw[..n], &vec![0.0; 2 * n], &tw[n..]].concat();
        let image = self.t_compose.eval(&input)?;
        Ok((y.to_vec(), x.to_vec(), self.ta.factor(&image, self.tolerance)?))
    }

    fn e_beta(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.require_unit()?.eval(&self.beta.eval(x)?)
    }

    /// `w |-> (x, nu)`: `x = p^alpha w` and `nu` the `T^alpha_B X` chart
    /// point of the third component of `xi(e(beta x), x, w)`.
    pub fn split(&self, w: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let tab = self.t_alpha_b()?;
        let x = w[..self.n].to_vec();
        let (_, _, translated) = self.xi(&self.e_beta(&x)?, &x, w)?;
        let nu = tab.factor(&self.ta.embed.eval(&translated)?, self.tolerance)?;
        Ok((x, nu))
    }

    /// Inverse of [`SmoothPregroupoid::split`].
    pub fn unsplit(&self, x: &[f64], nu: &[f64]) -> Result<Vec<f64>> {
        let tab = self.t_alpha_b()?;
        self.near(&self.beta.eval(x)?, &nu[..self.b], "beta x != pi^alpha_B nu")?;
        let w = self.ta.project.eval(&tab.embed.eval(nu)?)?;
        let (_, _, omega) = self.xi(x, &self.e_beta(x)?, &w)?;
        Ok(omega)
    }

    /// A point of `X` with `alpha = a` and fibre coordinates `f`.
    pub fn point_over_alpha(&self, a: &[f64], f: &[f64]) -> Result<Vec<f64>> {
        self.alpha_fiber.eval(&[a, f].concat())
    }

    /// A point of `X` with `beta = b` and fibre coordinates `f`.
    pub fn point_over_beta(&self, b: &[f64], f: &[f64]) -> Result<Vec<f64>> {
        self.beta_fiber.eval(&[b, f].concat())
    }

    fn beta_fiber_dim(&self) -> usize {
        self.beta_fiber.dom() - self.b
    }

    /// Sampled points of `X`.
    pub fn sample_points(&self, plan: &SamplePlan) -> Result<Vec<Vec<f64>>> {
        sample_points(self.a + self.k, plan)
            .iter()
            .map(|x| self.alpha_fiber.eval(x))
            .collect()
    }

    /// Sampled `(y, z, x, w)`: `x` in the beta fibre of `y`, `z` and `w` in
    /// the alpha fibre of `y`.
    fn sample_quads(&self, plan: &SamplePlan) -> Result<Vec<[Vec<f64>; 4]>> {
        let (a, k, j) = (self.a, self.k, self.beta_fiber_dim());
        sample_points(a + 3 * k + j, plan)
            .iter()
            .map(|s| {
                let y = self.alpha_fiber.eval(&s[..a + k])?;
                let (ay, by) = (self.alpha.eval(&y)?, self.beta.eval(&y)?);
                let z = self.point_over_alpha(&ay, &s[a + k..a + 2 * k])?;
                let w = self.point_over_alpha(&ay, &s[a + 2 * k..a + 3 * k])?;
                let x = self.point_over_beta(&by, &s[a + 3 * k..])?;
                Ok([y, z, x, w])
            })
            .collect()
    }

    /// Sampled composable triples `(x, y, z)`.
    pub fn sample_triples(&self, plan: &SamplePlan) -> Result<Vec<Triple>> {
        Ok(self
            .sample_quads(plan)?
            .into_iter()
            .map(|[y, z, x, _]| (x, y, z))
            .collect())
    }

    /// Sampled points `(x, y, w)` of the domain of `xi`.
    pub fn sample_xi_domain(&self, plan: &SamplePlan) -> Result<Vec<Triple>> {
        let fibres = sample_points(self.k + 2, plan);
        self.sample_triples(plan)?
            .into_iter()
            .zip(fibres)
            .map(|((x, y, z), f)| Ok((x, y, [&z[..], &f[..self.k]].concat())))
            .collect()
    }

    /// Sampled `T^alpha X` chart points.
    pub fn sample_t_alpha(&self, plan: &SamplePlan) -> Result<Vec<Vec<f64>>> {
        let fibres = sample_points(self.k + 3, plan);
        self.sample_points(plan)?
            .into_iter()
            .zip(fibres)
            .map(|(x, f)| Ok([&x[..], &f[..self.k]].concat()))
            .collect()
    }

    /// Sampled points `(x, nu)` of `X x_beta T^alpha_B X`.
    pub fn sample_split_codomain(&self, plan: &SamplePlan) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        let fibres = sample_points(self.k + 4, plan);
        self.sample_points(plan)?
            .into_iter()
            .zip(fibres)
            .map(|(x, f)| {
                let b = self.beta.eval(&x)?;
                Ok((x, [&b[..], &f[..self.k]].concat()))
            })
            .collect()
    }

    /// The six axioms and `beta;e;beta = beta` on samples, plus the chart
    /// laws of the presented bundles.
    pub fn check_pregroupoid(&self, plan: &SamplePlan) -> Result<Vec<LawReport>> {
        let tol = self.tolerance;
        let c = |x: &[f64], y: &[f64], z: &[f64]| self.compose.eval(&[x, y, z].concat());
        let mut ax1 = LawCheck::new("axiom 1: alpha(x o_y z) = alpha x", tol);
        let mut ax2 = LawCheck::new("axiom 2: beta(x o_y z) = beta z", tol);
        let mut ax3 = LawCheck::new("axiom 3: x o_y y = x", tol);
        let mut ax4 = LawCheck::new("axiom 4: x o_x y = y", tol);
        let mut ax5 = LawCheck::new("axiom 5: x o_y (y o_z w) = x o_z w", tol);
        let mut ax6 = LawCheck::new("axiom 6: (x o_y z) o_z w = x o_y w", tol);
        for [y, z, x, w] in self.sample_quads(plan)? {
            let at = || format!("x={x:?} y={y:?} z={z:?}");
            let v = c(&x, &y, &z)?;
            ax1.record(max_abs_diff(&self.alpha.eval(&v)?, &self.alpha.eval(&x)?), at);
            ax2.record(max_abs_diff(&self.beta.eval(&v)?, &self.beta.eval(&z)?), at);
            ax3.record(max_abs_diff(&c(&x, &y, &y)?, &x), at);
            ax4.record(max_abs_diff(&c(&y, &y, &z)?, &z), at);
            // axiom 5 with z := y; the general case is sampled below
            let lhs5 = c(&x, &y, &c(&y, &y, &w)?)?;
            ax5.record(max_abs_diff(&lhs5, &c(&x, &y, &w)?), at);
            let lhs6 = c(&c(&x, &y, &z)?, &z, &w)?;
            ax6.record(max_abs_diff(&lhs6, &c(&x, &y, &w)?), at);
        }
        // axiom 5 with three distinct points of one beta fibre
        let (a, k, j) = (self.a, self.k, self.beta_fiber_dim());
        for s in sample_points(a + 2 * k + 2 * j, plan) {
            let z = self.alpha_fiber.eval(&s[..a + k])?;
            let bz = self.beta.eval(&z)?;
            let x = self.point_over_beta(&bz, &s[a + k..a + k + j])?;
            let y = self.point_over_beta(&bz, &s[a + k + j..a + k + 2 * j])?;
            let w = self.point_over_alpha(&self.alpha.eval(&z)?, &s[a + k + 2 * j..])?;
            let lhs = c(&x, &y, &c(&y, &z, &w)?)?;
            ax5.record(max_abs_diff(&lhs, &c(&x, &z, &w)?), || {
                format!("x={x:?} y={y:?} z={z:?} w={w:?}")
            });
        }
        let mut reports = vec![
            ax1.finish(),
            ax2.finish(),
            ax3.finish(),
            ax4.finish(),
            ax5.finish(),
            ax6.finish(),
        ];
        let points = self.sample_points(plan)?;
        if let Some(e) = &self.unit {
            let mut ebeta = LawCheck::new("beta;e;beta = beta", tol);
            for x in &points {
                let b = self.beta.eval(x)?;
                ebeta.record(max_abs_diff(&self.beta.eval(&e.eval(&b)?)?, &b), || format!("{x:?}"));
            }
            reports.push(ebeta.finish());
        }
        let ta_points = self.sample_t_alpha(plan)?;
        reports.push(self.ta.check_laws(&ta_points, tol)?);
        if let Some(tab) = &self.tab {
            let tab_points: Vec<Vec<f64>> = self
                .sample_split_codomain(plan)?
                .into_iter()
                .map(|(_, nu)| nu)
                .collect();
            reports.push(tab.check_laws(&tab_points, tol)?);
        }
        Ok(reports)
    }

    /// `xi-check;xi-check = 1` on sampled triples.
    pub fn check_xi_check_involution(&self, plan: &SamplePlan) -> Result<LawReport> {
        let mut check = LawCheck::new("xi-check involution", self.tolerance);
        for (x, y, z) in self.sample_triples(plan)? {
            let (p, q, r) = self.xi_check(&x, &y, &z)?;
            let (p2, q2, r2) = self.xi_check(&p, &q, &r)?;
            let residual = max_abs_diff(&p2, &x)
                .max(max_abs_diff(&q2, &y))
                .max(max_abs_diff(&r2, &z));
            check.record(residual, || format!("({x:?}, {y:?}, {z:?})"));
        }
        Ok(check.finish())
    }

    /// `xi;xi = 1` on sampled points of its domain.
    pub fn check_xi_involution(&self, plan: &SamplePlan) -> Result<LawReport> {
        let mut check = LawCheck::new("xi involution", self.tolerance);
        for (x, y, w) in self.sample_xi_domain(plan)? {
            let twice = self.xi(&x, &y, &w).and_then(|(p, q, r)| self.xi(&p, &q, &r));
            match twice {
                Ok((p, q, r)) => {
                    let residual = max_abs_diff(&p, &x).max(max_abs_diff(&q, &y)).max(max_abs_diff(&r, &w));
                    check.record(residual, || format!("({x:?}, {y:?}, {w:?})"));
                }
                Err(e) => check.record_failure(|| format!("({x:?}, {y:?}, {w:?}): {e}")),
            }
        }
        Ok(check.finish())
    }

    /// `split;unsplit = 1` and `unsplit;split = 1` on samples.
    pub fn check_splitting(&self, plan: &SamplePlan) -> Result<Vec<LawReport>> {
        let mut there = LawCheck::new("split;unsplit = 1", self.tolerance);
        for w in self.sample_t_alpha(plan)? {
            match self.split(&w).and_then(|(x, nu)| self.unsplit(&x, &nu)) {
                Ok(back) => there.record(max_abs_diff(&back, &w), || format!("{w:?}")),
                Err(e) => there.record_failure(|| format!("{w:?}: {e}")),
            }
        }
        let mut back_again = LawCheck::new("unsplit;split = 1", self.tolerance);
        for (x, nu) in self.sample_split_codomain(plan)? {
            match self.unsplit(&x, &nu).and_then(|w| self.split(&w)) {
                Ok((x2, nu2)) => back_again.record(max_abs_diff(&x2, &x).max(max_abs_diff(&nu2, &nu)), || {
                    format!("({x:?}, {nu:?})")
                }),
                Err(e) => back_again.record_failure(|| format!("({x:?}, {nu:?}): {e}")),
            }
        }
        Ok(vec![there.finish(), back_again.finish()])
    }

    /// Commutativity of the middle, lower and outer squares on samples.
    pub fn check_squares(&self, plan: &SamplePlan) -> Result<Vec<LawReport>> {
        let tol = self.tolerance;
        let n = self.n;
        let tab = self.t_alpha_b()?;
        let triple_diff = |p: &Triple, q: &Triple| {
            max_abs_diff(&p.0, &q.0)
                .max(max_abs_diff(&p.1, &q.1))
                .max(max_abs_diff(&p.2, &q.2))
        };

        // (x, nu) |-> (x, p^alpha_B nu, p^alpha iota_B nu) against
        // (x, e beta x, e beta x)
        let mut middle = LawCheck::new("middle square commutes", tol);
        for (x, nu) in self.sample_split_codomain(plan)? {
            let iota = tab.embed.eval(&nu)?;
            let ebx = self.e_beta(&x)?;
            let lhs = (x.clone(), iota[..n].to_vec(), iota[..n].to_vec());
            middle.record(triple_diff(&lhs, &(x.clone(), ebx.clone(), ebx)), || {
                format!("({x:?}, {nu:?})")
            });
        }

        // (beta e, 1, 1);xi-check against (1, beta e, beta e)
        let mut lower = LawCheck::new("lower square commutes", tol);
        for x in self.sample_points(plan)? {
            let ebx = self.e_beta(&x)?;
            let lhs = self.xi_check(&ebx, &x, &x)?;
            lower.record(triple_diff(&lhs, &(x.clone(), ebx.clone(), ebx)), || format!("{x:?}"));
        }

        // (p^alpha beta e, p^alpha, 1);(pi0, pi1, pi2 p^alpha) against
        // p^alpha;(beta e, 1, 1)
        let mut outer = LawCheck::new("outer square commutes", tol);
        for w in self.sample_t_alpha(plan)? {
            let x = w[..n].to_vec();
            let ebx = self.e_beta(&x)?;
            let top = (ebx.clone(), x.clone(), w[..n].to_vec());
            outer.record(triple_diff(&top, &(ebx, x.clone(), x)), || format!("{w:?}"));
        }
        Ok(vec![middle.finish(), lower.finish(), outer.finish()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{affine1, pair_groupoid, smooth_pair_pregroupoid};

    fn plan() -> SamplePlan {
        SamplePlan::default()
    }

    #[test]
    fn smooth_pair_pregroupoid_laws() {
        let pg = smooth_pair_pregroupoid(1).with_tolerance(1e-12);
        for r in pg.check_pregroupoid(&plan()).unwrap() {
            assert!(r.passed, "{r}");
        }
        assert!(pg.check_xi_check_involution(&plan()).unwrap().passed);
        assert!(pg.check_xi_involution(&plan()).unwrap().passed);
        for r in pg.check_splitting(&plan()).unwrap() {
            assert!(r.passed, "{r}");
        }
        for r in pg.check_squares(&plan()).unwrap() {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn zero_vector_splits_to_zero() {
        let pg = smooth_pair_pregroupoid(1);
        let (x, nu) = pg.split(&[0.5, -1.0, 0.0]).unwrap();
        assert_eq!(x, vec![0.5, -1.0]);
        assert_eq!(nu, vec![-1.0, 0.0]);
        assert_eq!(pg.unsplit(&x, &nu).unwrap(), vec![0.5, -1.0, 0.0]);
    }

    #[test]
    fn affine_split_is_left_trivialisation() {
        let pg = SmoothPregroupoid::from_groupoid(&affine1()).unwrap();
        assert!(pg.check_pregroupoid(&plan()).unwrap().iter().all(|r| r.passed));
        // (a, b) with velocity (u, v): (a, b)^-1 (u, v) = (u / a, v / a)
        let (x, nu) = pg.split(&[2.0, 1.0, 4.0, -1.0]).unwrap();
        assert_eq!(x, vec![2.0, 1.0]);
        assert!(max_abs_diff(&nu, &[2.0, -0.5]) <= 1e-12, "{nu:?}");
        assert!(pg.check_splitting(&plan()).unwrap().iter().all(|r| r.passed));
    }

    #[test]
    fn groupoid_pregroupoid_on_pair_groupoid() {
        let pg = SmoothPregroupoid::from_groupoid(&pair_groupoid(1)).unwrap();
        for r in pg.check_pregroupoid(&plan()).unwrap() {
            assert!(r.passed, "{r}");
        }
        assert!(pg.check_xi_involution(&plan()).unwrap().passed);
        assert!(pg.check_splitting(&plan()).unwrap().iter().all(|r| r.passed));
    }

    #[test]
    fn composability_checked() {
        let pg = smooth_pair_pregroupoid(1);
        assert!(matches!(
            pg.mu(&[0.0, 1.0], &[0.0, 2.0], &[0.0, 0.0]),
            Err(Error::Composability(_))
        ));
        assert!(matches!(
            pg.xi(&[0.0, 1.0], &[3.0, 1.0], &[0.0, 0.0, 1.0]),
            Err(Error::Composability(_))
        ));
    }
}
