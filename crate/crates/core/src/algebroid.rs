//! The bracket `[X, Y] = {XTY - YTXc}` of left-invariant fields and the
//! induced bracket on sections of `T^s_M G`. Jet backend only.
//!
//! Both composites are computed as flat `T^2G` points and converted to jet
//! towers. The difference is `(u -_{Tp} v) -_p T0(Tp u)`, which lands in the
//! image of the vertical lift when the inputs are invariant fields; the
//! lift factor is the bracket. With the tower layout of [`crate::jet`], the
//! result equals `BRACKET_SIGN * (DY.X - DX.Y)`.
//!
//! Nested brackets on a groupoid with nontrivial base need a third
//! infinitesimal and fail with [`Error::JetOrder`]; over a point the
//! inner bracket is a constant and nesting works.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::groupoid::{InvariantField, SectionOfBase, SmoothGroupoid};
use crate::jet::{equaliser_residual, flat_to_tower, flip_c, vertical_difference, vertical_factor, Jet2, SmoothMap};
use crate::tangent::{max_abs_diff, LawCheck, LawReport, SamplePlan};

/// Sign of `{XTY - YTXc}` relative to the classical bracket `DY.X - DX.Y`.
pub const BRACKET_SIGN: f64 = 1.0;

/// Singular values below this are treated as zero in the least-squares
/// expansion of brackets.
pub const SINGULAR_CUTOFF: f64 = 1e-10;

/// `c[k][i][j]`: the `k`-th basis coefficient of `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub names: Vec<String>,
    pub base_point: Vec<f64>,
    pub c: Vec<Vec<Vec<f64>>>,
    /// Largest least-squares residual of the expansions.
    pub residual: f64,
}

impl StructureConstants {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k][i][j]
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|c^k_ij + c^k_ji|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let r = self.size();
        let mut worst: f64 = 0.0;
        for k in 0..r {
            for i in 0..r {
                for j in 0..r {
                    worst = worst.max((self.c[k][i][j] + self.c[k][j][i]).abs());
                }
            }
        }
        worst
    }
}

impl fmt::Display for StructureConstants {
    /// One `k i j value` line per constant, indices from 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.size();
        for k in 0..r {
            for i in 0..r {
                for j in 0..r {
                    writeln!(f, "c^{}_{}{}\t{:+.12e}", k + 1, i + 1, j + 1, self.c[k][i][j])?;
                }
            }
        }
        Ok(())
    }
}

/// A smooth groupoid together with the sample plan used for the checks
/// that guard each construction.
#[derive(Debug, Clone)]
pub struct Algebroid {
    groupoid: SmoothGroupoid,
    plan: SamplePlan,
}

fn require_real(x: &[Jet2], what: &str) -> Result<Vec<f64>> {
    if x.iter().all(Jet2::is_real) {
        Ok(x.iter().map(|j| j.a).collect())
    } else {
        Err(Error::JetOrder(format!(
            "{what} is evaluated pointwise and cannot be differentiated again"
        )))
    }
}

impl Algebroid {
    pub fn new(groupoid: SmoothGroupoid, plan: SamplePlan) -> Self {
        Algebroid { groupoid, plan }
    }

    pub fn groupoid(&self) -> &SmoothGroupoid {
        &self.groupoid
    }

    pub fn plan(&self) -> &SamplePlan {
        &self.plan
    }

    pub fn tolerance(&self) -> f64 {
        self.groupoid.tolerance()
    }

    fn in_tg(&self, x: &InvariantField<SmoothMap>) -> Result<SmoothMap> {
        x.0.then(&self.groupoid.ts().embed)
    }

    /// `XTY` and `YTXc` at the arrow `g`, as jet towers.
    pub fn composites(
        &self,
        x: &InvariantField<SmoothMap>,
        y: &InvariantField<SmoothMap>,
        g: &[f64],
    ) -> Result<(Vec<Jet2>, Vec<Jet2>)> {
        let (xi, yi) = (self.in_tg(x)?, self.in_tg(y)?);
        let xty = flat_to_tower(&yi.tangent().eval(&xi.eval(g)?)?)?;
        let ytx = flat_to_tower(&xi.tangent().eval(&yi.eval(g)?)?)?;
        Ok((xty, flip_c(&ytx)))
    }

    /// `XTY - YTXc` at `g`.
    pub fn bracket_tower(
        &self,
        x: &InvariantField<SmoothMap>,
        y: &InvariantField<SmoothMap>,
        g: &[f64],
    ) -> Result<Vec<Jet2>> {
        let (u, v) = self.composites(x, y, g)?;
        vertical_difference(&u, &v)
    }

    fn require_invariant(&self, x: &InvariantField<SmoothMap>) -> Result<()> {
        let section = self.groupoid.check_field_section(&x.0, &self.plan)?;
        if !section.passed {
            return Err(Error::NotASection(section.to_string()));
        }
        let invariance = self.groupoid.is_left_invariant(x, &self.plan)?;
        if !invariance.passed {
            return Err(Error::NotInvariant(invariance.to_string()));
        }
        Ok(())
    }

    /// `[X, Y]` as a field `G -> T^sG` in chart coordinates. `X` and `Y`
    /// are checked to be invariant sections of `p^s` on samples; each
    /// evaluation checks the equaliser and closure conditions.
    pub fn bracket_fields(
        &self,
        x: &InvariantField<SmoothMap>,
        y: &InvariantField<SmoothMap>,
    ) -> Result<InvariantField<SmoothMap>> {
        self.require_invariant(x)?;
        self.require_invariant(y)?;
        let this = self.clone();
        let (x, y) = (x.clone(), y.clone());
        let n = self.groupoid.arrow_dim();
        let name = format!("[{},{}]", x.0.name(), y.0.name());
        let field = SmoothMap::new(name, n, n + self.groupoid.fiber_dim(), move |g| {
            let g = require_real(g, "a bracket field")?;
            let lifted = vertical_factor(&this.bracket_tower(&x, &y, &g)?, this.tolerance())?;
            let ambient = lifted.to_flat();
            let closure = this.closure_residual(&ambient)?;
            if !(closure <= this.tolerance()) {
                return Err(Error::ClosureResidual {
                    residual: closure,
                    tolerance: this.tolerance(),
                });
            }
            let chart = this.groupoid.ts().factor(&ambient, this.tolerance())?;
            Ok(chart.into_iter().map(Jet2::real).collect())
        });
        Ok(InvariantField(field))
    }

    /// Size of the `Ts`-direction of a `TG` point.
    fn closure_residual(&self, ambient: &[f64]) -> Result<f64> {
        let m = self.groupoid.base_dim();
        let image = self.groupoid.source().tangent().eval(ambient)?;
        Ok(image[m..].iter().fold(0.0, |acc, v| acc.max(v.abs())))
    }

    /// The closure chain for `[X, Y]` at sampled arrows: the triple
    /// equaliser condition, factorisation through `T^sG`, the section
    /// property and left invariance.
    pub fn bracket_diagnostics(
        &self,
        x: &InvariantField<SmoothMap>,
        y: &InvariantField<SmoothMap>,
    ) -> Result<Vec<LawReport>> {
        let tol = self.tolerance();
        let n = self.groupoid.arrow_dim();
        let mut equaliser = LawCheck::new("XTY - YTXc in the vertical equaliser", tol);
        let mut closure = LawCheck::new("bracket factors through T^sG", tol);
        let mut section = LawCheck::new("bracket is a section of p", tol);
        for g in self.groupoid.sample_arrows(&self.plan)? {
            let w = self.bracket_tower(x, y, &g)?;
            equaliser.record(equaliser_residual(&w), || format!("{g:?}"));
            let ambient: Vec<f64> = w.iter().map(|j| j.a).chain(w.iter().map(|j| j.d)).collect();
            closure.record(self.closure_residual(&ambient)?, || format!("{g:?}"));
            section.record(max_abs_diff(&ambient[..n], &g), || format!("{g:?}"));
        }
        let invariance = match self.bracket_fields(x, y) {
            Ok(z) => self.groupoid.is_left_invariant(&z, &self.plan)?,
            Err(e) => {
                let mut check = LawCheck::new("left invariance", tol);
                check.record_failure(|| e.to_string());
                check.finish()
            }
        };
        let mut invariance = invariance;
        invariance.law = "bracket is left invariant".into();
        Ok(vec![equaliser.finish(), closure.finish(), section.finish(), invariance])
    }

    /// `[v, w] = ([v^, w^])v`.
    pub fn bracket_sections(
        &self,
        v: &SectionOfBase<SmoothMap>,
        w: &SectionOfBase<SmoothMap>,
    ) -> Result<SectionOfBase<SmoothMap>> {
        let g = &self.groupoid;
        let z = self.bracket_fields(&g.extend(v, &self.plan)?, &g.extend(w, &self.plan)?)?;
        let section = g.restrict(&z, &self.plan)?;
        Ok(SectionOfBase(section.0.renamed(format!(
            "[{},{}]",
            v.0.name(),
            w.0.name()
        ))))
    }

    /// The anchor `v;iota^s_M;Tt : M -> TM`, flat coordinates `[m, dir]`.
    pub fn anchor(&self, v: &SectionOfBase<SmoothMap>) -> Result<SmoothMap> {
        let g = &self.groupoid;
        Ok(v.0
            .then(&g.tsm().embed)?
            .then(&g.target().tangent())?
            .renamed(format!("rho({})", v.0.name())))
    }

    /// The section `m |-> f(m) v(m)`, scaling the fibre coordinates.
    pub fn scale_section(&self, f: &SmoothMap, v: &SectionOfBase<SmoothMap>) -> Result<SectionOfBase<SmoothMap>> {
        let m = self.groupoid.base_dim();
        if f.dom() != m || f.cod() != 1 {
            return Err(Error::Shape(format!("scalar function must be R^{m} -> R")));
        }
        let (f2, v2) = (f.clone(), v.0.clone());
        Ok(SectionOfBase(SmoothMap::new(
            format!("{}*{}", f.name(), v.0.name()),
            m,
            v.0.cod(),
            move |x| {
                let k = f2.eval_jets(x)?[0];
                let mut y = v2.eval_jets(x)?;
                for c in &mut y[m..] {
                    *c *= k;
                }
                Ok(y)
            },
        )))
    }

    /// Constant sections along the fibre coordinate axes.
    pub fn standard_basis(&self) -> Result<Vec<SectionOfBase<SmoothMap>>> {
        let k = self.groupoid.fiber_dim();
        (0..k)
            .map(|i| {
                let mut dir = vec![0.0; k];
                dir[i] = 1.0;
                let s = self.groupoid.constant_section(&dir)?;
                Ok(SectionOfBase(s.0.renamed(format!("e{}", i + 1))))
            })
            .collect()
    }

    fn fibre_at(&self, v: &SectionOfBase<SmoothMap>, m: &[f64]) -> Result<Vec<f64>> {
        Ok(v.0.eval(m)?[self.groupoid.base_dim()..].to_vec())
    }

    /// Expands each `[e_i, e_j]` at the origin of `M` in the basis by least
    /// squares.
    pub fn structure_constants(&self, basis: &[SectionOfBase<SmoothMap>]) -> Result<StructureConstants> {
        let origin = vec![0.0; self.groupoid.base_dim()];
        let k = self.groupoid.fiber_dim();
        let r = basis.len();
        let columns = basis
            .iter()
            .map(|v| self.fibre_at(v, &origin))
            .collect::<Result<Vec<_>>>()?;
        let b = DMatrix::from_fn(k, r, |row, col| columns[col][row]);
        let svd = b.clone().svd(true, true);
        let rank = svd.rank(SINGULAR_CUTOFF);
        if rank < r {
            return Err(Error::SingularBasis { rank, size: r });
        }
        let mut c = vec![vec![vec![0.0; r]; r]; r];
        let mut residual: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let bracket = self.bracket_sections(&basis[i], &basis[j])?;
                let y = DVector::from_vec(self.fibre_at(&bracket, &origin)?);
                let coeffs = svd
                    .solve(&y, SINGULAR_CUTOFF)
                    .map_err(|e| Error::Domain(e.to_string()))?;
                residual = residual.max((&b * &coeffs - &y).amax());
                for (kk, value) in coeffs.iter().enumerate() {
                    c[kk][i][j] = *value;
                }
            }
        }
        Ok(StructureConstants {
            names: basis.iter().map(|v| v.0.name().to_string()).collect(),
            base_point: origin,
            c,
            residual,
        })
    }

    /// `[v, w] + [w, v] = 0` at sampled base points, over all pairs.
    pub fn check_antisymmetry(&self, sections: &[SectionOfBase<SmoothMap>]) -> Result<LawReport> {
        let mut check = LawCheck::new("antisymmetry", self.tolerance());
        let bases = self.groupoid.sample_base(&self.plan);
        for (i, v) in sections.iter().enumerate() {
            for w in &sections[i..] {
                let (vw, wv) = (self.bracket_sections(v, w)?, self.bracket_sections(w, v)?);
                for m in &bases {
                    let (a, b) = (self.fibre_at(&vw, m)?, self.fibre_at(&wv, m)?);
                    let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    check.record(max_abs_diff(&sum, &vec![0.0; sum.len()]), || {
                        format!("({}, {}) at {m:?}", v.0.name(), w.0.name())
                    });
                }
            }
        }
        Ok(check.finish())
    }

    /// `[u,[v,w]] + [v,[w,u]] + [w,[u,v]] = 0` at the origin of `M`, over
    /// all ordered triples of basis elements.
    pub fn check_jacobi(&self, basis: &[SectionOfBase<SmoothMap>]) -> Result<LawReport> {
        let origin = vec![0.0; self.groupoid.base_dim()];
        let mut check = LawCheck::new("Jacobi", self.tolerance());
        let r = basis.len();
        let mut inner = vec![vec![None; r]; r];
        for i in 0..r {
            for j in 0..r {
                inner[i][j] = Some(self.bracket_sections(&basis[i], &basis[j])?);
            }
        }
        let inner = |i: usize, j: usize| inner[i][j].as_ref().expect("filled");
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let terms = [
                        self.bracket_sections(&basis[a], inner(b, c))?,
                        self.bracket_sections(&basis[b], inner(c, a))?,
                        self.bracket_sections(&basis[c], inner(a, b))?,
                    ];
                    let mut sum = vec![0.0; self.groupoid.fiber_dim()];
                    for t in &terms {
                        for (s, x) in sum.iter_mut().zip(self.fibre_at(t, &origin)?) {
                            *s += x;
                        }
                    }
                    check.record(max_abs_diff(&sum, &vec![0.0; sum.len()]), || {
                        format!("({}, {}, {})", basis[a].0.name(), basis[b].0.name(), basis[c].0.name())
                    });
                }
            }
        }
        Ok(check.finish())
    }

    /// `[v, fw] = rho(v)(f) w + f [v, w]` at sampled base points, with
    /// `rho(v)(f)` the jet directional derivative of `f` along the anchor.
    pub fn check_leibniz(
        &self,
        v: &SectionOfBase<SmoothMap>,
        w: &SectionOfBase<SmoothMap>,
        f: &SmoothMap,
    ) -> Result<LawReport> {
        let m = self.groupoid.base_dim();
        let mut check = LawCheck::new("Leibniz [v,fw] = rho(v)(f) w + f[v,w]", self.tolerance());
        let lhs_section = self.bracket_sections(v, &self.scale_section(f, w)?)?;
        let vw = self.bracket_sections(v, w)?;
        let rho = self.anchor(v)?;
        let df = f.tangent();
        for x in self.groupoid.sample_base(&self.plan) {
            let lhs = self.fibre_at(&lhs_section, &x)?;
            let dir = rho.eval(&x)?;
            let derivative = df.eval(&[&x[..], &dir[m..]].concat())?[1];
            let fx = f.eval(&x)?[0];
            let (wx, vwx) = (self.fibre_at(w, &x)?, self.fibre_at(&vw, &x)?);
            let rhs: Vec<f64> = wx.iter().zip(&vwx).map(|(a, b)| derivative * a + fx * b).collect();
            check.record(max_abs_diff(&lhs, &rhs), || format!("{x:?}"));
        }
        Ok(check.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{abelian, affine1, pair_groupoid, scaling};

    fn affine() -> Algebroid {
        Algebroid::new(affine1(), SamplePlan::default())
    }

    #[test]
    fn abelian_brackets_vanish() {
        let a = Algebroid::new(abelian(2), SamplePlan::default());
        let basis = a.standard_basis().unwrap();
        let c = a.structure_constants(&basis).unwrap();
        assert!(c.max_abs() <= 1e-12, "{c}");
    }

    #[test]
    fn affine_structure_constants() {
        let a = affine();
        let c = a.structure_constants(&a.standard_basis().unwrap()).unwrap();
        // [e1, e2] = e2 for the fields (a, 0) and (0, a)
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let expected = match (k, i, j) {
                        (1, 0, 1) => BRACKET_SIGN,
                        (1, 1, 0) => -BRACKET_SIGN,
                        _ => 0.0,
                    };
                    assert!((c.get(k, i, j) - expected).abs() <= 1e-9, "{c}");
                }
            }
        }
        assert!(c.antisymmetry_residual() <= 1e-12);
    }

    #[test]
    fn affine_bracket_field_matches_hand_computation() {
        let a = affine();
        let g = a.groupoid();
        let basis = a.standard_basis().unwrap();
        let x = g.extend(&basis[0], a.plan()).unwrap();
        let y = g.extend(&basis[1], a.plan()).unwrap();
        let z = a.bracket_fields(&x, &y).unwrap();
        // X = (p, 0), Y = (0, p) at (p, q): DY.X - DX.Y = (0, p)
        let v = z.0.eval(&[1.5, -0.5]).unwrap();
        assert!(
            max_abs_diff(&v, &[1.5, -0.5, 0.0, 1.5 * BRACKET_SIGN]) <= 1e-12,
            "{v:?}"
        );
        assert!(a.bracket_diagnostics(&x, &y).unwrap().iter().all(|r| r.passed));
        let zz = a.bracket_fields(&x, &x).unwrap().0.eval(&[1.5, -0.5]).unwrap();
        assert!(max_abs_diff(&zz[2..], &[0.0, 0.0]) <= 1e-12);
    }

    #[test]
    fn scaling_group_is_abelian() {
        let a = Algebroid::new(scaling(), SamplePlan::default());
        let c = a.structure_constants(&a.standard_basis().unwrap()).unwrap();
        assert_eq!(c.size(), 1);
        assert!(c.max_abs() <= 1e-12);
    }

    #[test]
    fn jacobi_and_antisymmetry_on_affine() {
        let a = affine();
        let basis = a.standard_basis().unwrap();
        assert!(a.check_jacobi(&basis).unwrap().passed);
        assert!(a.check_antisymmetry(&basis).unwrap().passed);
    }

    #[test]
    fn non_invariant_input_rejected() {
        let a = affine();
        let field = InvariantField(SmoothMap::total("(1,0)", 2, 4, |x| {
            vec![x[0], x[1], Jet2::ONE, Jet2::ZERO]
        }));
        let y = a.groupoid().extend(&a.standard_basis().unwrap()[0], a.plan()).unwrap();
        assert!(matches!(a.bracket_fields(&field, &y), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn singular_basis_rejected() {
        let a = affine();
        let e1 = a.standard_basis().unwrap().remove(0);
        let err = a.structure_constants(&[e1.clone(), e1]).unwrap_err();
        assert_eq!(err, Error::SingularBasis { rank: 1, size: 2 });
    }

    #[test]
    fn pair_groupoid_anchor_and_leibniz() {
        let a = Algebroid::new(pair_groupoid(1), SamplePlan::default());
        let g = a.groupoid();
        let u = SmoothMap::total("u", 1, 1, |x| vec![x[0] * 3.0 + 1.0]);
        let v = g.section_from_fibre(&u).unwrap();
        let rho = a.anchor(&v).unwrap();
        assert!(max_abs_diff(&rho.eval(&[0.5]).unwrap(), &[0.5, 2.5]) <= 1e-12);
        let zero = g.constant_section(&[0.0]).unwrap();
        assert!(max_abs_diff(&a.anchor(&zero).unwrap().eval(&[0.5]).unwrap(), &[0.5, 0.0]) <= 1e-12);

        let basis = a.standard_basis().unwrap();
        let square = SmoothMap::total("x^2", 1, 1, |x| vec![x[0] * x[0]]);
        let r = a.check_leibniz(&basis[0], &basis[0], &square).unwrap();
        assert!(r.passed, "{r}");
        let r = a
            .check_leibniz(&v, &basis[0], &SmoothMap::constant(1, vec![3.0]))
            .unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn nested_brackets_over_a_base_need_a_third_infinitesimal() {
        let a = Algebroid::new(pair_groupoid(1), SamplePlan::new(4, 1));
        let basis = a.standard_basis().unwrap();
        let err = a.check_jacobi(&basis).unwrap_err();
        assert!(matches!(err, Error::JetOrder(_)), "{err}");
    }
}
