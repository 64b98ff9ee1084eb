//! Built-in examples, addressed by registry keys such as `pair-groupoid:2`.
//!
//! Smooth arrows are sampled through `source_fiber` parametrisations; the
//! groups with a nonzero-scalar component use `a = exp(u / 2)` so that
//! sampled arrows stay away from the singular locus of the inverse.

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, SmoothGroupoid, SmoothGroupoidSpec};
use crate::jet::{sample_points, Jet2, SmoothMap};
use crate::pregroupoid::{FinitePregroupoid, SmoothPregroupoid, SmoothPregroupoidSpec};
use crate::tangent::SamplePlan;

/// Keys accepted by [`smooth_groupoid`]; `n` is a positive integer.
pub const SMOOTH_GROUPOIDS: &[&str] = &["pair-groupoid:n", "abelian:n", "affine1", "scaling"];

/// Keys accepted by [`finite_groupoid`].
pub const FINITE_GROUPOIDS: &[&str] = &["pair-groupoid:n", "abelian:n", "trivial"];

/// Keys accepted by [`smooth_pregroupoid`], besides every smooth groupoid
/// key, which selects that groupoid's pregroupoid.
pub const SMOOTH_PREGROUPOIDS: &[&str] = &["pair-pregroupoid:n"];

/// Keys accepted by [`finite_pregroupoid`], besides every finite groupoid
/// key.
pub const FINITE_PREGROUPOIDS: &[&str] = &["pair-pregroupoid:n", "pair-pregroupoid-padded:n"];

/// Splits `name:n` into its name and size.
pub fn parse_key(key: &str) -> Result<(&str, Option<usize>)> {
    match key.split_once(':') {
        None => Ok((key, None)),
        Some((name, n)) => {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad size in example key {key:?}")))?;
            if n == 0 {
                return Err(Error::Config(format!("example key {key:?} needs a positive size")));
            }
            Ok((name, Some(n)))
        }
    }
}

fn unknown(key: &str, known: &[&str]) -> Error {
    Error::Config(format!("unknown example {key:?}; known: {}", known.join(", ")))
}

fn sized(key: &str, n: Option<usize>) -> Result<usize> {
    n.ok_or_else(|| Error::Config(format!("example {key:?} needs a size, as in {key}:2")))
}

pub fn smooth_groupoid(key: &str) -> Result<SmoothGroupoid> {
    match parse_key(key)? {
        ("pair-groupoid", n) => Ok(pair_groupoid(sized(key, n)?)),
        ("abelian", n) => Ok(abelian(sized(key, n)?)),
        ("affine1", None) => Ok(affine1()),
        ("scaling", None) => Ok(scaling()),
        _ => Err(unknown(key, SMOOTH_GROUPOIDS)),
    }
}

pub fn finite_groupoid(key: &str) -> Result<FiniteGroupoid> {
    match parse_key(key)? {
        ("pair-groupoid", n) => Ok(FiniteGroupoid::pair(sized(key, n)?)),
        ("abelian", n) => Ok(FiniteGroupoid::cyclic(sized(key, n)?)),
        ("trivial", None) => Ok(FiniteGroupoid::cyclic(1)),
        _ => Err(unknown(key, FINITE_GROUPOIDS)),
    }
}

pub fn smooth_pregroupoid(key: &str) -> Result<SmoothPregroupoid> {
    match parse_key(key)? {
        ("pair-pregroupoid", n) => Ok(smooth_pair_pregroupoid(sized(key, n)?)),
        _ => match smooth_groupoid(key) {
            Ok(g) => SmoothPregroupoid::from_groupoid(&g),
            Err(_) => Err(unknown(key, &[SMOOTH_PREGROUPOIDS, SMOOTH_GROUPOIDS].concat())),
        },
    }
}

pub fn finite_pregroupoid(key: &str) -> Result<FinitePregroupoid> {
    match parse_key(key)? {
        ("pair-pregroupoid", n) => Ok(FinitePregroupoid::pair(sized(key, n)?)),
        ("pair-pregroupoid-padded", n) => Ok(FinitePregroupoid::pair_padded(sized(key, n)?)),
        _ => match finite_groupoid(key) {
            Ok(g) => FinitePregroupoid::from_groupoid(&g),
            Err(_) => Err(unknown(key, &[FINITE_PREGROUPOIDS, FINITE_GROUPOIDS].concat())),
        },
    }
}

/// The map `R^n -> R^0`.
fn to_point(n: usize) -> SmoothMap {
    SmoothMap::total("!", n, 0, |_| Vec::new())
}

/// A group on `R^n` over a point, with `T^sG = TG` charted by the identity.
fn group(
    name: &str,
    n: usize,
    unit: Vec<f64>,
    inverse: SmoothMap,
    compose: SmoothMap,
    parametrise: SmoothMap,
) -> SmoothGroupoid {
    SmoothGroupoid::new(SmoothGroupoidSpec {
        name: name.into(),
        source: to_point(n).renamed("s"),
        target: to_point(n).renamed("t"),
        unit: SmoothMap::constant(0, unit).renamed("e"),
        inverse,
        compose,
        source_fiber: parametrise,
        ts_embed: SmoothMap::identity(2 * n),
        ts_project: SmoothMap::identity(2 * n),
        tsm_charts: None,
    })
    .expect("builtin group")
}

/// `(R^n, +)` as a groupoid over a point.
pub fn abelian(n: usize) -> SmoothGroupoid {
    group(
        &format!("abelian:{n}"),
        n,
        vec![0.0; n],
        SmoothMap::total("neg", n, n, |x| x.iter().map(|&v| -v).collect()),
        SmoothMap::total("add", 2 * n, n, move |x| (0..n).map(|i| x[i] + x[n + i]).collect()),
        SmoothMap::identity(n).renamed("chart"),
    )
}

/// The affine group of the line, `(a, b)(c, d) = (ac, ad + b)`, `a != 0`.
pub fn affine1() -> SmoothGroupoid {
    group(
        "affine1",
        2,
        vec![1.0, 0.0],
        SmoothMap::total("inv", 2, 2, |x| {
            let r = x[0].recip();
            vec![r, -x[1] * r]
        }),
        SmoothMap::total("mul", 4, 2, |x| vec![x[0] * x[2], x[0] * x[3] + x[1]]),
        SmoothMap::total("chart", 2, 2, |x| vec![(x[0] * 0.5).exp(), x[1]]),
    )
}

/// `GL(1) = R \ {0}` under multiplication.
pub fn scaling() -> SmoothGroupoid {
    group(
        "scaling",
        1,
        vec![1.0],
        SmoothMap::total("inv", 1, 1, |x| vec![x[0].recip()]),
        SmoothMap::total("mul", 2, 1, |x| vec![x[0] * x[1]]),
        SmoothMap::total("chart", 1, 1, |x| vec![(x[0] * 0.5).exp()]),
    )
}

/// The pair groupoid `R^n x R^n => R^n`: arrows `(a, b)` from `a` to `b`,
/// `(a, b)(b, c) = (a, c)`. The `T^sG` chart `[a, b, w]` is the vector
/// `(0, w)` at `(a, b)`.
pub fn pair_groupoid(n: usize) -> SmoothGroupoid {
    SmoothGroupoid::new(SmoothGroupoidSpec {
        name: format!("pair-groupoid:{n}"),
        source: SmoothMap::coordinates(2 * n, 0..n).renamed("s"),
        target: SmoothMap::coordinates(2 * n, n..2 * n).renamed("t"),
        unit: SmoothMap::total("e", n, 2 * n, |x| [x, x].concat()),
        inverse: SmoothMap::total("inv", 2 * n, 2 * n, move |x| [&x[n..], &x[..n]].concat()),
        compose: SmoothMap::total("mu", 4 * n, 2 * n, move |x| [&x[..n], &x[3 * n..]].concat()),
        source_fiber: SmoothMap::identity(2 * n).renamed("chart"),
        ts_embed: SmoothMap::total("iota^s", 3 * n, 4 * n, move |x| {
            [&x[..2 * n], &vec![Jet2::ZERO; n][..], &x[2 * n..]].concat()
        }),
        ts_project: SmoothMap::total("T^sG chart", 4 * n, 3 * n, move |x| [&x[..2 * n], &x[3 * n..]].concat()),
        tsm_charts: None,
    })
    .expect("builtin pair groupoid")
}

/// The pair pregroupoid on `X = R^n x R^n`: `alpha` and `beta` are the two
/// projections and `x o_y z = (x_1, z_2)`, with `e(b) = (b, b)`. The
/// `T^alpha X` chart `[x, w]` is the vector `(0, w)` at `x`.
pub fn smooth_pair_pregroupoid(n: usize) -> SmoothPregroupoid {
    SmoothPregroupoid::new(SmoothPregroupoidSpec {
        name: format!("pair-pregroupoid:{n}"),
        alpha: SmoothMap::coordinates(2 * n, 0..n).renamed("alpha"),
        beta: SmoothMap::coordinates(2 * n, n..2 * n).renamed("beta"),
        compose: SmoothMap::total("mu3", 6 * n, 2 * n, move |x| [&x[..n], &x[5 * n..]].concat()),
        unit: Some(SmoothMap::total("e", n, 2 * n, |x| [x, x].concat())),
        alpha_fiber: SmoothMap::identity(2 * n).renamed("alpha chart"),
        beta_fiber: SmoothMap::total("beta chart", 2 * n, 2 * n, move |x| [&x[n..], &x[..n]].concat()),
        ta_embed: SmoothMap::total("iota^alpha", 3 * n, 4 * n, move |x| {
            [&x[..2 * n], &vec![Jet2::ZERO; n][..], &x[2 * n..]].concat()
        }),
        ta_project: SmoothMap::total("T^alpha X chart", 4 * n, 3 * n, move |x| {
            [&x[..2 * n], &x[3 * n..]].concat()
        }),
        tab_charts: None,
    })
    .expect("builtin pair pregroupoid")
}

/// Every smooth pregroupoid in the registry, at small sizes.
pub fn all_smooth_pregroupoids() -> Result<Vec<SmoothPregroupoid>> {
    let mut out = vec![smooth_pair_pregroupoid(1), smooth_pair_pregroupoid(2)];
    for g in [affine1(), pair_groupoid(1)] {
        out.push(SmoothPregroupoid::from_groupoid(&g)?);
    }
    Ok(out)
}

/// Every smooth groupoid in the registry, at small sizes.
pub fn all_smooth_groupoids() -> Vec<SmoothGroupoid> {
    vec![
        abelian(1),
        abelian(2),
        affine1(),
        scaling(),
        pair_groupoid(1),
        pair_groupoid(2),
    ]
}

/// The structure maps of every builtin smooth groupoid, each with sample
/// points inside its domain of definition.
pub fn builtin_map_samples(plan: &SamplePlan) -> Result<Vec<(SmoothMap, Vec<Vec<f64>>)>> {
    let mut out = Vec::new();
    for g in all_smooth_groupoids() {
        let arrows = g.sample_arrows(plan)?;
        let pairs: Vec<Vec<f64>> = g
            .sample_composable(plan)?
            .into_iter()
            .map(|(a, b)| [a, b].concat())
            .collect();
        let ts_points: Vec<Vec<f64>> = g.sample_mu_s_domain(plan)?.into_iter().map(|(_, w)| w).collect();
        let mu_s_points: Vec<Vec<f64>> = g
            .sample_mu_s_domain(plan)?
            .into_iter()
            .map(|(a, w)| [a, w].concat())
            .collect();
        let ts_ambient = ts_points
            .iter()
            .map(|w| g.ts().embed.eval(w))
            .collect::<Result<Vec<_>>>()?;
        let tsm_points = sample_points(g.base_dim() + g.fiber_dim(), plan);
        let named = |f: &SmoothMap| f.clone().renamed(format!("{}/{}", g.name(), f.name()));
        out.push((named(g.source()), arrows.clone()));
        out.push((named(g.target()), arrows.clone()));
        out.push((named(g.inverse()), arrows.clone()));
        out.push((named(g.unit()), g.sample_base(plan)));
        out.push((named(g.compose_map()), pairs));
        out.push((
            named(g.source_fiber()),
            sample_points(g.base_dim() + g.fiber_dim(), plan),
        ));
        out.push((named(&g.ts().embed), ts_points.clone()));
        out.push((named(&g.ts().project), ts_ambient.clone()));
        out.push((named(&g.ts().residual), ts_ambient));
        out.push((named(&g.tsm().embed), tsm_points.clone()));
        out.push((named(g.iota_m()), tsm_points));
        out.push((named(g.mu_s_map()), mu_s_points));
    }
    for pg in all_smooth_pregroupoids()? {
        let points = pg.sample_points(plan)?;
        let triples: Vec<Vec<f64>> = pg
            .sample_triples(plan)?
            .into_iter()
            .map(|(x, y, z)| [x, y, z].concat())
            .collect();
        let ta_points = pg.sample_t_alpha(plan)?;
        let ta_ambient = ta_points
            .iter()
            .map(|w| pg.t_alpha().embed.eval(w))
            .collect::<Result<Vec<_>>>()?;
        let nus: Vec<Vec<f64>> = pg.sample_split_codomain(plan)?.into_iter().map(|(_, nu)| nu).collect();
        let named = |f: &SmoothMap| f.clone().renamed(format!("{}/{}", pg.name(), f.name()));
        out.push((named(pg.alpha()), points.clone()));
        out.push((named(pg.beta()), points));
        out.push((named(pg.compose_map()), triples));
        out.push((named(&pg.t_alpha().embed), ta_points));
        out.push((named(&pg.t_alpha().project), ta_ambient));
        if let (Some(e), Ok(tab)) = (pg.unit(), pg.t_alpha_b()) {
            let base: Vec<Vec<f64>> = nus.iter().map(|nu| nu[..e.dom()].to_vec()).collect();
            out.push((named(e), base));
            out.push((named(&tab.embed), nus));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_keys() {
        assert_eq!(smooth_groupoid("pair-groupoid:2").unwrap().arrow_dim(), 4);
        assert_eq!(smooth_groupoid("affine1").unwrap().fiber_dim(), 2);
        assert!(smooth_groupoid("affine1:3").unwrap_err().is_config());
        assert!(smooth_groupoid("pair-groupoid").unwrap_err().is_config());
        assert!(smooth_groupoid("pair-groupoid:0").unwrap_err().is_config());
        assert!(smooth_groupoid("nope").unwrap_err().is_config());
        assert_eq!(finite_groupoid("abelian:2").unwrap().arrows().len(), 2);
        assert_eq!(finite_groupoid("trivial").unwrap().arrows().len(), 1);
        assert_eq!(smooth_pregroupoid("pair-pregroupoid:2").unwrap().carrier_dim(), 4);
        assert_eq!(smooth_pregroupoid("affine1").unwrap().fiber_dim(), 2);
        assert!(smooth_pregroupoid("pair-pregroupoid").unwrap_err().is_config());
        assert!(smooth_pregroupoid("nope").unwrap_err().is_config());
        assert_eq!(finite_pregroupoid("pair-pregroupoid:2").unwrap().carrier().len(), 4);
        assert_eq!(finite_pregroupoid("abelian:3").unwrap().carrier().len(), 3);
        assert!(finite_pregroupoid("pair-pregroupoid-padded").unwrap_err().is_config());
    }

    #[test]
    fn builtin_groupoids_satisfy_axioms() {
        let plan = SamplePlan::default();
        for g in all_smooth_groupoids() {
            for r in g.check_groupoid(&plan).unwrap() {
                assert!(r.passed, "{}: {r}", g.name());
            }
            assert!(g.check_mu_s_base_law(&plan).unwrap().passed, "{}", g.name());
        }
    }
}
