use super::map::SmoothMap;
use crate::error::{Error, Result};
use crate::tangent::{max_abs_diff, LawCheck, LawReport};

/// A subbundle of a tangent bundle presented by a chart.
///
/// Chart coordinates are `[base, fiber]`: the first `base_dim` coordinates
/// are the bundle projection, the remaining `fiber_dim` are linear fibre
/// coordinates. `embed` sends chart points into the ambient space,
/// `project` is a left inverse on the image, and `residual` vanishes
/// exactly on the subbundle. The library verifies these laws on samples
/// instead of solving for the subbundle.
#[derive(Debug, Clone)]
pub struct ChartedSubbundle {
    pub name: String,
    pub base_dim: usize,
    pub fiber_dim: usize,
    pub embed: SmoothMap,
    pub project: SmoothMap,
    pub residual: SmoothMap,
}

impl ChartedSubbundle {
    pub fn new(
        name: impl Into<String>,
        base_dim: usize,
        fiber_dim: usize,
        embed: SmoothMap,
        project: SmoothMap,
        residual: SmoothMap,
    ) -> Result<Self> {
        let name = name.into();
        let k = base_dim + fiber_dim;
        if embed.dom() != k || project.cod() != k || embed.cod() != project.dom() || residual.dom() != embed.cod() {
            return Err(Error::Shape(format!("{name}: chart maps have inconsistent dimensions")));
        }
        Ok(ChartedSubbundle {
            name,
            base_dim,
            fiber_dim,
            embed,
            project,
            residual,
        })
    }

    pub fn chart_dim(&self) -> usize {
        self.base_dim + self.fiber_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.embed.cod()
    }

    /// Projection of chart coordinates onto the base.
    pub fn bundle_projection(&self) -> SmoothMap {
        SmoothMap::coordinates(self.chart_dim(), 0..self.base_dim)
    }

    pub fn membership_residual(&self, ambient: &[f64]) -> Result<f64> {
        Ok(self.residual.eval(ambient)?.iter().fold(0.0, |m, r| m.max(r.abs())))
    }

    /// Chart coordinates of an ambient point, provided it lies on the
    /// subbundle: the defining residual vanishes and `project;embed`
    /// reproduces it.
    pub fn factor(&self, ambient: &[f64], tolerance: f64) -> Result<Vec<f64>> {
        let chart = self.project.eval(ambient)?;
        let back = self.embed.eval(&chart)?;
        let residual = self.membership_residual(ambient)?.max(max_abs_diff(&back, ambient));
        if !(residual <= tolerance) {
            return Err(Error::ChartResidual {
                chart: self.name.clone(),
                residual,
                tolerance,
            });
        }
        Ok(chart)
    }

    /// `embed;project = 1` and `embed;residual = 0` at the given chart
    /// points.
    pub fn check_laws(&self, chart_points: &[Vec<f64>], tolerance: f64) -> Result<LawReport> {
        let mut check = LawCheck::new(format!("{} chart laws", self.name), tolerance);
        for x in chart_points {
            let ambient = self.embed.eval(x)?;
            let back = self.project.eval(&ambient)?;
            check.record(max_abs_diff(&back, x), || format!("round trip at {x:?}"));
            check.record(self.membership_residual(&ambient)?, || format!("residual at {x:?}"));
        }
        Ok(check.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet2;

    /// The line `{(x, 0)}` in `R^2`.
    fn axis() -> ChartedSubbundle {
        ChartedSubbundle::new(
            "axis",
            1,
            0,
            SmoothMap::total("in", 1, 2, |x| vec![x[0], Jet2::ZERO]),
            SmoothMap::coordinates(2, 0..1),
            SmoothMap::coordinates(2, 1..2),
        )
        .unwrap()
    }

    #[test]
    fn laws_and_factorisation() {
        let c = axis();
        assert!(c.check_laws(&[vec![1.0], vec![-3.0]], 1e-12).unwrap().passed);
        assert_eq!(c.factor(&[2.0, 0.0], 1e-12).unwrap(), vec![2.0]);
        assert!(matches!(c.factor(&[2.0, 0.5], 1e-12), Err(Error::ChartResidual { .. })));
    }

    #[test]
    fn inconsistent_dimensions_rejected() {
        let r = ChartedSubbundle::new(
            "bad",
            1,
            1,
            SmoothMap::identity(1),
            SmoothMap::identity(1),
            SmoothMap::identity(1),
        );
        assert!(r.is_err());
    }
}
