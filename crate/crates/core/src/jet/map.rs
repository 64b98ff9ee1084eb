use std::fmt;
use std::sync::Arc;

use super::jet2::{Jet2, Nilpotent};
use crate::error::{Error, Result};

type Evaluator = dyn Fn(&[Jet2]) -> Result<Vec<Jet2>> + Send + Sync;

/// A smooth map `R^n -> R^m` given by an evaluator on jet vectors.
///
/// Evaluators must be built from jet arithmetic so that evaluating on
/// `x + v e` yields the derivative along `v`. Branching on the point part is
/// allowed but then smoothness is the caller's responsibility.
#[derive(Clone)]
pub struct SmoothMap {
    name: Arc<str>,
    dom: usize,
    cod: usize,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: R^{} -> R^{}", self.name, self.dom, self.cod)
    }
}

impl SmoothMap {
    pub fn new(
        name: impl Into<Arc<str>>,
        dom: usize,
        cod: usize,
        eval: impl Fn(&[Jet2]) -> Result<Vec<Jet2>> + Send + Sync + 'static,
    ) -> Self {
        SmoothMap {
            name: name.into(),
            dom,
            cod,
            eval: Arc::new(eval),
        }
    }

    /// A map whose evaluator cannot fail.
    pub fn total(
        name: impl Into<Arc<str>>,
        dom: usize,
        cod: usize,
        eval: impl Fn(&[Jet2]) -> Vec<Jet2> + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, dom, cod, move |x| Ok(eval(x)))
    }

    pub fn identity(n: usize) -> Self {
        Self::total(format!("id{n}"), n, n, |x| x.to_vec())
    }

    /// Coordinates `range` of `R^n`.
    pub fn coordinates(n: usize, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= n, "coordinate range out of bounds");
        let cod = range.len();
        Self::total(format!("pr[{}..{}]", range.start, range.end), n, cod, move |x| {
            x[range.clone()].to_vec()
        })
    }

    pub fn constant(dom: usize, value: Vec<f64>) -> Self {
        let cod = value.len();
        Self::total("const", dom, cod, move |_| {
            value.iter().map(|&v| Jet2::real(v)).collect()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<Arc<str>>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn eval_jets(&self, x: &[Jet2]) -> Result<Vec<Jet2>> {
        if x.len() != self.dom {
            return Err(Error::Shape(format!(
                "{} expects {} inputs, got {}",
                self.name,
                self.dom,
                x.len()
            )));
        }
        let y = (self.eval)(x)?;
        if y.len() != self.cod {
            return Err(Error::Shape(format!(
                "{} produced {} outputs, expected {}",
                self.name,
                y.len(),
                self.cod
            )));
        }
        Ok(y)
    }

    /// Evaluation at a real point.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        let jets: Vec<Jet2> = x.iter().map(|&v| Jet2::real(v)).collect();
        Ok(self.eval_jets(&jets)?.into_iter().map(|j| j.a).collect())
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then(&self, g: &SmoothMap) -> Result<SmoothMap> {
        if self.cod != g.dom {
            return Err(Error::Shape(format!(
                "cannot compose {} (R^{}) with {} (R^{})",
                self.name, self.cod, g.name, g.dom
            )));
        }
        let (f, g2) = (self.clone(), g.clone());
        Ok(SmoothMap::new(
            format!("{};{}", self.name, g.name),
            self.dom,
            g.cod,
            move |x| g2.eval_jets(&f.eval_jets(x)?),
        ))
    }

    /// `(self, g) : X -> Y x Z` for maps with a common domain.
    pub fn pair(&self, g: &SmoothMap) -> Result<SmoothMap> {
        if self.dom != g.dom {
            return Err(Error::Shape(format!("cannot pair {} with {}", self.name, g.name)));
        }
        let (f, g2) = (self.clone(), g.clone());
        Ok(SmoothMap::new(
            format!("({},{})", self.name, g.name),
            self.dom,
            self.cod + g.cod,
            move |x| {
                let mut y = f.eval_jets(x)?;
                y.extend(g2.eval_jets(x)?);
                Ok(y)
            },
        ))
    }

    /// `self x g : X x X' -> Y x Y'`.
    pub fn product(&self, g: &SmoothMap) -> SmoothMap {
        let (f, g2) = (self.clone(), g.clone());
        let n = self.dom;
        SmoothMap::new(
            format!("{}x{}", self.name, g.name),
            self.dom + g.dom,
            self.cod + g.cod,
            move |x| {
                let mut y = f.eval_jets(&x[..n])?;
                y.extend(g2.eval_jets(&x[n..])?);
                Ok(y)
            },
        )
    }

    /// `Tf : R^{2n} -> R^{2m}`, `(x, v) |-> (f(x), Df(x) v)`.
    ///
    /// The direction is carried by whichever nilpotent the inputs leave
    /// unused, so `Tf` can itself be evaluated on first-order jets; this is
    /// what makes `T^2 f` and `T(X)` for jet-built fields `X` computable.
    /// Inputs that already use both nilpotents are rejected.
    pub fn tangent(&self) -> SmoothMap {
        let f = self.clone();
        let n = self.dom;
        let m = self.cod;
        SmoothMap::new(format!("T({})", self.name), 2 * n, 2 * m, move |x| {
            let slot = free_nilpotent(x)
                .ok_or_else(|| Error::JetOrder(format!("T({}) needs a third infinitesimal direction", f.name)))?;
            let unit = Jet2::unit(slot);
            let input: Vec<Jet2> = (0..n).map(|i| x[i] + x[n + i] * unit).collect();
            let out = f.eval_jets(&input)?;
            let mut result = vec![Jet2::ZERO; 2 * m];
            for (j, y) in out.iter().enumerate() {
                let (base, dir) = y.split(slot);
                result[j] = base;
                result[m + j] = dir;
            }
            Ok(result)
        })
    }
}

/// The nilpotent not used by any input, preferring `e1`.
pub(crate) fn free_nilpotent(x: &[Jet2]) -> Option<Nilpotent> {
    if !x.iter().any(|j| j.uses(Nilpotent::E1)) {
        Some(Nilpotent::E1)
    } else if !x.iter().any(|j| j.uses(Nilpotent::E2)) {
        Some(Nilpotent::E2)
    } else {
        None
    }
}

/// Converts a real vector to constant jets.
pub fn reals(x: &[f64]) -> Vec<Jet2> {
    x.iter().map(|&v| Jet2::real(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SmoothMap {
        SmoothMap::total("sq", 1, 1, |x| vec![x[0] * x[0]])
    }

    #[test]
    fn composition_is_diagrammatic() {
        let add1 = SmoothMap::total("inc", 1, 1, |x| vec![x[0] + 1.0]);
        // inc then square: (2 + 1)^2
        assert_eq!(add1.then(&square()).unwrap().eval(&[2.0]).unwrap(), vec![9.0]);
        assert_eq!(square().then(&add1).unwrap().eval(&[2.0]).unwrap(), vec![5.0]);
        assert!(add1.then(&SmoothMap::identity(2)).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(square().eval(&[1.0, 2.0]).is_err());
        let liar = SmoothMap::total("liar", 1, 2, |x| vec![x[0]]);
        assert!(liar.eval(&[1.0]).is_err());
    }

    #[test]
    fn tangent_of_square() {
        assert_eq!(square().tangent().eval(&[3.0, 1.0]).unwrap(), vec![9.0, 6.0]);
    }

    #[test]
    fn second_tangent_uses_both_directions() {
        // T^2(x^2) at ((1, 1), (1, 0)) = x^2 on the tower 1 + e1 + e2
        let t2 = square().tangent().tangent();
        let y = t2.eval(&[1.0, 1.0, 1.0, 0.0]).unwrap();
        // flat layout [a, c, b, d]
        assert_eq!(y, vec![1.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn third_tangent_is_rejected() {
        let t3 = square().tangent().tangent().tangent();
        let err = t3.eval(&[1.0; 8]).unwrap_err();
        assert!(matches!(err, Error::JetOrder(_)));
    }

    #[test]
    fn pair_and_product() {
        let p = square().pair(&SmoothMap::identity(1)).unwrap();
        assert_eq!(p.eval(&[3.0]).unwrap(), vec![9.0, 3.0]);
        let q = square().product(&SmoothMap::identity(1));
        assert_eq!(q.eval(&[3.0, 4.0]).unwrap(), vec![9.0, 4.0]);
    }
}
