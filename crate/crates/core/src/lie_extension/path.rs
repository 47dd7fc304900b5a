use super::series::PathSeries;
use crate::scalars_polys::{int, one, PiecewisePoly, Poly, Rational};

/// `a(t) = Σ_g a_g(t) x_g`, a path in the span of the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPath {
    generators: Vec<String>,
    components: Vec<PiecewisePoly>,
}

impl CoefficientPath {
    pub fn new(generators: Vec<String>, components: Vec<PiecewisePoly>) -> Self {
        assert_eq!(
            generators.len(),
            components.len(),
            "one component per generator"
        );
        assert!(generators.len() <= u8::MAX as usize, "too many generators");
        CoefficientPath {
            generators,
            components,
        }
    }

    /// The zero path on the given generators.
    pub fn zero(generators: Vec<String>) -> Self {
        let n = generators.len();
        Self::new(generators, vec![PiecewisePoly::zero(); n])
    }

    /// `c x_g` constant in time.
    pub fn constant(generators: Vec<String>, g: usize, c: Rational) -> Self {
        let mut p = Self::zero(generators);
        p.components[g] = PiecewisePoly::constant(c);
        p
    }

    /// `2 α x` on `[0, 1/2]` and `2 β y` on `[1/2, 1]`.
    pub fn bch_path(alpha: &Rational, beta: &Rational) -> Self {
        let half = one() / int(2);
        let bps = vec![int(0), half, int(1)];
        let two = int(2);
        let x = PiecewisePoly::new(
            bps.clone(),
            vec![Poly::constant(&two * alpha), Poly::zero()],
        )
        .expect("valid breakpoints");
        let y = PiecewisePoly::new(bps, vec![Poly::zero(), Poly::constant(&two * beta)])
            .expect("valid breakpoints");
        Self::new(vec!["x".into(), "y".into()], vec![x, y])
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn components(&self) -> &[PiecewisePoly] {
        &self.components
    }

    pub fn component_mut(&mut self, g: usize) -> &mut PiecewisePoly {
        &mut self.components[g]
    }

    /// `t ↦ -a(1 - t)`.
    pub fn reversed(&self) -> Self {
        Self::new(
            self.generators.clone(),
            self.components.iter().map(|c| -&c.reflect()).collect(),
        )
    }

    /// `a` as a degree-one series with function coefficients.
    pub fn as_series(&self, max_degree: usize) -> PathSeries {
        let mut s = PathSeries::zero(max_degree);
        for (g, c) in self.components.iter().enumerate() {
            s.add_term(vec![g as u8], c.clone());
        }
        s
    }
}
