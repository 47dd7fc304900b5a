//! Polynomial differential forms on `[0, 1]`, Whitney forms (cochains on the
//! 1-simplex) and Dupont's contraction between them.

mod integrals;

pub use integrals::{
    iterated_integral_function, monomial_simplex_integral, simplex_iterated_integral,
};

use crate::scalars_polys::{one, rational_str, zero, PiecewisePoly, Poly, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `f0(t) + f1(t) dt` with piecewise polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyForm {
    pub f0: PiecewisePoly,
    pub f1: PiecewisePoly,
}

impl PolyForm {
    pub fn new(f0: PiecewisePoly, f1: PiecewisePoly) -> Self {
        PolyForm { f0, f1 }
    }

    pub fn zero() -> Self {
        Self::new(PiecewisePoly::zero(), PiecewisePoly::zero())
    }

    /// The 0-form `p(t)`.
    pub fn function(p: impl Into<PiecewisePoly>) -> Self {
        Self::new(p.into(), PiecewisePoly::zero())
    }

    /// The 1-form `a(t) dt`.
    pub fn one_form(a: impl Into<PiecewisePoly>) -> Self {
        Self::new(PiecewisePoly::zero(), a.into())
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        Self::function(Poly::monomial(k))
    }

    /// `t^k dt`.
    pub fn t_pow_dt(k: usize) -> Self {
        Self::one_form(Poly::monomial(k))
    }

    pub fn dt() -> Self {
        Self::t_pow_dt(0)
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.f0 + &other.f0, &self.f1 + &other.f1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.f0 - &other.f0, &self.f1 - &other.f1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.f0.scale(c), self.f1.scale(c))
    }

    pub fn zero_part(&self) -> Self {
        Self::function(self.f0.clone())
    }

    pub fn one_part(&self) -> Self {
        Self::one_form(self.f1.clone())
    }

    /// `d(f0 + f1 dt) = f0' dt`.
    pub fn d(&self) -> Self {
        Self::one_form(self.f0.derivative())
    }

    /// Graded-commutative wedge product, `dt ∧ dt = 0`.
    pub fn wedge(&self, other: &Self) -> Self {
        Self::new(
            &self.f0 * &other.f0,
            &(&self.f0 * &other.f1) + &(&self.f1 * &other.f0),
        )
    }

    /// Largest polynomial degree among both parts.
    pub fn max_degree(&self) -> Option<usize> {
        self.f0.max_degree().max(self.f1.max_degree())
    }

    /// `t ↦ f(αt + β)` on functions and `a dt ↦ α a(αt + β) dt`, for
    /// single-piece forms.
    pub fn pullback_affine(&self, alpha: &Rational, beta: &Rational) -> Option<Self> {
        let f0 = self.f0.as_poly()?.compose_affine(alpha, beta);
        let f1 = self.f1.as_poly()?.compose_affine(alpha, beta).scale(alpha);
        Some(Self::new(f0.into(), f1.into()))
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.f0.is_zero(), self.f1.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.f0),
            (true, false) => write!(f, "({}) dt", self.f1),
            (false, false) => write!(f, "{} + ({}) dt", self.f0, self.f1),
        }
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A cochain on the 1-simplex: values at the two vertices and the
/// coefficient of `dt` on the edge. Its 0-part is `v1 t + v0 (1 - t)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WhitneyCochain {
    #[serde(with = "rational_str")]
    pub v0: Rational,
    #[serde(with = "rational_str")]
    pub v1: Rational,
    #[serde(with = "rational_str")]
    pub e: Rational,
}

impl WhitneyCochain {
    pub fn new(v0: Rational, v1: Rational, e: Rational) -> Self {
        WhitneyCochain { v0, v1, e }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant function `1`.
    pub fn unit() -> Self {
        Self::new(one(), one(), zero())
    }

    /// The function `t`.
    pub fn t() -> Self {
        Self::new(zero(), one(), zero())
    }

    /// The function `1 - t`.
    pub fn one_minus_t() -> Self {
        Self::new(one(), zero(), zero())
    }

    pub fn dt() -> Self {
        Self::new(zero(), zero(), one())
    }

    /// The edge cochain `e dt`.
    pub fn edge(e: Rational) -> Self {
        Self::new(zero(), zero(), e)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.v0 + &other.v0,
            &self.v1 + &other.v1,
            &self.e + &other.e,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.v0 - &other.v0,
            &self.v1 - &other.v1,
            &self.e - &other.e,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.v0 * c, &self.v1 * c, &self.e * c)
    }

    pub fn zero_part(&self) -> Self {
        Self::new(self.v0.clone(), self.v1.clone(), zero())
    }

    pub fn one_part(&self) -> Self {
        Self::edge(self.e.clone())
    }

    /// Coordinates in the basis `{1, t, dt}`.
    pub fn basis_coords(&self) -> [Rational; 3] {
        [self.v0.clone(), &self.v1 - &self.v0, self.e.clone()]
    }

    /// `δ(v0, v1, e) = (0, 0, v1 - v0)`.
    pub fn d(&self) -> Self {
        Self::edge(&self.v1 - &self.v0)
    }

    /// The affine function `v1 t + v0 (1 - t)`.
    pub fn zero_part_poly(&self) -> Poly {
        Poly::affine(&self.v1 - &self.v0, self.v0.clone())
    }
}

impl fmt::Display for WhitneyCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", inclusion(self))
    }
}

impl fmt::Debug for WhitneyCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[v0={}, v1={}, e={}]", self.v0, self.v1, self.e)
    }
}

/// `ι(v0, v1, e) = v1 t + v0 (1 - t) + e dt`.
pub fn inclusion(c: &WhitneyCochain) -> PolyForm {
    PolyForm::new(
        c.zero_part_poly().into(),
        PiecewisePoly::constant(c.e.clone()),
    )
}

/// `π(f0 + f1 dt) = (f0(0), f0(1), ∫_0^1 f1)`.
pub fn dupont_pi(w: &PolyForm) -> WhitneyCochain {
    WhitneyCochain::new(w.f0.eval(&zero()), w.f0.eval(&one()), w.f1.integral())
}

/// `h(a dt) = t ∫_0^1 a - ∫_0^t a`, zero on functions.
pub fn dupont_h(w: &PolyForm) -> PolyForm {
    let total = w.f1.integral();
    let f = &PiecewisePoly::from_poly(Poly::term(total, 1)) - &w.f1.integrate_from_zero();
    PolyForm::function(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{int, rat};

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn differential() {
        assert_eq!(PolyForm::t_pow(2).d(), PolyForm::one_form(p(&[0, 2])));
        assert!(PolyForm::dt().d().is_zero());
        let f = PolyForm::function(p(&[0, 1, -1]));
        assert_eq!(f.d(), PolyForm::one_form(p(&[1, -2])));
    }

    #[test]
    fn wedge_products() {
        let t = PolyForm::t_pow(1);
        assert_eq!(t.wedge(&t), PolyForm::t_pow(2));
        assert!(PolyForm::t_pow_dt(1).wedge(&PolyForm::dt()).is_zero());
        assert_eq!(t.wedge(&PolyForm::t_pow_dt(1)), PolyForm::t_pow_dt(2));
    }

    #[test]
    fn projection() {
        assert_eq!(dupont_pi(&PolyForm::t_pow(2)), WhitneyCochain::t());
        assert_eq!(
            dupont_pi(&PolyForm::t_pow_dt(1)),
            WhitneyCochain::edge(rat(1, 2))
        );
        let c = WhitneyCochain::new(rat(2, 3), int(-1), rat(5, 7));
        assert_eq!(dupont_pi(&inclusion(&c)), c);
    }

    #[test]
    fn homotopy() {
        assert!(dupont_h(&PolyForm::dt()).is_zero());
        assert_eq!(
            dupont_h(&PolyForm::t_pow_dt(1)),
            PolyForm::function(Poly::from_coeffs(vec![int(0), rat(1, 2), rat(-1, 2)]))
        );
        assert!(dupont_h(&PolyForm::t_pow(3)).is_zero());
    }

    #[test]
    fn json_shapes() {
        let c = WhitneyCochain::edge(rat(1, 12));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"v0":"0","v1":"0","e":"1/12"}"#
        );
        let w = PolyForm::t_pow_dt(1);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<PolyForm>(&json).unwrap(), w);
    }
}
