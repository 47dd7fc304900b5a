use super::{one, rational_str, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A univariate polynomial in `t` with exact rational coefficients,
/// stored lowest exponent first with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "rational_str::vec")]
    coeffs: Vec<Rational>,
}

/// The operations exposed by [`Poly::arith`].
#[derive(Clone, Debug, PartialEq)]
pub enum ArithOp {
    Add,
    Mul,
    /// Multiply the first operand by a scalar; the second is ignored.
    Scale(Rational),
    /// Substitute `t -> scale * t + shift` into the first operand.
    ComposeAffine {
        scale: Rational,
        shift: Rational,
    },
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(one())
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        Self::term(one(), k)
    }

    /// `c * t^k`.
    pub fn term(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(1)
    }

    /// `scale * t + shift`.
    pub fn affine(scale: Rational, shift: Rational) -> Self {
        Self::from_coeffs(vec![shift, scale])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if x.is_zero() {
            return self.coeff(0);
        }
        if x.is_one() {
            return self.coeffs.iter().sum();
        }
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// The antiderivative vanishing at `0`: `t^(l-1) -> t^l / l`.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer((k + 1).into()));
        }
        Self::from_coeffs(coeffs)
    }

    /// `∫_a^b p(t) dt`.
    pub fn integral(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// `p(scale * t + shift)`.
    pub fn compose_affine(&self, scale: &Rational, shift: &Rational) -> Self {
        let inner = Poly::affine(scale.clone(), shift.clone());
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        })
    }

    /// Dispatches one of the basic operations; the second operand is only
    /// read by `Add` and `Mul`.
    pub fn arith(&self, other: &Poly, op: &ArithOp) -> Poly {
        match op {
            ArithOp::Add => self + other,
            ArithOp::Mul => self * other,
            ArithOp::Scale(c) => self.scale(c),
            ArithOp::ComposeAffine { scale, shift } => self.compose_affine(scale, shift),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Highest power first, e.g. `t^2 - t + 1/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{int, rat};

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn monomial_product() {
        assert_eq!(
            Poly::t().arith(&Poly::t(), &ArithOp::Mul),
            Poly::monomial(2)
        );
    }

    #[test]
    fn additive_identity() {
        let q = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(q.arith(&Poly::zero(), &ArithOp::Add), q);
    }

    #[test]
    fn affine_substitution() {
        let s = rat(3, 7);
        let scaled = Poly::t().arith(
            &Poly::zero(),
            &ArithOp::ComposeAffine {
                scale: s.clone(),
                shift: int(0),
            },
        );
        assert_eq!(scaled, Poly::term(s, 1));
        // (t^2)(2t + 1) = 4t^2 + 4t + 1
        let sq = Poly::monomial(2).compose_affine(&int(2), &int(1));
        assert_eq!(sq, p(&[(1, 1), (4, 1), (4, 1)]));
    }

    #[test]
    fn degrees_and_zero() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        let a = p(&[(1, 1), (2, 1)]);
        let b = p(&[(0, 1), (0, 1), (3, 1)]);
        assert_eq!((&a * &b).degree(), Some(3));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn calculus() {
        let q = p(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(q.antiderivative().derivative(), q);
        assert_eq!(Poly::t().integral(&int(0), &int(1)), rat(1, 2));
        assert_eq!(q.eval(&int(2)), int(7));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 6), (-1, 1), (1, 1)]).to_string(), "t^2 - t + 1/6");
        assert_eq!(
            p(&[(0, 1), (1, 2), (-1, 2)]).to_string(),
            "-1/2 t^2 + 1/2 t"
        );
    }

    #[test]
    fn json_is_lowest_first_strings() {
        let q = p(&[(1, 6), (-1, 1), (1, 1)]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["1/6","-1","1"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), q);
    }
}
