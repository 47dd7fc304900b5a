use crate::scalars_polys::{factorial, int, one, sign, PiecewisePoly, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt::Debug;

/// Coefficients of a truncated free associative algebra.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for PiecewisePoly {
    fn zero() -> Self {
        PiecewisePoly::zero()
    }
    fn one() -> Self {
        PiecewisePoly::one()
    }
    fn is_zero(&self) -> bool {
        PiecewisePoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        PiecewisePoly::scale(self, c)
    }
}

/// An element of the free associative algebra on generators `0, 1, ...`,
/// with all words longer than `max_degree` discarded.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    max_degree: usize,
    terms: BTreeMap<Vec<u8>, C>,
}

pub type ScalarSeries = Series<Rational>;
pub type PathSeries = Series<PiecewisePoly>;

impl<C: Coeff> Series<C> {
    pub fn zero(max_degree: usize) -> Self {
        Series {
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(max_degree: usize) -> Self {
        Self::monomial(Vec::new(), C::one(), max_degree)
    }

    pub fn generator(g: u8, max_degree: usize) -> Self {
        Self::monomial(vec![g], C::one(), max_degree)
    }

    pub fn monomial(word: Vec<u8>, c: C, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.add_term(word, c);
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn add_term(&mut self, word: Vec<u8>, c: C) {
        if word.len() > self.max_degree || c.is_zero() {
            return;
        }
        let merged = match self.terms.get(&word) {
            Some(old) => old.add(&c),
            None => c,
        };
        if merged.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[u8]) -> C {
        self.terms.get(word).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.max_degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Concatenation product, truncated.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_degree.min(other.max_degree));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > out.max_degree {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.mul(b));
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// The part spanned by words of length exactly `n`.
    pub fn homogeneous(&self, n: usize) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == n) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    fn without_constant(&self) -> Option<()> {
        self.terms.get(&Vec::new()).map_or(Some(()), |_| None)
    }

    /// `Σ_k x^k / k!`; `None` unless the constant term vanishes.
    pub fn exp(&self) -> Option<Self> {
        self.without_constant()?;
        let mut acc = Self::unit(self.max_degree);
        let mut power = Self::unit(self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul(self);
            acc = acc.add(&power.scale(&(one() / factorial(k))));
        }
        Some(acc)
    }

    /// `Σ_k (-1)^{k+1} (x - 1)^k / k`; `None` unless the constant term is 1.
    pub fn log(&self) -> Option<Self> {
        let y = self.sub(&Self::unit(self.max_degree));
        y.without_constant()?;
        let mut acc = Self::zero(self.max_degree);
        let mut power = Self::unit(self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul(&y);
            acc = acc.add(&power.scale(&(sign(k + 1) / int(k as i64))));
        }
        Some(acc)
    }
}

impl PathSeries {
    /// Coefficientwise `∫_0^s`.
    pub fn integrate(&self) -> Self {
        self.map(PiecewisePoly::integrate_from_zero)
    }

    /// Coefficientwise derivative in `s`.
    pub fn derivative(&self) -> Self {
        self.map(PiecewisePoly::derivative)
    }

    pub fn eval(&self, s: &Rational) -> ScalarSeries {
        self.map(|c| c.eval(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::rat;

    #[test]
    fn exp_log_inverse() {
        let x = ScalarSeries::generator(0, 4);
        let y = ScalarSeries::generator(1, 4).scale(&rat(2, 3));
        let z = x.add(&y).add(&x.commutator(&y));
        assert_eq!(z.exp().unwrap().log().unwrap(), z);
        assert_eq!(x.exp().unwrap().coeff(&[0, 0, 0]), rat(1, 6));
        assert!(ScalarSeries::unit(3).exp().is_none());
    }

    #[test]
    fn truncation() {
        let x = ScalarSeries::generator(0, 2);
        assert!(x.mul(&x).mul(&x).is_zero());
    }
}
