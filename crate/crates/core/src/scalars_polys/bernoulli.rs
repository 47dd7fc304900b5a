use super::{int, one, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{OnceLock, RwLock};

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

/// The binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// `C(t, k) = t (t - 1) ... (t - k + 1) / k!` as a polynomial in `t`.
pub fn generalized_binomial(k: usize) -> Poly {
    let mut p = Poly::one();
    for i in 0..k {
        p = &p * &Poly::affine(one(), int(-(i as i64)));
    }
    p.scale(&(one() / factorial(k)))
}

/// Bernoulli numbers `B_0..=B_max`, with `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut table = BernoulliTable {
            numbers: vec![one()],
        };
        table.extend_to(max);
        table
    }

    fn extend_to(&mut self, max: usize) {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        for n in self.numbers.len()..=max {
            let partial: Rational = (0..n).map(|k| binomial(n + 1, k) * &self.numbers[k]).sum();
            self.numbers.push(-partial / binomial(n + 1, n));
        }
    }

    pub fn max(&self) -> usize {
        self.numbers.len() - 1
    }

    /// `B_n`, or `None` beyond the table.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.numbers.get(n)
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }
}

fn shared_table() -> &'static RwLock<BernoulliTable> {
    static TABLE: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BernoulliTable::new(16)))
}

/// `B_n`, read from a process-wide table grown on demand.
pub fn bernoulli_number(n: usize) -> Rational {
    if let Some(b) = shared_table().read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = shared_table().write().unwrap();
    table.extend_to(n);
    table.numbers[n].clone()
}

/// `B_0..=B_max`.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    bernoulli_number(max);
    shared_table().read().unwrap().numbers[..=max].to_vec()
}

/// `B_n(t) = sum_k C(n, k) B_k t^(n-k)`.
pub fn bernoulli_poly(n: usize) -> Poly {
    let bs = bernoulli_numbers(n);
    Poly::from_coeffs((0..=n).map(|j| binomial(n, j) * &bs[n - j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::rat;

    /// Taylor coefficients of z / (e^z - 1) by inverting the series
    /// (e^z - 1) / z = sum z^k / (k+1)!.
    fn generating_function_oracle(max: usize) -> Vec<Rational> {
        let denom: Vec<Rational> = (0..=max).map(|k| one() / factorial(k + 1)).collect();
        let mut inv: Vec<Rational> = vec![one()];
        for n in 1..=max {
            let s: Rational = (1..=n).map(|k| &denom[k] * &inv[n - k]).sum();
            inv.push(-s);
        }
        inv.iter()
            .enumerate()
            .map(|(n, c)| c * factorial(n))
            .collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0), one());
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn matches_generating_function() {
        assert_eq!(bernoulli_numbers(20), generating_function_oracle(20));
    }

    #[test]
    fn polynomials() {
        assert_eq!(bernoulli_poly(0), Poly::one());
        assert_eq!(bernoulli_poly(1), Poly::affine(one(), rat(-1, 2)));
        assert_eq!(
            bernoulli_poly(2),
            Poly::from_coeffs(vec![rat(1, 6), rat(-1, 1), one()])
        );
    }

    #[test]
    fn poly_difference_identity() {
        // B_n(t + 1) - B_n(t) = n t^(n-1)
        for n in 1..10 {
            let b = bernoulli_poly(n);
            let diff = &b.compose_affine(&one(), &one()) - &b;
            assert_eq!(diff, Poly::term(int(n as i64), n - 1));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(generalized_binomial(2).eval(&int(5)), int(10));
        assert_eq!(generalized_binomial(3).eval(&int(-1)), int(-1));
        assert_eq!(BernoulliTable::new(4).get(4), Some(&rat(-1, 30)));
    }
}
