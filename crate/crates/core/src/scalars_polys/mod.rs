//! Exact scalars, univariate polynomials and piecewise polynomials on `[0, 1]`.
//!
//! Everything downstream (forms, cochains, Taylor coefficients, Magnus series)
//! is built from these types, so every identity checked by this crate is an
//! exact identity of rational numbers.

mod bernoulli;
mod piecewise;
mod poly;

pub use bernoulli::{
    bernoulli_number, bernoulli_numbers, bernoulli_poly, binomial, factorial, generalized_binomial,
    BernoulliTable,
};
pub use piecewise::{PiecewiseError, PiecewisePoly};
pub use poly::{ArithOp, Poly};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

/// The ground field: arbitrary precision rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// Parses `"3"`, `"-3/4"` or `" 7 / 2 "` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Canonical text for a rational: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Serde adapter storing a [`Rational`] as a `"num/den"` string.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }

    /// Same adapter for sequences.
    pub mod vec {
        use super::super::{format_rational, parse_rational, Rational};
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| {
                    parse_rational(t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}")))
                })
                .collect()
        }
    }
}
