use super::series::ScalarSeries;
use crate::scalars_polys::Rational;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Lyndon words over `k` letters up to length `max_len`, in the order
/// produced by Duval's algorithm (lexicographic).
pub fn lyndon_words(k: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| *w < w[i..])
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (&w[..i], &w[i..]))
}

/// The bracketing `P(w) = [P(u), P(v)]` expanded in the associative algebra.
pub fn bracket_polynomial(w: &[u8], max_degree: usize) -> ScalarSeries {
    match standard_factorization(w) {
        None => ScalarSeries::generator(w[0], max_degree),
        Some((u, v)) => {
            bracket_polynomial(u, max_degree).commutator(&bracket_polynomial(v, max_degree))
        }
    }
}

fn bracket_text(w: &[u8], names: &[String]) -> String {
    match standard_factorization(w) {
        None => names[w[0] as usize].clone(),
        Some((u, v)) => format!("[{},{}]", bracket_text(u, names), bracket_text(v, names)),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("element is not a Lie polynomial: leading word {0} is not Lyndon")]
    NotLie(String),
    #[error("result is not fixed by the Eulerian projector in degree {0}")]
    NotEulerianFixed(usize),
    #[error("the path has a component along the unit")]
    UnitComponent,
}

/// A truncated free Lie algebra element in the Lyndon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement {
    generators: Vec<String>,
    max_degree: usize,
    coeffs: BTreeMap<Vec<u8>, Rational>,
}

impl LieElement {
    /// Coordinates of a Lie polynomial, peeling off the least word of each
    /// degree: `P(w) = w + (larger words)` for Lyndon `w`.
    pub fn from_series(generators: &[String], s: &ScalarSeries) -> Result<Self, LieError> {
        let mut rest = s.clone();
        let mut coeffs = BTreeMap::new();
        for n in 1..=s.max_degree() {
            loop {
                let part = rest.homogeneous(n);
                let Some((w, c)) = part.terms().next().map(|(w, c)| (w.clone(), c.clone())) else {
                    break;
                };
                if !is_lyndon(&w) {
                    let text: Vec<&str> =
                        w.iter().map(|&g| generators[g as usize].as_str()).collect();
                    return Err(LieError::NotLie(text.concat()));
                }
                rest = rest.sub(&bracket_polynomial(&w, s.max_degree()).scale(&c));
                coeffs.insert(w, c);
            }
        }
        if !rest.is_zero() {
            return Err(LieError::NotLie("1".into()));
        }
        Ok(LieElement {
            generators: generators.to_vec(),
            max_degree: s.max_degree(),
            coeffs,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Coefficient of the Lyndon basis element indexed by `w`.
    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn to_series(&self) -> ScalarSeries {
        let mut out = ScalarSeries::zero(self.max_degree);
        for (w, c) in &self.coeffs {
            out = out.add(&bracket_polynomial(w, self.max_degree).scale(c));
        }
        out
    }

    pub fn word_text(&self, w: &[u8]) -> String {
        w.iter()
            .map(|&g| self.generators[g as usize].as_str())
            .collect()
    }

    pub fn bracket_text(&self, w: &[u8]) -> String {
        bracket_text(w, &self.generators)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (i, (w, c)) in ordered.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}", self.bracket_text(w))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct LieTerm {
    lyndon: String,
    bracket: String,
    coeff: String,
}

impl Serialize for LieElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        let terms: Vec<LieTerm> = ordered
            .into_iter()
            .map(|(w, c)| LieTerm {
                lyndon: self.word_text(w),
                bracket: self.bracket_text(w),
                coeff: c.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("LieElement", 3)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("degree", &self.max_degree)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::rat;

    #[test]
    fn lyndon_counts() {
        // Witt's formula for two letters: 2, 1, 2, 3, 6
        let counts: Vec<usize> = (1..=5)
            .map(|n| lyndon_words(2, 5).iter().filter(|w| w.len() == n).count())
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        assert!(lyndon_words(3, 4).iter().all(|w| is_lyndon(w)));
    }

    #[test]
    fn extraction_round_trip() {
        let names = vec!["x".to_string(), "y".to_string()];
        let mut s = ScalarSeries::zero(4);
        for (i, w) in lyndon_words(2, 4).iter().enumerate() {
            s = s.add(&bracket_polynomial(w, 4).scale(&rat(i as i64 + 1, 3)));
        }
        let lie = LieElement::from_series(&names, &s).unwrap();
        assert_eq!(lie.to_series(), s);
        let idx = lyndon_words(2, 4)
            .iter()
            .position(|w| w == &[0, 0, 1])
            .unwrap();
        assert_eq!(lie.coeff(&[0, 0, 1]), rat(idx as i64 + 1, 3));
        assert_eq!(lie.bracket_text(&[0, 1, 1]), "[[x,y],y]");
        let xy = ScalarSeries::generator(0, 2).mul(&ScalarSeries::generator(1, 2));
        assert!(LieElement::from_series(&names, &xy).is_err());
    }
}
