use super::{one, rational_str, zero, Poly, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PiecewiseError {
    #[error("breakpoints must start at 0, end at 1 and strictly increase")]
    BadBreakpoints,
    #[error("expected {expected} pieces for the given breakpoints, got {got}")]
    PieceCount { expected: usize, got: usize },
}

/// A function on `[0, 1]` that is polynomial on each `[b_i, b_{i+1}]`.
///
/// Values are kept canonical: adjacent pieces with equal polynomials are
/// merged, so two representations of the same function compare equal.
/// At an interior breakpoint the right-hand piece is used for evaluation.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPiecewise", into = "RawPiecewise")]
pub struct PiecewisePoly {
    breakpoints: Vec<Rational>,
    pieces: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct RawPiecewise {
    #[serde(with = "rational_str::vec")]
    breakpoints: Vec<Rational>,
    pieces: Vec<Poly>,
}

impl TryFrom<RawPiecewise> for PiecewisePoly {
    type Error = PiecewiseError;
    fn try_from(raw: RawPiecewise) -> Result<Self, Self::Error> {
        PiecewisePoly::new(raw.breakpoints, raw.pieces)
    }
}

impl From<PiecewisePoly> for RawPiecewise {
    fn from(p: PiecewisePoly) -> Self {
        RawPiecewise {
            breakpoints: p.breakpoints,
            pieces: p.pieces,
        }
    }
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Poly>) -> Result<Self, PiecewiseError> {
        let ok = breakpoints.len() >= 2
            && breakpoints[0] == zero()
            && *breakpoints.last().unwrap() == one()
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(PiecewiseError::BadBreakpoints);
        }
        if pieces.len() != breakpoints.len() - 1 {
            return Err(PiecewiseError::PieceCount {
                expected: breakpoints.len() - 1,
                got: pieces.len(),
            });
        }
        Ok(Self::canonical(breakpoints, pieces))
    }

    fn canonical(breakpoints: Vec<Rational>, pieces: Vec<Poly>) -> Self {
        let mut bps = vec![breakpoints[0].clone()];
        let mut out: Vec<Poly> = Vec::with_capacity(pieces.len());
        for (i, piece) in pieces.into_iter().enumerate() {
            if out.last() == Some(&piece) {
                *bps.last_mut().unwrap() = breakpoints[i + 1].clone();
            } else {
                out.push(piece);
                bps.push(breakpoints[i + 1].clone());
            }
        }
        PiecewisePoly {
            breakpoints: bps,
            pieces: out,
        }
    }

    /// A single polynomial on all of `[0, 1]`.
    pub fn from_poly(p: Poly) -> Self {
        PiecewisePoly {
            breakpoints: vec![zero(), one()],
            pieces: vec![p],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_zero()
    }

    /// The underlying polynomial when there is only one piece.
    pub fn as_poly(&self) -> Option<&Poly> {
        match self.pieces.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    /// Highest degree over all pieces, `None` if identically zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Poly::degree).max()
    }

    fn piece_index(&self, x: &Rational) -> usize {
        let interior = &self.breakpoints[1..self.breakpoints.len() - 1];
        interior.partition_point(|b| b <= x)
    }

    /// Value at `x`; interior breakpoints take the right-hand piece.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// Both operands re-expressed over the union of their breakpoints.
    fn refine_pair(&self, other: &Self) -> (Vec<Rational>, Vec<(Poly, Poly)>) {
        let mut bps: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bps.sort();
        bps.dedup();
        let pairs = bps
            .windows(2)
            .map(|w| {
                let a = &self.pieces[self.piece_index(&w[0])];
                let b = &other.pieces[other.piece_index(&w[0])];
                (a.clone(), b.clone())
            })
            .collect();
        (bps, pairs)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        if let (Some(a), Some(b)) = (self.as_poly(), other.as_poly()) {
            return Self::from_poly(f(a, b));
        }
        let (bps, pairs) = self.refine_pair(other);
        let pieces = pairs.iter().map(|(a, b)| f(a, b)).collect();
        Self::canonical(bps, pieces)
    }

    pub fn map_pieces(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::canonical(
            self.breakpoints.clone(),
            self.pieces.iter().map(f).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_pieces(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly) -> Self {
        self.map_pieces(|p| p * q)
    }

    /// Derivative on each open piece.
    pub fn derivative(&self) -> Self {
        self.map_pieces(Poly::derivative)
    }

    /// The antiderivative vanishing at 0, continuous across breakpoints.
    pub fn integrate_from_zero(&self) -> Self {
        if let Some(p) = self.as_poly() {
            return Self::from_poly(p.antiderivative());
        }
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut offset = zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let anti = p.antiderivative();
            let (a, b) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            let shift = &offset - anti.eval(a);
            offset += anti.eval(b) - anti.eval(a);
            pieces.push(&anti + &Poly::constant(shift));
        }
        Self::canonical(self.breakpoints.clone(), pieces)
    }

    /// `∫_0^1`.
    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.integral(&self.breakpoints[i], &self.breakpoints[i + 1]))
            .sum()
    }

    /// `t ↦ f(1 - t)`.
    pub fn reflect(&self) -> Self {
        let bps = self.breakpoints.iter().rev().map(|b| one() - b).collect();
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|p| p.compose_affine(&-one(), &one()))
            .collect();
        Self::canonical(bps, pieces)
    }
}

impl From<Poly> for PiecewisePoly {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn add(self, rhs: &PiecewisePoly) -> PiecewisePoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn sub(self, rhs: &PiecewisePoly) -> PiecewisePoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn mul(self, rhs: &PiecewisePoly) -> PiecewisePoly {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn neg(self) -> PiecewisePoly {
        self.map_pieces(|p| -p)
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        write!(f, "{{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(
                f,
                "[{},{}]: {p}",
                self.breakpoints[i],
                self.breakpoints[i + 1]
            )?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Piecewise({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{int, rat};

    fn step() -> PiecewisePoly {
        PiecewisePoly::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![Poly::one(), Poly::zero()],
        )
        .unwrap()
    }

    #[test]
    fn single_piece_integrals() {
        let one = PiecewisePoly::one();
        assert_eq!(
            one.integrate_from_zero(),
            PiecewisePoly::from_poly(Poly::t())
        );
        let t = PiecewisePoly::from_poly(Poly::t());
        assert_eq!(
            t.integrate_from_zero(),
            PiecewisePoly::from_poly(Poly::term(rat(1, 2), 2))
        );
    }

    #[test]
    fn step_integral_is_continuous() {
        let expected = PiecewisePoly::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![Poly::t(), Poly::constant(rat(1, 2))],
        )
        .unwrap();
        assert_eq!(step().integrate_from_zero(), expected);
        assert_eq!(step().integral(), rat(1, 2));
    }

    #[test]
    fn right_piece_at_breakpoints() {
        assert_eq!(step().eval(&rat(1, 2)), int(0));
        assert_eq!(step().eval(&rat(1, 4)), int(1));
        assert_eq!(step().eval(&int(1)), int(0));
    }

    #[test]
    fn equal_pieces_merge() {
        let p = PiecewisePoly::new(vec![int(0), rat(1, 3), int(1)], vec![Poly::t(), Poly::t()])
            .unwrap();
        assert_eq!(p, PiecewisePoly::from_poly(Poly::t()));
        assert_eq!(&step() + &step().reflect(), PiecewisePoly::one());
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(
            PiecewisePoly::new(vec![int(0), rat(1, 2)], vec![Poly::one()]),
            Err(PiecewiseError::BadBreakpoints)
        );
        assert!(matches!(
            PiecewisePoly::new(vec![int(0), int(1)], vec![]),
            Err(PiecewiseError::PieceCount { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let json = serde_json::to_string(&step()).unwrap();
        assert_eq!(
            json,
            r#"{"breakpoints":["0","1/2","1"],"pieces":[["1"],[]]}"#
        );
        assert_eq!(
            serde_json::from_str::<PiecewisePoly>(&json).unwrap(),
            step()
        );
        assert!(
            serde_json::from_str::<PiecewisePoly>(r#"{"breakpoints":["0"],"pieces":[]}"#).is_err()
        );
    }
}
