//! Truncated tensor-coalgebra machinery: Taylor coefficients of coalgebra
//! morphisms and coderivations on suspended graded spaces, composition,
//! relation residuals, shuffle compatibility, symmetrization and
//! homological-perturbation transfer.
//!
//! Multilinear maps are closures evaluated on homogeneous basis elements
//! and extended multilinearly; values on basis tuples are memoized.

mod morphism;
mod transfer;

pub use morphism::{
    basis_words, coderivation_component, compose, identity_morphism, relation_residual,
    shuffle_tensor, shuffle_violations, square_residual, symmetrize, tensor_power, tensor_power_by,
    zero_morphism, FrameworkError, Multilinear, ShuffleViolation, TruncatedCoderivation,
    TruncatedMorphism,
};
pub use transfer::{
    homotopy_transfer, reconstruct_from_linear_part, transfer_projection, Contraction, Transferred,
};

use crate::forms::{PolyForm, WhitneyCochain};
use crate::scalars_polys::{PiecewisePoly, Poly, Rational};
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

/// A vector in a suspended graded space with a distinguished basis of
/// homogeneous elements.
pub trait GradedVector: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Expansion `Σ c_k b_k` into basis elements `b_k`.
    fn basis_terms(&self) -> Vec<(Rational, Self)>;
    /// Degree after suspension of a homogeneous element.
    fn degree(&self) -> i32;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    fn is_odd(&self) -> bool {
        self.degree().rem_euclid(2) == 1
    }

    /// Sum of a family of vectors.
    fn sum<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self
    where
        Self: 'a,
    {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

/// A formal linear combination of pure tensors.
pub type Tensor<V> = Vec<(Rational, Vec<V>)>;

/// Rewrites every factor in the basis and collects equal words.
pub fn expand_tensor<V: GradedVector>(t: &Tensor<V>) -> Tensor<V> {
    let mut acc: HashMap<Vec<V>, Rational> = HashMap::new();
    let mut order: Vec<Vec<V>> = Vec::new();
    for (c, word) in t {
        if c.is_zero() {
            continue;
        }
        let mut partial: Vec<(Rational, Vec<V>)> =
            vec![(c.clone(), Vec::with_capacity(word.len()))];
        for factor in word {
            let terms = factor.basis_terms();
            let mut next = Vec::with_capacity(partial.len() * terms.len());
            for (pc, pw) in &partial {
                for (fc, fb) in &terms {
                    let mut w = pw.clone();
                    w.push(fb.clone());
                    next.push((pc * fc, w));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (pc, pw) in partial {
            match acc.get_mut(&pw) {
                Some(v) => *v += pc,
                None => {
                    order.push(pw.clone());
                    acc.insert(pw, pc);
                }
            }
        }
    }
    order
        .into_iter()
        .filter_map(|w| {
            let c = acc.remove(&w)?;
            (!c.is_zero()).then_some((c, w))
        })
        .collect()
}

/// Suspended degree convention on the interval: functions sit in degree
/// `-1`, one-forms in degree `0`.
pub const FUNCTION_DEGREE: i32 = -1;
pub const ONE_FORM_DEGREE: i32 = 0;

fn piecewise_monomials(p: &PiecewisePoly) -> Vec<(Rational, PiecewisePoly)> {
    let mut out = Vec::new();
    let bps = p.breakpoints();
    if let Some(q) = p.as_poly() {
        for (k, c) in q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push((c.clone(), Poly::monomial(k).into()));
            }
        }
        return out;
    }
    for (i, piece) in p.pieces().iter().enumerate() {
        for (k, c) in piece.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pieces = (0..p.pieces().len())
                .map(|j| {
                    if j == i {
                        Poly::monomial(k)
                    } else {
                        Poly::zero()
                    }
                })
                .collect();
            let basis = PiecewisePoly::new(bps.to_vec(), pieces).expect("valid breakpoints");
            out.push((c.clone(), basis));
        }
    }
    out
}

impl GradedVector for PolyForm {
    fn zero() -> Self {
        PolyForm::zero()
    }
    fn is_zero(&self) -> bool {
        PolyForm::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        PolyForm::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyForm::scale(self, c)
    }
    fn basis_terms(&self) -> Vec<(Rational, Self)> {
        let mut out: Vec<_> = piecewise_monomials(&self.f0)
            .into_iter()
            .map(|(c, p)| (c, PolyForm::function(p)))
            .collect();
        out.extend(
            piecewise_monomials(&self.f1)
                .into_iter()
                .map(|(c, p)| (c, PolyForm::one_form(p))),
        );
        out
    }
    fn degree(&self) -> i32 {
        if self.f0.is_zero() {
            ONE_FORM_DEGREE
        } else {
            FUNCTION_DEGREE
        }
    }
}

impl GradedVector for WhitneyCochain {
    fn zero() -> Self {
        WhitneyCochain::zero()
    }
    fn is_zero(&self) -> bool {
        WhitneyCochain::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        WhitneyCochain::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        WhitneyCochain::scale(self, c)
    }
    /// Basis `{1, t, dt}`.
    fn basis_terms(&self) -> Vec<(Rational, Self)> {
        let [u, t, e] = self.basis_coords();
        [
            (u, WhitneyCochain::unit()),
            (t, WhitneyCochain::t()),
            (e, WhitneyCochain::dt()),
        ]
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .collect()
    }
    fn degree(&self) -> i32 {
        if self.v0.is_zero() && self.v1.is_zero() {
            ONE_FORM_DEGREE
        } else {
            FUNCTION_DEGREE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{int, rat};

    #[test]
    fn form_basis_expansion() {
        let w = PolyForm::new(
            Poly::from_coeffs(vec![int(2), int(0), rat(1, 3)]).into(),
            Poly::one().into(),
        );
        let terms = w.basis_terms();
        assert_eq!(terms.len(), 3);
        let back = terms
            .iter()
            .fold(PolyForm::zero(), |acc, (c, b)| acc.add(&b.scale(c)));
        assert_eq!(back, w);
    }

    #[test]
    fn piecewise_basis_expansion() {
        let p = PiecewisePoly::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![Poly::t(), Poly::constant(int(3))],
        )
        .unwrap();
        let w = PolyForm::one_form(p);
        let back = w
            .basis_terms()
            .iter()
            .fold(PolyForm::zero(), |acc, (c, b)| acc.add(&b.scale(c)));
        assert_eq!(back, w);
    }

    #[test]
    fn cochain_basis() {
        let c = WhitneyCochain::new(int(2), int(5), int(-1));
        let terms = c.basis_terms();
        assert_eq!(terms[0], (int(2), WhitneyCochain::unit()));
        assert_eq!(terms[1], (int(3), WhitneyCochain::t()));
        assert_eq!(terms[2], (int(-1), WhitneyCochain::dt()));
        assert_eq!(WhitneyCochain::t().degree(), -1);
        assert_eq!(WhitneyCochain::dt().degree(), 0);
    }

    #[test]
    fn expansion_merges_terms() {
        let t = WhitneyCochain::t();
        let tensor = vec![
            (int(1), vec![t.add(&WhitneyCochain::dt()), t.clone()]),
            (int(-1), vec![WhitneyCochain::dt(), t.clone()]),
        ];
        assert_eq!(expand_tensor(&tensor), vec![(int(1), vec![t.clone(), t])]);
    }
}
