use super::MorphismCatalog;
use crate::ainfty_framework::{compose, TruncatedMorphism};
use crate::forms::{PolyForm, WhitneyCochain};
use crate::scalars_polys::{zero, Rational};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("t -> {alpha} t + {beta} is not invertible")]
    Degenerate { alpha: Rational, beta: Rational },
}

/// The strict morphism `ρ(f_0 + f_1 dt) = f_0(αt + β) + α f_1(αt + β) dt`.
pub fn affine_pullback_morphism(
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> TruncatedMorphism<PolyForm, PolyForm> {
    let (a, b) = (alpha.clone(), beta.clone());
    let mut coeffs: Vec<crate::ainfty_framework::Multilinear<PolyForm, PolyForm>> =
        vec![Arc::new(move |args: &[PolyForm]| {
            args[0]
                .pullback_affine(&a, &b)
                .expect("affine pullback of a piecewise form")
        })];
    for _ in 1..order {
        coeffs.push(Arc::new(|_: &[PolyForm]| PolyForm::zero()));
    }
    TruncatedMorphism::new(format!("rho({alpha},{beta})"), coeffs)
}

/// `φ ∘ ρ ∘ μ`, the transport of `t ↦ αt + β` to Whitney cochains.
pub fn lift_linear_automorphism(
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<TruncatedMorphism<WhitneyCochain, WhitneyCochain>, LiftError> {
    if *alpha == zero() {
        return Err(LiftError::Degenerate {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    let catalog = MorphismCatalog::new(order);
    let rho = affine_pullback_morphism(alpha, beta, order);
    let inner = compose(&rho, &catalog.mu()).expect("equal orders");
    Ok(compose(&catalog.phi(), &inner)
        .expect("equal orders")
        .renamed(format!("lift({alpha},{beta})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty_framework::basis_words;
    use crate::scalars_polys::{int, one, rat};

    fn basis() -> Vec<WhitneyCochain> {
        vec![
            WhitneyCochain::unit(),
            WhitneyCochain::t(),
            WhitneyCochain::dt(),
        ]
    }

    #[test]
    fn identity_lifts_to_identity() {
        let f = lift_linear_automorphism(&one(), &zero(), 3).unwrap();
        for n in 1..=3 {
            for w in basis_words(&basis(), n) {
                let expected = if n == 1 {
                    w[0].clone()
                } else {
                    WhitneyCochain::zero()
                };
                assert_eq!(f.eval(&w), expected, "{w:?}");
            }
        }
    }

    #[test]
    fn reflection_swaps_vertices() {
        let f = lift_linear_automorphism(&-one(), &one(), 2).unwrap();
        assert_eq!(
            f.eval(&[WhitneyCochain::t()]),
            WhitneyCochain::one_minus_t()
        );
        assert_eq!(
            f.eval(&[WhitneyCochain::dt()]),
            WhitneyCochain::edge(-one())
        );
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            lift_linear_automorphism(&zero(), &rat(1, 2), 2),
            Err(LiftError::Degenerate { .. })
        ));
        assert!(lift_linear_automorphism(&int(2), &zero(), 2).is_ok());
    }
}
