//! Taylor coefficients of the arrows between the three interval algebras:
//! Gugenheim's `λ`, `μ`, `exp`, `log`, `γ`, the morphism `φ` (by three
//! independent routes), the scaling family `φ_s` and lifts of affine
//! automorphisms.

mod lift;
mod phi;

pub use lift::{affine_pullback_morphism, lift_linear_automorphism, LiftError};
pub use phi::{
    beta_pullback, phi_checked, phi_edge, phi_s_by_pullback, phi_s_recursive, PhiRoute,
    RouteDisagreement,
};

use crate::ainfty_framework::{
    compose, homotopy_transfer, transfer_projection, GradedVector, Multilinear,
    TruncatedCoderivation, TruncatedMorphism,
};
use crate::forms::{dupont_pi, inclusion, simplex_iterated_integral, PolyForm, WhitneyCochain};
use crate::scalars_polys::{
    bernoulli_number, bernoulli_poly, binomial, factorial, generalized_binomial, int, one, sign,
    PiecewisePoly, Poly, Rational,
};
use crate::whitney_structures::{
    classify, cup_structure, de_rham_structure, dupont_contraction, single_t_position,
    CInftyStructure, CochainBasis,
};
use std::sync::Arc;

/// Deliberate damage to one catalog coefficient, for negative controls.
#[derive(Clone, Debug)]
pub enum Corruption {
    /// Adds `delta` to `m_3` on the given basis word of cochains.
    M3 {
        word: Vec<WhitneyCochain>,
        delta: WhitneyCochain,
    },
    /// Adds `delta` to `φ_2` on the given basis word of forms.
    Phi2 {
        word: Vec<PolyForm>,
        delta: WhitneyCochain,
    },
}

impl Corruption {
    /// `m_3(dt ⊗ t ⊗ dt)` shifted by `dt`.
    pub fn default_m3() -> Self {
        Corruption::M3 {
            word: vec![
                WhitneyCochain::dt(),
                WhitneyCochain::t(),
                WhitneyCochain::dt(),
            ],
            delta: WhitneyCochain::dt(),
        }
    }

    /// `φ_2(dt ⊗ t dt)` shifted by `dt`.
    pub fn default_phi2() -> Self {
        Corruption::Phi2 {
            word: vec![PolyForm::dt(), PolyForm::t_pow_dt(1)],
            delta: WhitneyCochain::dt(),
        }
    }
}

fn corrupt<S: GradedVector, T: GradedVector>(
    f: &TruncatedMorphism<S, T>,
    word: &[S],
    delta: &T,
) -> TruncatedMorphism<S, T> {
    let n = word.len();
    if n > f.order() {
        return f.clone();
    }
    let (orig, word, delta) = (f.clone(), word.to_vec(), delta.clone());
    f.with_coefficient(
        n,
        Arc::new(move |args: &[S]| {
            let v = orig.eval_basis(args);
            if args == word.as_slice() {
                v.add(&delta)
            } else {
                v
            }
        }),
    )
}

fn coefficients<S: GradedVector, T: GradedVector>(
    order: usize,
    f: impl Fn(&[S]) -> T + Send + Sync + Clone + 'static,
) -> Vec<Multilinear<S, T>> {
    (0..order)
        .map(|_| Arc::new(f.clone()) as Multilinear<S, T>)
        .collect()
}

fn is_function(x: &PolyForm) -> bool {
    !x.f0.is_zero()
}

fn all_dt(word: &[CochainBasis]) -> bool {
    word.iter().all(|b| *b == CochainBasis::Dt)
}

/// `λ_1 = π`; for `n >= 2`, zero on any function and the ordered simplex
/// integral on one-forms.
pub fn lambda_on_basis(args: &[PolyForm]) -> WhitneyCochain {
    if args.len() == 1 {
        return dupont_pi(&args[0]);
    }
    if args.iter().any(is_function) {
        return WhitneyCochain::zero();
    }
    let coeffs: Vec<PiecewisePoly> = args.iter().map(|a| a.f1.clone()).collect();
    WhitneyCochain::edge(simplex_iterated_integral(&coeffs, &one()))
}

/// `μ_1 = ι`; unital; `μ_{n+1}((dt)^i ⊗ t ⊗ (dt)^{n-i}) =
/// (-1)^i C(n,i) (B_{n+1}(t) - B_{n+1}) / (n+1)!`.
pub fn mu_on_basis(args: &[WhitneyCochain]) -> PolyForm {
    if args.len() == 1 {
        return inclusion(&args[0]);
    }
    let word: Vec<CochainBasis> = args.iter().map(classify).collect();
    if word.contains(&CochainBasis::Unit) {
        return PolyForm::zero();
    }
    match single_t_position(&word) {
        Some(i) => PolyForm::function(mu_polynomial(word.len() - 1, i)),
        None => PolyForm::zero(),
    }
}

/// `(-1)^i C(n,i) (B_{n+1}(t) - B_{n+1}) / (n+1)!`.
pub fn mu_polynomial(n: usize, i: usize) -> Poly {
    let b = &bernoulli_poly(n + 1) - &Poly::constant(bernoulli_number(n + 1));
    b.scale(&(sign(i) * binomial(n, i) / factorial(n + 1)))
}

/// `exp_1 = id`; for `n >= 2` zero on functions and `exp_n(dt^{⊗n}) = dt / n!`.
pub fn exp_on_basis(args: &[WhitneyCochain]) -> WhitneyCochain {
    if args.len() == 1 {
        return args[0].clone();
    }
    let word: Vec<CochainBasis> = args.iter().map(classify).collect();
    if all_dt(&word) {
        WhitneyCochain::edge(one() / factorial(args.len()))
    } else {
        WhitneyCochain::zero()
    }
}

/// `log_1 = id`; for `n >= 2` zero on functions and
/// `log_n(dt^{⊗n}) = (-1)^{n+1} dt / n`.
pub fn log_on_basis(args: &[WhitneyCochain]) -> WhitneyCochain {
    if args.len() == 1 {
        return args[0].clone();
    }
    let word: Vec<CochainBasis> = args.iter().map(classify).collect();
    if all_dt(&word) {
        WhitneyCochain::edge(log_coefficient(args.len()))
    } else {
        WhitneyCochain::zero()
    }
}

pub fn log_coefficient(n: usize) -> Rational {
    sign(n + 1) / int(n as i64)
}

/// `Σ_{l=0}^{i} C(1-t, l) C(t, n-l)` for the function in slot `i` of an
/// arity-`n` word.
pub fn gamma_polynomial(n: usize, i: usize) -> Poly {
    let mut acc = Poly::zero();
    for l in 0..=i {
        let left = generalized_binomial(l).compose_affine(&-one(), &one());
        acc = &acc + &(&left * &generalized_binomial(n - l));
    }
    acc
}

/// `γ_1 = ι`; unital; mixed values by [`gamma_polynomial`] and
/// `γ_n(dt^{⊗n}) = (-1)^{n+1} dt / n`.
pub fn gamma_on_basis(args: &[WhitneyCochain]) -> PolyForm {
    if args.len() == 1 {
        return inclusion(&args[0]);
    }
    let word: Vec<CochainBasis> = args.iter().map(classify).collect();
    if word.contains(&CochainBasis::Unit) {
        return PolyForm::zero();
    }
    if all_dt(&word) {
        return PolyForm::one_form(Poly::constant(log_coefficient(args.len())));
    }
    match single_t_position(&word) {
        Some(i) => PolyForm::function(gamma_polynomial(word.len(), i)),
        None => PolyForm::zero(),
    }
}

/// All cataloged structures and arrows at a fixed truncation order.
#[derive(Clone)]
pub struct MorphismCatalog {
    order: usize,
    corruption: Option<Corruption>,
}

impl MorphismCatalog {
    pub fn new(order: usize) -> Self {
        MorphismCatalog {
            order,
            corruption: None,
        }
    }

    pub fn with_corruption(order: usize, corruption: Corruption) -> Self {
        MorphismCatalog {
            order,
            corruption: Some(corruption),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn corruption(&self) -> Option<&Corruption> {
        self.corruption.as_ref()
    }

    pub fn de_rham(&self) -> TruncatedCoderivation<PolyForm> {
        de_rham_structure(self.order)
    }

    pub fn cup(&self) -> TruncatedCoderivation<WhitneyCochain> {
        cup_structure(self.order)
    }

    /// The Bernoulli `C∞` structure, corrupted if so configured.
    pub fn cinfty(&self) -> TruncatedCoderivation<WhitneyCochain> {
        let m = CInftyStructure::new(self.order).coderivation();
        match &self.corruption {
            Some(Corruption::M3 { word, delta }) => corrupt(&m, word, delta),
            _ => m,
        }
    }

    /// The structure obtained by transferring the wedge product along
    /// Dupont's contraction.
    pub fn transferred(&self) -> TruncatedCoderivation<WhitneyCochain> {
        homotopy_transfer(&self.de_rham(), &dupont_contraction()).structure
    }

    pub fn lambda(&self) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        TruncatedMorphism::new("lambda", coefficients(self.order, lambda_on_basis))
    }

    pub fn mu(&self) -> TruncatedMorphism<WhitneyCochain, PolyForm> {
        TruncatedMorphism::new("mu", coefficients(self.order, mu_on_basis))
    }

    pub fn exp(&self) -> TruncatedMorphism<WhitneyCochain, WhitneyCochain> {
        TruncatedMorphism::new("exp", coefficients(self.order, exp_on_basis))
    }

    pub fn log(&self) -> TruncatedMorphism<WhitneyCochain, WhitneyCochain> {
        TruncatedMorphism::new("log", coefficients(self.order, log_on_basis))
    }

    pub fn gamma(&self) -> TruncatedMorphism<WhitneyCochain, PolyForm> {
        TruncatedMorphism::new("gamma", coefficients(self.order, gamma_on_basis))
    }

    /// `φ` computed by the given route.
    pub fn phi_route(&self, route: PhiRoute) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        let f = match route {
            PhiRoute::ComposeLogLambda => compose(&self.log(), &self.lambda())
                .expect("equal orders")
                .renamed("phi"),
            _ => TruncatedMorphism::new(
                "phi",
                coefficients(self.order, move |args: &[PolyForm]| phi_edge(route, args)),
            ),
        };
        match &self.corruption {
            Some(Corruption::Phi2 { word, delta }) => corrupt(&f, word, delta),
            _ => f,
        }
    }

    /// `φ` by the Eulerian integral formula.
    pub fn phi(&self) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        self.phi_route(PhiRoute::EulerianIntegral)
    }

    /// `φ_s` through the recursion for its coefficients.
    pub fn phi_s(&self, s: &Rational) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        let s = s.clone();
        TruncatedMorphism::new(
            format!("phi_{s}"),
            coefficients(self.order, move |args: &[PolyForm]| {
                if args.len() == 1 {
                    return dupont_pi(&beta_pullback(&args[0], &s));
                }
                if args.iter().any(is_function) {
                    return WhitneyCochain::zero();
                }
                let a: Vec<PiecewisePoly> = args.iter().map(|x| x.f1.clone()).collect();
                WhitneyCochain::edge(phi_s_recursive(&a).eval(&s))
            }),
        )
    }

    /// `φ_s = φ ∘ β_s^*` composed literally.
    pub fn phi_s_pullback(&self, s: &Rational) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        let (s, phi) = (s.clone(), self.phi());
        TruncatedMorphism::new(
            format!("phi_{s}∘beta"),
            coefficients(self.order, move |args: &[PolyForm]| {
                let pulled: Vec<PolyForm> = args.iter().map(|x| beta_pullback(x, &s)).collect();
                phi.eval(&pulled)
            }),
        )
    }

    /// The morphism `π_∞` from homotopy transfer along Dupont's contraction.
    pub fn transfer_phi(&self) -> TruncatedMorphism<PolyForm, WhitneyCochain> {
        transfer_projection(&self.de_rham(), &dupont_contraction(), self.order)
    }

    /// A named arrow with its source/target kinds, for the command line.
    pub fn arrow(&self, name: &str) -> Option<Arrow> {
        Some(match name {
            "lambda" => Arrow::FormsToCochains(self.lambda()),
            "phi" => Arrow::FormsToCochains(self.phi()),
            "mu" => Arrow::CochainsToForms(self.mu()),
            "gamma" => Arrow::CochainsToForms(self.gamma()),
            "exp" => Arrow::CochainsToCochains(self.exp()),
            "log" => Arrow::CochainsToCochains(self.log()),
            _ => return None,
        })
    }
}

/// A cataloged arrow, tagged by the spaces it connects.
pub enum Arrow {
    FormsToCochains(TruncatedMorphism<PolyForm, WhitneyCochain>),
    CochainsToForms(TruncatedMorphism<WhitneyCochain, PolyForm>),
    CochainsToCochains(TruncatedMorphism<WhitneyCochain, WhitneyCochain>),
}

pub const ARROW_NAMES: [&str; 6] = ["lambda", "mu", "exp", "log", "gamma", "phi"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::rat;

    fn t() -> WhitneyCochain {
        WhitneyCochain::t()
    }
    fn dt() -> WhitneyCochain {
        WhitneyCochain::dt()
    }

    #[test]
    fn lambda_values() {
        let c = MorphismCatalog::new(4);
        let l = c.lambda();
        assert_eq!(
            l.eval(&[PolyForm::t_pow_dt(1)]),
            WhitneyCochain::edge(rat(1, 2))
        );
        assert_eq!(
            l.eval(&[PolyForm::dt(), PolyForm::t_pow_dt(1)]),
            WhitneyCochain::edge(rat(1, 3))
        );
        assert_eq!(
            l.eval(&vec![PolyForm::dt(); 4]),
            WhitneyCochain::edge(rat(1, 24))
        );
    }

    #[test]
    fn mu_values() {
        let half = Poly::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)]);
        assert_eq!(mu_on_basis(&[t()]), PolyForm::t_pow(1));
        assert_eq!(mu_on_basis(&[t(), dt()]), PolyForm::function(half.clone()));
        assert_eq!(mu_on_basis(&[dt(), t()]), PolyForm::function(-&half));
    }

    #[test]
    fn exp_log_values() {
        assert_eq!(
            exp_on_basis(&[dt(), dt(), dt()]),
            WhitneyCochain::edge(rat(1, 6))
        );
        assert_eq!(
            log_on_basis(&[dt(), dt()]),
            WhitneyCochain::edge(rat(-1, 2))
        );
        assert!(exp_on_basis(&[dt(), t()]).is_zero());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_on_basis(&[t()]), PolyForm::t_pow(1));
        let expected = Poly::from_coeffs(vec![int(0), rat(1, 2), rat(-1, 2)]);
        assert_eq!(gamma_on_basis(&[dt(), t()]), PolyForm::function(expected));
        assert_eq!(
            gamma_on_basis(&[dt(), dt(), dt()]),
            PolyForm::one_form(Poly::constant(rat(1, 3)))
        );
    }
}
