use super::MorphismCatalog;
use crate::ainfty_framework::GradedVector;
use crate::combinatorics::{
    compositions, eulerian_adjoint_via_shuffles, eulerian_terms, GradedLetter, TensorElement,
};
use crate::forms::{dupont_pi, simplex_iterated_integral, PolyForm, WhitneyCochain};
use crate::scalars_polys::{
    bernoulli_number, binomial, factorial, one, sign, zero, PiecewisePoly, Rational,
};
use std::collections::HashMap;

/// Independent ways of computing the Taylor coefficients of `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiRoute {
    /// `log ∘ λ`.
    ComposeLogLambda,
    /// `Σ_σ C_{n,d_σ} ∫ a_{σ^{-1}(1)}(t_1) ... a_{σ^{-1}(n)}(t_n)`.
    EulerianIntegral,
    /// `λ_n ∘ E*` with `E*` expanded through shuffle products.
    EstarPullback,
}

impl PhiRoute {
    pub const ALL: [PhiRoute; 3] = [
        PhiRoute::ComposeLogLambda,
        PhiRoute::EulerianIntegral,
        PhiRoute::EstarPullback,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PhiRoute::ComposeLogLambda => "log-lambda",
            PhiRoute::EulerianIntegral => "eulerian-integral",
            PhiRoute::EstarPullback => "estar-pullback",
        }
    }
}

impl std::str::FromStr for PhiRoute {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "log-lambda" | "compose-log-lambda" => Ok(PhiRoute::ComposeLogLambda),
            "eulerian" | "eulerian-integral" => Ok(PhiRoute::EulerianIntegral),
            "estar" | "estar-pullback" => Ok(PhiRoute::EstarPullback),
            _ => Err(format!("unknown route {s:?}")),
        }
    }
}

/// The three routes disagreed on some input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("phi routes disagree on {args}: {values}")]
pub struct RouteDisagreement {
    pub args: String,
    pub values: String,
}

/// `φ_n` computed by every route, failing unless all values coincide.
pub fn phi_checked(args: &[PolyForm]) -> Result<WhitneyCochain, RouteDisagreement> {
    let values: Vec<WhitneyCochain> = PhiRoute::ALL.iter().map(|&r| phi_edge(r, args)).collect();
    if values.iter().all(|v| *v == values[0]) {
        Ok(values[0].clone())
    } else {
        Err(RouteDisagreement {
            args: format!("{args:?}"),
            values: format!("{values:?}"),
        })
    }
}

fn one_form_coefficients(args: &[PolyForm]) -> Option<Vec<PiecewisePoly>> {
    args.iter()
        .map(|x| x.f0.is_zero().then(|| x.f1.clone()))
        .collect()
}

fn eulerian_integral(args: &[PolyForm]) -> WhitneyCochain {
    let Some(a) = one_form_coefficients(args) else {
        return WhitneyCochain::zero();
    };
    let mut e = zero();
    for term in eulerian_terms(a.len()).iter() {
        let permuted: Vec<PiecewisePoly> = term.backward.iter().map(|&i| a[i].clone()).collect();
        e += &term.weight * simplex_iterated_integral(&permuted, &one());
    }
    WhitneyCochain::edge(e)
}

fn estar_pullback(args: &[PolyForm]) -> WhitneyCochain {
    let letters: Vec<GradedLetter> = args
        .iter()
        .enumerate()
        .map(|(i, x)| GradedLetter::new(i as u32, x.degree()))
        .collect();
    let projected = eulerian_adjoint_via_shuffles(&TensorElement::word(letters));
    let mut out = WhitneyCochain::zero();
    for (word, c) in projected.terms() {
        let permuted: Vec<PolyForm> = word.iter().map(|l| args[l.id as usize].clone()).collect();
        out = out.add(&super::lambda_on_basis(&permuted).scale(c));
    }
    out
}

/// `φ_n` on basis forms by the given route.
pub fn phi_edge(route: PhiRoute, args: &[PolyForm]) -> WhitneyCochain {
    if args.len() == 1 {
        return dupont_pi(&args[0]);
    }
    match route {
        PhiRoute::EulerianIntegral => eulerian_integral(args),
        PhiRoute::EstarPullback => estar_pullback(args),
        PhiRoute::ComposeLogLambda => MorphismCatalog::new(args.len())
            .phi_route(PhiRoute::ComposeLogLambda)
            .eval(args),
    }
}

fn rescale(f: &PiecewisePoly, s: &Rational) -> PiecewisePoly {
    if let Some(p) = f.as_poly() {
        return p.compose_affine(s, &zero()).into();
    }
    assert!(
        *s >= zero() && *s <= one(),
        "piecewise forms can only be rescaled by s in [0, 1]"
    );
    if *s == zero() {
        return PiecewisePoly::constant(f.eval(&zero()));
    }
    let mut bps = vec![zero()];
    let mut pieces = Vec::new();
    let bs = f.breakpoints();
    for (i, p) in f.pieces().iter().enumerate() {
        let start = &bs[i] / s;
        if start >= one() {
            break;
        }
        let end = (&bs[i + 1] / s).min(one());
        pieces.push(p.compose_affine(s, &zero()));
        bps.push(end);
    }
    PiecewisePoly::new(bps, pieces).expect("rescaled breakpoints are increasing")
}

/// `β_s^*(f_0 + f_1 dt) = f_0(st) + s f_1(st) dt`.
pub fn beta_pullback(x: &PolyForm, s: &Rational) -> PolyForm {
    PolyForm::new(rescale(&x.f0, s), rescale(&x.f1, s).scale(s))
}

/// `φ_s` computed literally as `φ ∘ β_s^*`.
pub fn phi_s_by_pullback(args: &[PolyForm], s: &Rational) -> WhitneyCochain {
    let pulled: Vec<PolyForm> = args.iter().map(|x| beta_pullback(x, s)).collect();
    phi_edge(PhiRoute::EulerianIntegral, &pulled)
}

struct Recursion<'a> {
    a: &'a [PiecewisePoly],
    memo: HashMap<(usize, usize), PiecewisePoly>,
}

impl Recursion<'_> {
    fn m(&mut self, l: usize, r: usize) -> PiecewisePoly {
        if let Some(v) = self.memo.get(&(l, r)) {
            return v.clone();
        }
        let n = r - l;
        let v = if n == 1 {
            self.a[l].integrate_from_zero()
        } else {
            let mut acc = PiecewisePoly::zero();
            for parts in compositions(n - 1) {
                let k = parts.len();
                let w = bernoulli_number(k) / factorial(k);
                if w == zero() {
                    continue;
                }
                for j in 0..=k {
                    let c = &w * sign(j) * binomial(k, j);
                    let mut prod = PiecewisePoly::one();
                    let mut pos = l;
                    for (idx, &len) in parts.iter().enumerate() {
                        if idx == j {
                            prod = &prod * &self.a[pos];
                            pos += 1;
                        }
                        let block = self.m(pos, pos + len);
                        prod = &prod * &block;
                        pos += len;
                    }
                    if j == k {
                        prod = &prod * &self.a[pos];
                    }
                    acc = &acc + &prod.integrate_from_zero().scale(&c);
                }
            }
            acc
        };
        self.memo.insert((l, r), v.clone());
        v
    }
}

/// `s ↦ φ_s(a_1 dt ⊗ ... ⊗ a_n dt)` from the recursion on `n`.
pub fn phi_s_recursive(a: &[PiecewisePoly]) -> PiecewisePoly {
    if a.is_empty() {
        return PiecewisePoly::zero();
    }
    Recursion {
        a,
        memo: HashMap::new(),
    }
    .m(0, a.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{int, rat, Poly};

    fn forms(ks: &[usize]) -> Vec<PolyForm> {
        ks.iter().map(|&k| PolyForm::t_pow_dt(k)).collect()
    }

    #[test]
    fn phi2_on_dt_tdt() {
        for route in PhiRoute::ALL {
            assert_eq!(
                phi_edge(route, &forms(&[0, 1])),
                WhitneyCochain::edge(rat(1, 12)),
                "{route:?}"
            );
        }
    }

    #[test]
    fn routes_agree_small() {
        for ks in [
            vec![0, 0, 1],
            vec![1, 2, 0],
            vec![2, 0, 1, 0],
            vec![1, 1, 0, 3],
        ] {
            let a = forms(&ks);
            let reference = phi_edge(PhiRoute::EulerianIntegral, &a);
            for route in PhiRoute::ALL {
                assert_eq!(phi_edge(route, &a), reference, "{route:?} {ks:?}");
            }
        }
        let mixed = vec![PolyForm::t_pow(1), PolyForm::dt()];
        for route in PhiRoute::ALL {
            assert!(phi_edge(route, &mixed).is_zero());
        }
    }

    #[test]
    fn equal_arguments_cancel() {
        let a = PolyForm::one_form(Poly::from_coeffs(vec![int(3), int(-1), rat(2, 5)]));
        assert!(phi_checked(&[a.clone(), a.clone()]).unwrap().is_zero());
        assert!(phi_s_recursive(&[a.f1.clone(), a.f1.clone()]).is_zero());
        assert_eq!(
            "eulerian".parse::<PhiRoute>(),
            Ok(PhiRoute::EulerianIntegral)
        );
        assert_eq!(
            "estar_pullback".parse::<PhiRoute>(),
            Ok(PhiRoute::EstarPullback)
        );
    }

    #[test]
    fn recursion_example() {
        let a: Vec<PiecewisePoly> = vec![Poly::one().into(), Poly::t().into()];
        assert_eq!(phi_s_recursive(&a), Poly::term(rat(1, 12), 3).into());
    }

    #[test]
    fn recursion_matches_pullback() {
        for ks in [
            vec![0, 1],
            vec![1, 0, 2],
            vec![0, 0, 1, 1],
            vec![2, 1, 0, 0, 1],
        ] {
            let a = forms(&ks);
            let coeffs: Vec<PiecewisePoly> = a.iter().map(|x| x.f1.clone()).collect();
            let rec = phi_s_recursive(&coeffs);
            for s in [rat(1, 3), rat(2, 1), rat(-1, 2), int(1)] {
                let e = phi_s_by_pullback(&a, &s);
                assert_eq!(WhitneyCochain::edge(rec.eval(&s)), e, "{ks:?} at {s}");
            }
        }
    }

    #[test]
    fn piecewise_rescale() {
        let step = PiecewisePoly::new(
            vec![int(0), rat(1, 2), int(1)],
            vec![Poly::one(), Poly::zero()],
        )
        .unwrap();
        assert_eq!(rescale(&step, &rat(1, 4)), PiecewisePoly::one());
        let half = rescale(&step, &rat(3, 4));
        assert_eq!(half.breakpoints(), &[int(0), rat(2, 3), int(1)]);
    }
}
