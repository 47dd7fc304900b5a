use super::lie::{LieElement, LieError};
use super::path::CoefficientPath;
use super::series::{Coeff, PathSeries, ScalarSeries, Series};
use crate::combinatorics::{all_permutations, compositions, eulerian_terms};
use crate::forms::iterated_integral_function;
use crate::scalars_polys::{
    bernoulli_number, binomial, factorial, int, one, sign, PiecewisePoly, Rational,
};
use std::collections::HashMap;
use std::str::FromStr;

/// Ways of computing the logarithm of the time-ordered exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MagnusMethod {
    /// Descent-weighted nested brackets.
    MielnikPlebanski,
    /// Bernoulli-weighted recursion on the degree.
    Recursion,
    /// Eulerian descent formula in the associative algebra.
    LogLambda,
    /// Formal logarithm of the Picard series.
    PicardLog,
}

impl MagnusMethod {
    pub const ROUTES: [MagnusMethod; 3] = [
        MagnusMethod::MielnikPlebanski,
        MagnusMethod::Recursion,
        MagnusMethod::LogLambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MagnusMethod::MielnikPlebanski => "mp",
            MagnusMethod::Recursion => "recursion",
            MagnusMethod::LogLambda => "loglambda",
            MagnusMethod::PicardLog => "picard-log",
        }
    }
}

impl FromStr for MagnusMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mp" | "mielnik-plebanski" => Ok(MagnusMethod::MielnikPlebanski),
            "recursion" => Ok(MagnusMethod::Recursion),
            "loglambda" | "log-lambda" => Ok(MagnusMethod::LogLambda),
            "picard-log" | "picard" => Ok(MagnusMethod::PicardLog),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

/// Words of length `1..=max_degree` whose letters all have nonzero components.
fn active_words(a: &CoefficientPath, max_degree: usize) -> Vec<Vec<u8>> {
    let active: Vec<u8> = (0..a.components().len())
        .filter(|&g| !a.components()[g].is_zero())
        .map(|g| g as u8)
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_degree {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                active.iter().map(move |&g| {
                    let mut w = w.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `s ↦ 1 + Σ_n ∫_{Δ_n(s)} a(t_1) ... a(t_n)`, word by word.
pub fn picard_texp_function(a: &CoefficientPath, max_degree: usize) -> PathSeries {
    let mut out = PathSeries::unit(max_degree);
    for w in active_words(a, max_degree) {
        let fs: Vec<PiecewisePoly> = w
            .iter()
            .map(|&g| a.components()[g as usize].clone())
            .collect();
        out.add_term(w, iterated_integral_function(&fs));
    }
    out
}

pub fn picard_texp(a: &CoefficientPath, s: &Rational, max_degree: usize) -> ScalarSeries {
    picard_texp_function(a, max_degree).eval(s)
}

/// Permutation-weighted integrals: each table entry `(τ, c)` contributes
/// `c ∫_{Δ_n(s)} Π_j f_j(t_j)` with `f_{τ(m)} = a_{g_m}`.
fn weighted_word_integrals(
    a: &CoefficientPath,
    max_degree: usize,
    table: impl Fn(usize) -> Vec<(Vec<usize>, Rational)>,
) -> PathSeries {
    let mut tables: HashMap<usize, Vec<(Vec<usize>, Rational)>> = HashMap::new();
    let mut out = PathSeries::zero(max_degree);
    for w in active_words(a, max_degree) {
        let n = w.len();
        let entries = tables.entry(n).or_insert_with(|| table(n));
        let mut acc = PiecewisePoly::zero();
        for (tau, c) in entries.iter() {
            let mut fs = vec![PiecewisePoly::zero(); n];
            for (m, &j) in tau.iter().enumerate() {
                fs[j] = a.components()[w[m] as usize].clone();
            }
            acc = &acc + &iterated_integral_function(&fs).scale(c);
        }
        out.add_term(w, acc);
    }
    out
}

fn descent_table(n: usize) -> Vec<(Vec<usize>, Rational)> {
    // the letter in slot m is read at time t_{σ^{-1}(m)}
    eulerian_terms(n)
        .iter()
        .map(|t| {
            let mut tau = vec![0; n];
            for (j, &m) in t.backward.iter().enumerate() {
                tau[m] = j;
            }
            (tau, t.weight.clone())
        })
        .collect()
}

/// Signed index sequences of `[y_1, [y_2, ... [y_{n-1}, y_n]...]]`.
fn right_nested_expansion(n: usize) -> Vec<(Rational, Vec<usize>)> {
    let mut acc = vec![(one(), vec![n - 1])];
    for i in (0..n - 1).rev() {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (c, seq) in acc {
            let mut left = vec![i];
            left.extend(&seq);
            let mut right = seq;
            right.push(i);
            next.push((c.clone(), left));
            next.push((-c, right));
        }
        acc = next;
    }
    acc
}

fn mielnik_plebanski_table(n: usize) -> Vec<(Vec<usize>, Rational)> {
    let brackets = right_nested_expansion(n);
    let nn = int((n * n) as i64);
    let mut merged: HashMap<Vec<usize>, Rational> = HashMap::new();
    for sigma in all_permutations(n) {
        let d = sigma.descent_number();
        let w = sign(d) / binomial(n - 1, d) / &nn;
        let images = sigma.zero_based();
        for (c, seq) in &brackets {
            let tau: Vec<usize> = seq.iter().map(|&p| images[p]).collect();
            *merged.entry(tau).or_default() += &w * c;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| *c != Rational::default())
        .collect()
}

fn recursion_function(a: &CoefficientPath, max_degree: usize) -> PathSeries {
    let l = a.as_series(max_degree);
    let mut parts: Vec<PathSeries> = vec![PathSeries::zero(max_degree), l.integrate()];
    for n in 2..=max_degree {
        let mut integrand = PathSeries::zero(max_degree);
        for comp in compositions(n - 1) {
            let k = comp.len();
            let w = sign(k) * bernoulli_number(k) / factorial(k);
            if w == Rational::default() {
                continue;
            }
            let mut nested = l.clone();
            for &i in comp.iter().rev() {
                nested = parts[i].commutator(&nested);
            }
            integrand = integrand.add(&nested.scale(&w));
        }
        parts.push(integrand.integrate());
    }
    parts
        .iter()
        .fold(PathSeries::zero(max_degree), |acc, p| acc.add(p))
}

/// Residual of `E(x) = x` for a series in degree-zero generators.
pub fn eulerian_fixed_residual<C: Coeff>(x: &Series<C>) -> Series<C> {
    let mut projected = Series::zero(x.max_degree());
    for (w, c) in x.terms() {
        if w.is_empty() {
            projected.add_term(Vec::new(), c.clone());
            continue;
        }
        for t in eulerian_terms(w.len()).iter() {
            let permuted: Vec<u8> = t.forward.iter().map(|&i| w[i]).collect();
            projected.add_term(permuted, c.scale(&t.weight));
        }
    }
    projected.sub(x)
}

/// The Magnus series as a function of the upper limit.
pub fn magnus_function(
    a: &CoefficientPath,
    max_degree: usize,
    method: MagnusMethod,
) -> Result<PathSeries, LieError> {
    Ok(match method {
        MagnusMethod::MielnikPlebanski => {
            weighted_word_integrals(a, max_degree, mielnik_plebanski_table)
        }
        MagnusMethod::LogLambda => {
            let omega = weighted_word_integrals(a, max_degree, descent_table);
            let residual = eulerian_fixed_residual(&omega);
            if let Some((w, _)) = residual.terms().next() {
                return Err(LieError::NotEulerianFixed(w.len()));
            }
            omega
        }
        MagnusMethod::Recursion => recursion_function(a, max_degree),
        MagnusMethod::PicardLog => picard_texp_function(a, max_degree)
            .log()
            .expect("Picard series has unit constant term"),
    })
}

pub fn magnus(
    a: &CoefficientPath,
    s: &Rational,
    max_degree: usize,
    method: MagnusMethod,
) -> Result<LieElement, LieError> {
    let value = magnus_function(a, max_degree, method)?.eval(s);
    LieElement::from_series(a.generators(), &value)
}

pub fn magnus_mielnik_plebanski(
    a: &CoefficientPath,
    s: &Rational,
    max_degree: usize,
) -> LieElement {
    magnus(a, s, max_degree, MagnusMethod::MielnikPlebanski).expect("bracket sums are Lie")
}

pub fn magnus_recursion(a: &CoefficientPath, s: &Rational, max_degree: usize) -> LieElement {
    magnus(a, s, max_degree, MagnusMethod::Recursion).expect("bracket sums are Lie")
}

pub fn magnus_via_log_lambda(
    a: &CoefficientPath,
    s: &Rational,
    max_degree: usize,
) -> Result<LieElement, LieError> {
    magnus(a, s, max_degree, MagnusMethod::LogLambda)
}

/// `Σ_k (-1)^k/(k+1)! ad_Ω^k(Ω') - a`, which vanishes exactly when
/// `e^Ω` solves `Y' = Y a`.
pub fn hausdorff_residual_of(omega: &PathSeries, a: &CoefficientPath) -> PathSeries {
    let d = omega.max_degree();
    let mut term = omega.derivative();
    let mut acc = PathSeries::zero(d);
    for k in 0..d {
        acc = acc.add(&term.scale(&(sign(k) / factorial(k + 1))));
        term = omega.commutator(&term);
    }
    acc.sub(&a.as_series(d))
}

pub fn hausdorff_residual(a: &CoefficientPath, max_degree: usize) -> PathSeries {
    hausdorff_residual_of(&recursion_function(a, max_degree), a)
}

/// `log(e^{αx} e^{βy})` from the Magnus series of a two-segment path.
pub fn bch(alpha: &Rational, beta: &Rational, max_degree: usize) -> LieElement {
    magnus_recursion(&CoefficientPath::bch_path(alpha, beta), &one(), max_degree)
}

/// `log(e^{αx} e^{βy})` by truncated associative series.
pub fn bch_oracle(alpha: &Rational, beta: &Rational, max_degree: usize) -> ScalarSeries {
    let x = ScalarSeries::generator(0, max_degree).scale(alpha);
    let y = ScalarSeries::generator(1, max_degree).scale(beta);
    x.exp()
        .unwrap()
        .mul(&y.exp().unwrap())
        .log()
        .expect("product of exponentials is unipotent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{rat, Poly};

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn linear_path() -> CoefficientPath {
        CoefficientPath::new(xy(), vec![PiecewisePoly::one(), Poly::t().into()])
    }

    #[test]
    fn abelian_input() {
        let a = CoefficientPath::constant(xy(), 0, one());
        let s = rat(3, 5);
        for m in MagnusMethod::ROUTES {
            let lie = magnus(&a, &s, 4, m).unwrap();
            assert_eq!(lie.coeff(&[0]), s, "{m:?}");
            assert_eq!(lie.terms().count(), 1);
        }
        let e = picard_texp(&a, &s, 3);
        assert_eq!(e.coeff(&[0, 0]), &s * &s / int(2));
    }

    #[test]
    fn linear_path_degree_two() {
        for m in [
            MagnusMethod::MielnikPlebanski,
            MagnusMethod::Recursion,
            MagnusMethod::LogLambda,
            MagnusMethod::PicardLog,
        ] {
            let lie = magnus(&linear_path(), &one(), 2, m).unwrap();
            assert_eq!(lie.coeff(&[0]), one());
            assert_eq!(lie.coeff(&[1]), rat(1, 2));
            assert_eq!(lie.coeff(&[0, 1]), rat(1, 12), "{m:?}");
        }
    }

    #[test]
    fn routes_match_oracle_degree_five() {
        let a = CoefficientPath::new(
            xy(),
            vec![
                Poly::from_coeffs(vec![rat(1, 2), int(-1), int(2)]).into(),
                Poly::affine(int(3), int(1)).into(),
            ],
        );
        let oracle = magnus(&a, &rat(2, 3), 5, MagnusMethod::PicardLog).unwrap();
        for m in MagnusMethod::ROUTES {
            assert_eq!(magnus(&a, &rat(2, 3), 5, m).unwrap(), oracle, "{m:?}");
        }
        assert!(hausdorff_residual(&a, 5).is_zero());
    }

    #[test]
    fn bch_values() {
        let b = bch(&one(), &one(), 2);
        assert_eq!(b.coeff(&[0, 1]), rat(1, 2));
        let b4 = bch(&one(), &one(), 4);
        let oracle = LieElement::from_series(&xy(), &bch_oracle(&one(), &one(), 4)).unwrap();
        assert_eq!(b4, oracle);
        assert_eq!(
            bch(&one(), &Rational::default(), 4).to_series(),
            ScalarSeries::generator(0, 4)
        );
    }
}
