use super::basis::{cochain_basis, form_basis, form_words, one_form_words};
use super::{Check, VerifyConfig};
use crate::ainfty_framework::{
    basis_words, compose, identity_morphism, reconstruct_from_linear_part, relation_residual,
    shuffle_violations, square_residual, GradedVector, TruncatedCoderivation, TruncatedMorphism,
};
use crate::combinatorics::{
    dynkin, eulerian_adjoint, eulerian_coefficient, eulerian_projector, GradedLetter, TensorElement,
};
use crate::forms::{dupont_h, dupont_pi, inclusion, PolyForm, WhitneyCochain};
use crate::interval_morphisms::{phi_s_recursive, MorphismCatalog, PhiRoute};
use crate::scalars_polys::{int, one, rat, sign, PiecewisePoly, Poly, Rational};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use std::collections::HashMap;
use std::fmt::Display;
use std::sync::Arc;

fn catalog(cfg: &VerifyConfig) -> MorphismCatalog {
    match &cfg.corruption {
        Some(c) => MorphismCatalog::with_corruption(cfg.order, c.clone()),
        None => MorphismCatalog::new(cfg.order),
    }
}

fn letter_name(l: &GradedLetter) -> String {
    format!("x{}", l.id)
}

fn tensor_json(t: &TensorElement) -> Value {
    Value::Array(
        t.terms()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(letter_name).collect();
                serde_json::json!([word.join(" "), c.to_string()])
            })
            .collect(),
    )
}

fn tensor_check(relation: &str, w: &[GradedLetter], residual: &TensorElement) -> Check {
    let args: Vec<String> = w.iter().map(letter_name).collect();
    Check::new(relation, &args, residual.is_zero(), tensor_json(residual))
}

fn apply_table(
    table: &HashMap<Vec<GradedLetter>, TensorElement>,
    x: &TensorElement,
) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in x.terms() {
        out.add_assign(&table[w].scale(c));
    }
    out
}

pub(super) fn idempotents(_cfg: &VerifyConfig) -> Vec<Check> {
    let letters: Vec<GradedLetter> = (0..5).map(|i| GradedLetter::new(i, 0)).collect();
    let mut checks = eulerian_identities(8);
    for n in 1..=5 {
        let words = basis_words(&letters, n);
        let images: Vec<(Vec<GradedLetter>, TensorElement, TensorElement)> = words
            .par_iter()
            .map(|w| {
                let x = TensorElement::word(w.clone());
                (w.clone(), eulerian_projector(&x), eulerian_adjoint(&x))
            })
            .collect();
        let e: HashMap<_, _> = images
            .iter()
            .map(|(w, a, _)| (w.clone(), a.clone()))
            .collect();
        let es: HashMap<_, _> = images
            .iter()
            .map(|(w, _, b)| (w.clone(), b.clone()))
            .collect();
        let per_word: Vec<Vec<Check>> = images
            .par_iter()
            .map(|(w, ew, esw)| {
                let mut out = vec![
                    tensor_check("E∘E = E", w, &apply_table(&e, ew).sub(ew)),
                    tensor_check("E*∘E* = E*", w, &apply_table(&es, esw).sub(esw)),
                    tensor_check("dynkin∘E = E", w, &dynkin(ew).sub(ew)),
                ];
                // every nonzero entry of either matrix must match its transpose partner
                let mut bad = TensorElement::zero();
                for (v, c) in ew.terms() {
                    let partner = es[v].coeff(w);
                    if *c != partner {
                        bad.add_term(v.clone(), c - partner);
                    }
                }
                for (u, c) in esw.terms() {
                    let partner = e[u].coeff(w);
                    if *c != partner {
                        bad.add_term(u.clone(), c - partner);
                    }
                }
                out.push(tensor_check("<E a, b> = <a, E* b>", w, &bad));
                for p in 1..w.len() {
                    let a = TensorElement::word(w[..p].to_vec());
                    let b = TensorElement::word(w[p..].to_vec());
                    out.push(tensor_check(
                        &format!("E*(shuffle {p}|{})", w.len() - p),
                        w,
                        &apply_table(&es, &a.shuffle(&b)),
                    ));
                }
                out
            })
            .collect();
        checks.extend(per_word.into_iter().flatten());
    }
    checks
}

fn eulerian_identities(n_max: usize) -> Vec<Check> {
    let c = |n: usize, d: usize| eulerian_coefficient(n, d).unwrap();
    let mut checks = Vec::new();
    for n in 2..=n_max {
        for d in 0..n {
            let args = [format!("n={n}"), format!("d={d}")];
            if d + 1 < n {
                let rhs = c(n - 1, d) + c(n, d + 1);
                checks.push(Check::equal(
                    "C(n,d) = C(n-1,d) + C(n,d+1)",
                    &args,
                    &c(n, d),
                    &rhs,
                ));
            }
            let mirrored = sign(n + 1) * c(n, n - d - 1);
            checks.push(Check::equal(
                "C(n,d) = (-1)^(n+1) C(n,n-d-1)",
                &args,
                &c(n, d),
                &mirrored,
            ));
        }
    }
    checks
}

fn piecewise_samples() -> Vec<PolyForm> {
    let half = rat(1, 2);
    let step = PiecewisePoly::new(
        vec![int(0), half.clone(), int(1)],
        vec![Poly::one(), Poly::t()],
    )
    .expect("valid breakpoints");
    let tent = PiecewisePoly::new(
        vec![int(0), half, int(1)],
        vec![Poly::t(), Poly::affine(-one(), one())],
    )
    .expect("valid breakpoints");
    vec![PolyForm::one_form(step), PolyForm::function(tent)]
}

pub(super) fn contraction(cfg: &VerifyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for c in cochain_basis() {
        let args = [c.clone()];
        checks.push(Check::vanishing(
            "π∘ι - id",
            &args,
            &dupont_pi(&inclusion(&c)).sub(&c),
        ));
        checks.push(Check::vanishing("h∘ι", &args, &dupont_h(&inclusion(&c))));
    }
    let mut forms = form_basis(cfg.poly_degree);
    forms.extend(piecewise_samples());
    for w in forms {
        let args = [w.clone()];
        let homotopy = dupont_h(&w).d().add(&dupont_h(&w.d()));
        let expected = inclusion(&dupont_pi(&w)).sub(&w);
        checks.push(Check::vanishing(
            "dh + hd - (ιπ - id)",
            &args,
            &homotopy.sub(&expected),
        ));
        checks.push(Check::vanishing("h∘h", &args, &dupont_h(&dupont_h(&w))));
        checks.push(Check::vanishing("π∘h", &args, &dupont_pi(&dupont_h(&w))));
    }
    checks
}

fn words_up_to<S: Clone + Send + Sync>(basis: &[S], max: usize) -> Vec<Vec<S>> {
    (1..=max).flat_map(|n| basis_words(basis, n)).collect()
}

fn par_checks<S: Sync>(items: &[S], f: impl Fn(&S) -> Vec<Check> + Sync + Send) -> Vec<Check> {
    items.par_iter().flat_map_iter(f).collect()
}

pub(super) fn structures(cfg: &VerifyConfig) -> Vec<Check> {
    let cat = catalog(cfg);
    let m = cat.cinfty();
    let transferred = cat.transferred();
    let cup = cat.cup();
    let words = words_up_to(&cochain_basis(), cfg.order);
    let mut checks = par_checks(&words, |w| {
        let mut out = vec![
            Check::vanishing("transferred - m", w, &transferred.eval(w).sub(&m.eval(w))),
            Check::vanishing("m∘m", w, &square_residual(&m, w)),
        ];
        if w.len() <= 3 {
            out.push(Check::vanishing("cup∘cup", w, &square_residual(&cup, w)));
        }
        out
    });
    for v in shuffle_violations(&m, &cochain_basis(), cfg.order) {
        let mut args = v.left.clone();
        args.extend(v.right.iter().cloned());
        let residual = serde_json::to_value(&v.value).unwrap_or(Value::Null);
        checks.push(Check::new(
            format!("m on shuffle {}|{}", v.left.len(), v.right.len()),
            &args,
            false,
            residual,
        ));
    }
    let violations = checks
        .iter()
        .filter(|c| c.relation.starts_with("m on shuffle"))
        .count();
    checks.push(Check::new(
        "m vanishes on shuffles",
        &[format!("arity <= {}", cfg.order)],
        violations == 0,
        Value::from(violations),
    ));
    checks
}

fn relation_checks<S, T>(
    name: &str,
    f: &TruncatedMorphism<S, T>,
    q: &TruncatedCoderivation<S>,
    r: &TruncatedCoderivation<T>,
    words: &[Vec<S>],
) -> Vec<Check>
where
    S: GradedVector + Display,
    T: GradedVector + Serialize,
{
    let relation = format!("{name} relation");
    par_checks(words, |w| {
        vec![Check::vanishing(
            relation.clone(),
            w,
            &relation_residual(f, q, r, w),
        )]
    })
}

fn all_form_words(cfg: &VerifyConfig, max_arity: usize) -> Vec<Vec<PolyForm>> {
    (1..=max_arity)
        .flat_map(|n| form_words(n, cfg.form_degree))
        .collect()
}

/// Values of `s` at which the scaled morphisms are checked.
pub fn scaling_samples() -> Vec<Rational> {
    vec![rat(1, 2), rat(-2, 3)]
}

/// Relation residuals of one cataloged arrow; `phi_<s>` names a scaled `φ`.
pub fn arrow_relations(name: &str, cfg: &VerifyConfig, max_arity: usize) -> Option<Vec<Check>> {
    let cat = catalog(cfg);
    let n = max_arity.min(cfg.order);
    let (dr, cup, m) = (cat.de_rham(), cat.cup(), cat.cinfty());
    let forms = || all_form_words(cfg, n);
    let cochains = || words_up_to(&cochain_basis(), n);
    Some(match name {
        "lambda" => relation_checks(name, &cat.lambda(), &dr, &cup, &forms()),
        "mu" => relation_checks(name, &cat.mu(), &m, &dr, &cochains()),
        "exp" => relation_checks(name, &cat.exp(), &m, &cup, &cochains()),
        "log" => relation_checks(name, &cat.log(), &cup, &m, &cochains()),
        "gamma" => relation_checks(name, &cat.gamma(), &cup, &dr, &cochains()),
        "phi" => relation_checks(name, &cat.phi(), &dr, &m, &forms()),
        _ => {
            let s = crate::scalars_polys::parse_rational(name.strip_prefix("phi_")?)?;
            relation_checks(name, &cat.phi_s(&s), &dr, &m, &forms())
        }
    })
}

pub(super) fn morphism_relations(cfg: &VerifyConfig) -> Vec<Check> {
    let mut names: Vec<String> = ["lambda", "mu", "exp", "log", "gamma", "phi"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend(scaling_samples().iter().map(|s| format!("phi_{s}")));
    names
        .iter()
        .flat_map(|name| arrow_relations(name, cfg, cfg.relation_arity).unwrap_or_default())
        .collect()
}

fn identity_checks<S, T>(
    name: &str,
    left: &TruncatedMorphism<S, T>,
    right: &TruncatedMorphism<S, T>,
    words: &[Vec<S>],
) -> Vec<Check>
where
    S: GradedVector + Display,
    T: GradedVector + Serialize,
{
    par_checks(words, |w| {
        vec![Check::vanishing(name, w, &left.eval(w).sub(&right.eval(w)))]
    })
}

pub(super) fn diagram_identities(cfg: &VerifyConfig) -> Vec<Check> {
    let n = cfg.relation_arity.min(cfg.order);
    let cat = MorphismCatalog::new(n);
    let cat = match &cfg.corruption {
        Some(c) => MorphismCatalog::with_corruption(n, c.clone()),
        None => cat,
    };
    let cochains = words_up_to(&cochain_basis(), n);
    let forms = all_form_words(cfg, n);
    let id: TruncatedMorphism<WhitneyCochain, WhitneyCochain> = identity_morphism(n);
    let mut checks = Vec::new();
    checks.extend(identity_checks(
        "exp∘log = id",
        &compose(&cat.exp(), &cat.log()).unwrap(),
        &id,
        &cochains,
    ));
    checks.extend(identity_checks(
        "log∘exp = id",
        &compose(&cat.log(), &cat.exp()).unwrap(),
        &id,
        &cochains,
    ));
    checks.extend(identity_checks(
        "lambda∘gamma = id",
        &compose(&cat.lambda(), &cat.gamma()).unwrap(),
        &id,
        &cochains,
    ));
    checks.extend(identity_checks(
        "phi∘mu = id",
        &compose(&cat.phi(), &cat.mu()).unwrap(),
        &id,
        &cochains,
    ));
    checks.extend(identity_checks(
        "lambda∘mu = exp",
        &compose(&cat.lambda(), &cat.mu()).unwrap(),
        &cat.exp(),
        &cochains,
    ));
    checks.extend(identity_checks(
        "log∘lambda = phi",
        &compose(&cat.log(), &cat.lambda()).unwrap(),
        &cat.phi(),
        &forms,
    ));
    checks
}

pub(super) fn phi_routes(cfg: &VerifyConfig) -> Vec<Check> {
    let n = cfg.relation_arity.min(cfg.order);
    let one_forms: Vec<Vec<PolyForm>> = (1..=n)
        .flat_map(|k| one_form_words(k, cfg.form_degree))
        .collect();
    let mut checks = par_checks(&one_forms, |w| {
        let routes: Vec<WhitneyCochain> = PhiRoute::ALL
            .iter()
            .map(|&r| crate::interval_morphisms::phi_edge(r, w))
            .collect();
        let mut out: Vec<Check> = PhiRoute::ALL[1..]
            .iter()
            .zip(&routes[1..])
            .map(|(r, v)| {
                Check::vanishing(
                    format!("{} - {}", r.name(), PhiRoute::ALL[0].name()),
                    w,
                    &v.sub(&routes[0]),
                )
            })
            .collect();
        out.extend(scaling_checks(w));
        out
    });
    let mixed: Vec<Vec<PolyForm>> = (2..=n.min(3))
        .flat_map(|k| form_words(k, cfg.form_degree.min(4)))
        .filter(|w| w.iter().any(|x| !x.f0.is_zero()))
        .collect();
    checks.extend(par_checks(&mixed, |w| {
        PhiRoute::ALL
            .iter()
            .map(|&r| {
                Check::vanishing(
                    format!("{} vanishes on 0-forms", r.name()),
                    w,
                    &crate::interval_morphisms::phi_edge(r, w),
                )
            })
            .collect()
    }));
    checks
}

/// Largest total input degree sampled by the scaling checks.
const SCALING_DEGREE: usize = 4;

/// Recursion against `φ ∘ β_s^*` at enough values of `s` to pin down the
/// polynomial, plus the degree bound and the value at `s = 1`.
fn scaling_checks(w: &[PolyForm]) -> Vec<Check> {
    let input_degree = w.iter().filter_map(PolyForm::max_degree).sum::<usize>();
    if w.len() > 4 || input_degree > SCALING_DEGREE {
        return Vec::new();
    }
    let coeffs: Vec<PiecewisePoly> = w.iter().map(|x| x.f1.clone()).collect();
    let rec = phi_s_recursive(&coeffs);
    let bound = input_degree + w.len();
    let mut out = vec![Check::new(
        "deg_s phi_s <= input degree + n",
        w,
        rec.max_degree().is_none_or(|d| d <= bound),
        Value::from(rec.to_string()),
    )];
    let mut bad = Vec::new();
    for k in 0..=bound {
        let s = rat(k as i64 + 1, 3);
        let lhs = WhitneyCochain::edge(rec.eval(&s));
        let rhs = crate::interval_morphisms::phi_s_by_pullback(w, &s);
        if w.len() > 1 && lhs != rhs {
            bad.push(serde_json::json!({ "s": s.to_string(), "recursion": lhs.to_string(), "pullback": rhs.to_string() }));
        }
    }
    out.push(Check::new(
        "phi_s recursion = phi∘beta_s",
        w,
        bad.is_empty(),
        Value::Array(bad),
    ));
    if w.len() > 1 {
        let at_one = WhitneyCochain::edge(rec.eval(&one()));
        out.push(Check::equal(
            "phi_1 = phi",
            w,
            &at_one,
            &crate::interval_morphisms::phi_edge(PhiRoute::EulerianIntegral, w),
        ));
    }
    out
}

pub(super) fn transfer_equality(cfg: &VerifyConfig) -> Vec<Check> {
    let n = cfg.relation_arity.min(cfg.order);
    let cat = catalog(cfg);
    let (phi, transfer) = (cat.phi(), cat.transfer_phi());
    identity_checks("phi - transfer", &phi, &transfer, &all_form_words(cfg, n))
}

pub(super) fn uniqueness(cfg: &VerifyConfig) -> Vec<Check> {
    let n = 4.min(cfg.order);
    let cat = catalog(cfg);
    let rebuilt = reconstruct_from_linear_part(
        Arc::new(dupont_pi),
        &cat.de_rham(),
        &cat.cinfty(),
        Arc::new(|x: &PolyForm| !x.f0.is_zero()),
        Arc::new(|y: &PolyForm| PolyForm::function(-&y.f1.integrate_from_zero())),
        n,
    );
    identity_checks(
        "reconstructed - phi",
        &rebuilt,
        &cat.phi(),
        &all_form_words(cfg, n),
    )
}
