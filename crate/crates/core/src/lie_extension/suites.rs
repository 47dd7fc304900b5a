use super::lie::LieElement;
use super::magnus::{
    bch as bch_series, bch_oracle, hausdorff_residual, magnus_function, picard_texp_function,
    MagnusMethod,
};
use super::path::CoefficientPath;
use super::series::{PathSeries, ScalarSeries};
use crate::scalars_polys::{int, one, rat, PiecewisePoly, Poly, Rational};
use crate::verify::{Check, VerifyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Randomized test paths on the generators `x, y`.
pub struct PathBattery {
    pub paths: Vec<(String, CoefficientPath)>,
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    Poly::from_coeffs(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=4)))
            .collect(),
    )
}

fn random_piecewise(rng: &mut ChaCha8Rng) -> PiecewisePoly {
    let bps = if rng.gen_bool(0.5) {
        vec![int(0), rat(1, 2), int(1)]
    } else {
        vec![int(0), rat(1, 3), rat(2, 3), int(1)]
    };
    let pieces = (1..bps.len()).map(|_| random_poly(rng, 1)).collect();
    PiecewisePoly::new(bps, pieces).expect("valid breakpoints")
}

/// `polynomial` random polynomial paths followed by `piecewise` random
/// piecewise paths, reproducible from `seed`.
pub fn path_battery(seed: u64, polynomial: usize, piecewise: usize) -> PathBattery {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = || vec!["x".to_string(), "y".to_string()];
    let mut paths = Vec::new();
    for i in 0..polynomial {
        let c = vec![
            random_poly(&mut rng, 2).into(),
            random_poly(&mut rng, 2).into(),
        ];
        paths.push((format!("polynomial #{i}"), CoefficientPath::new(names(), c)));
    }
    for i in 0..piecewise {
        let c = vec![random_piecewise(&mut rng), random_piecewise(&mut rng)];
        paths.push((format!("piecewise #{i}"), CoefficientPath::new(names(), c)));
    }
    PathBattery { paths }
}

fn series_json(s: &PathSeries) -> Value {
    Value::Array(
        s.terms()
            .map(|(w, c)| {
                serde_json::json!([
                    w.iter().map(|g| g.to_string()).collect::<String>(),
                    c.to_string()
                ])
            })
            .collect(),
    )
}

fn path_label(label: &str, a: &CoefficientPath) -> Vec<String> {
    let comps: Vec<String> = a
        .generators()
        .iter()
        .zip(a.components())
        .map(|(g, c)| format!("({c}) {g}"))
        .collect();
    vec![label.to_string(), comps.join(" + ")]
}

fn vanishing_series(relation: impl Into<String>, args: &[String], s: &PathSeries) -> Check {
    Check::new(relation, args, s.is_zero(), series_json(s))
}

fn battery(cfg: &VerifyConfig) -> PathBattery {
    path_battery(cfg.seed, 10, 5)
}

pub(crate) fn magnus(cfg: &VerifyConfig) -> Vec<Check> {
    let d = cfg.lie_degree;
    let mut checks = Vec::new();
    for (label, a) in battery(cfg).paths {
        let args = path_label(&label, &a);
        let picard = picard_texp_function(&a, d);
        let oracle = magnus_function(&a, d, MagnusMethod::PicardLog).expect("log exists");
        let mut lie_values = Vec::new();
        for m in MagnusMethod::ROUTES {
            match magnus_function(&a, d, m) {
                Ok(omega) => {
                    checks.push(vanishing_series(
                        format!("{} - picard-log", m.name()),
                        &args,
                        &omega.sub(&oracle),
                    ));
                    let e = omega.exp().expect("no constant term");
                    checks.push(vanishing_series(
                        format!("exp({}) - picard", m.name()),
                        &args,
                        &e.sub(&picard),
                    ));
                    lie_values.push((
                        m,
                        LieElement::from_series(a.generators(), &omega.eval(&one())),
                    ));
                }
                Err(err) => checks.push(Check::new(
                    m.name(),
                    &args,
                    false,
                    Value::from(err.to_string()),
                )),
            }
        }
        for (m, v) in &lie_values {
            checks.push(Check::new(
                format!("{} is a Lie element", m.name()),
                &args,
                v.is_ok(),
                v.as_ref()
                    .map(|l| serde_json::to_value(l).unwrap())
                    .unwrap_or_else(|e| Value::from(e.to_string())),
            ));
        }
        checks.push(vanishing_series(
            "hausdorff residual",
            &args,
            &hausdorff_residual(&a, d),
        ));
        let forward = magnus_function(&a, d, MagnusMethod::Recursion)
            .unwrap()
            .eval(&one());
        let back = magnus_function(&a.reversed(), d, MagnusMethod::Recursion)
            .unwrap()
            .eval(&one());
        let product = forward.exp().unwrap().mul(&back.exp().unwrap());
        let residual = product.sub(&ScalarSeries::unit(d));
        checks.push(Check::new(
            "exp(M(a)) exp(M(reversed a)) = 1",
            &args,
            residual.is_zero(),
            Value::from(format!("{residual:?}")),
        ));
    }
    checks
}

pub(crate) fn bch_weights() -> Vec<(Rational, Rational)> {
    vec![
        (one(), one()),
        (one(), Rational::default()),
        (rat(2, 3), rat(-1, 2)),
        (int(-1), int(3)),
    ]
}

pub(crate) fn bch(cfg: &VerifyConfig) -> Vec<Check> {
    let d = cfg.lie_degree;
    let mut checks = Vec::new();
    for (alpha, beta) in bch_weights() {
        let args = vec![format!("alpha={alpha}"), format!("beta={beta}")];
        let oracle = LieElement::from_series(
            &["x".to_string(), "y".to_string()],
            &bch_oracle(&alpha, &beta, d),
        )
        .expect("the BCH series is Lie");
        let got = bch_series(&alpha, &beta, d);
        for w in super::lie::lyndon_words(2, d) {
            let relation = format!("coefficient of {}", got.bracket_text(&w));
            checks.push(Check::equal(
                relation,
                &args,
                &got.coeff(&w),
                &oracle.coeff(&w),
            ));
        }
    }
    checks
}

pub(crate) fn ode(cfg: &VerifyConfig) -> Vec<Check> {
    let d = cfg.lie_degree;
    battery(cfg)
        .paths
        .into_iter()
        .map(|(label, a)| {
            let t = picard_texp_function(&a, d);
            let residual = t.derivative().sub(&t.mul(&a.as_series(d)));
            vanishing_series("d/ds T - T a", &path_label(&label, &a), &residual)
        })
        .collect()
}
