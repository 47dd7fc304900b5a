use interval_forms::ainfty_framework::{homotopy_transfer, GradedVector};
use interval_forms::combinatorics::{eulerian_coefficient, eulerian_table};
use interval_forms::forms::{PolyForm, WhitneyCochain};
use interval_forms::interval_morphisms::{
    phi_edge, phi_s_by_pullback, phi_s_recursive, Corruption, MorphismCatalog, PhiRoute,
};
use interval_forms::lie_extension::{
    bch, bch_oracle, hausdorff_residual_of, magnus_function, path_battery, LieElement,
    MagnusMethod, ScalarSeries,
};
use interval_forms::scalars_polys::{
    bernoulli_number, generalized_binomial, int, rat, PiecewisePoly, Poly, Rational,
};
use interval_forms::verify::{arrow_relations, run_suite, SuiteReport, VerifyConfig};
use interval_forms::whitney_structures::{de_rham_structure, dupont_contraction, CInftyStructure};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn suite(name: &str, cfg: &VerifyConfig) -> SuiteReport {
    run_suite(name, cfg).expect("known suite")
}

fn suites_pass(names: &[&str], cfg: &VerifyConfig) -> Outcome {
    let mut summary = Vec::new();
    for name in names {
        let report = suite(name, cfg);
        let failed = report.failures().count();
        if failed > 0 {
            let first = report.failures().next().unwrap();
            return Err(format!(
                "{name}: {failed}/{} failed, first {} on {:?}: {}",
                report.checks.len(),
                first.relation,
                first.basis_tensor,
                first.residual
            ));
        }
        summary.push(format!("{name} {} checks", report.checks.len()));
    }
    Ok(summary.join(", "))
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn eulerian() -> Outcome {
    let expected: Vec<Vec<Rational>> = vec![
        vec![int(1)],
        vec![rat(1, 2), rat(-1, 2)],
        vec![rat(1, 3), rat(-1, 6), rat(1, 3)],
        vec![rat(1, 4), rat(-1, 12), rat(1, 12), rat(-1, 4)],
        vec![rat(1, 5), rat(-1, 20), rat(1, 30), rat(-1, 20), rat(1, 5)],
        vec![
            rat(1, 6),
            rat(-1, 30),
            rat(1, 60),
            rat(-1, 60),
            rat(1, 30),
            rat(-1, 6),
        ],
    ];
    expect("triangle", eulerian_table(6), expected)?;
    let c = |n: usize, d: usize| eulerian_coefficient(n, d).unwrap();
    for n in 2..=8 {
        for d in 0..n {
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            expect("symmetry", c(n, d), sign * c(n, n - d - 1))?;
            if d + 1 < n {
                expect("recurrence", c(n, d), c(n - 1, d) + c(n, d + 1))?;
            }
        }
    }
    Ok("21 entries, identities through n = 8".into())
}

fn spot_values() -> Outcome {
    let cat = MorphismCatalog::new(6);
    let dt = PolyForm::dt();
    let tdt = PolyForm::t_pow_dt(1);

    // φ₂ by each route, and by the descent-weighted simplex integrals
    // 1/2 ∫∫_{t1<t2} t2 - 1/2 ∫∫_{t1<t2} t1 = 1/2 (1/3 - 1/6)
    let twelfth = WhitneyCochain::edge(rat(1, 12));
    for route in PhiRoute::ALL {
        expect(
            route.name(),
            phi_edge(route, &[dt.clone(), tdt.clone()]),
            twelfth.clone(),
        )?;
    }
    expect(
        "phi_2 by hand",
        WhitneyCochain::edge(rat(1, 2) * (rat(1, 3) - rat(1, 6))),
        twelfth,
    )?;

    // γ₂(dt, t) against C(t,2) + (1 - t) t
    let gamma = cat
        .gamma()
        .eval(&[WhitneyCochain::dt(), WhitneyCochain::t()]);
    let one_minus_t = Poly::affine(int(-1), int(1));
    let oracle = &generalized_binomial(2) + &(&one_minus_t * &Poly::t());
    let half_t_one_minus_t = Poly::from_coeffs(vec![int(0), rat(1, 2), rat(-1, 2)]);
    expect("gamma oracle", oracle.clone(), half_t_one_minus_t.clone())?;
    expect(
        "gamma_2(dt, t)",
        gamma,
        PolyForm::function(half_t_one_minus_t),
    )?;

    // μ₂(t, dt) against the inclusion produced by homotopy transfer
    let pair = [WhitneyCochain::t(), WhitneyCochain::dt()];
    let mu = cat.mu().eval(&pair);
    let half_t2_minus_t = Poly::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)]);
    let transferred = homotopy_transfer(&de_rham_structure(6), &dupont_contraction());
    expect(
        "mu by transfer",
        transferred.inclusion.eval(&pair),
        PolyForm::function(half_t2_minus_t.clone()),
    )?;
    expect("mu_2(t, dt)", mu, PolyForm::function(half_t2_minus_t))?;

    // m₃(dt, t, dt) closed form against homotopy transfer from de Rham
    let word = [
        WhitneyCochain::dt(),
        WhitneyCochain::t(),
        WhitneyCochain::dt(),
    ];
    let sixth = WhitneyCochain::edge(rat(1, 6));
    expect(
        "m_3 closed form",
        CInftyStructure::new(6).m(&word).unwrap(),
        sixth.clone(),
    )?;
    expect(
        "m_3 transferred",
        cat.transferred().eval(&word),
        sixth.clone(),
    )?;
    expect(
        "m_3 from B_2",
        WhitneyCochain::edge(int(2) * bernoulli_number(2) / int(2)),
        sixth,
    )?;

    // M₂(1 ⊗ t)(s) by the Bernoulli recursion and by pulling φ back along β_s
    let rec = phi_s_recursive(&[PiecewisePoly::one(), Poly::t().into()]);
    expect("M_2 recursion", rec, Poly::term(rat(1, 12), 3).into())?;
    for s in [rat(1, 3), rat(1, 2), int(2), rat(-3, 4)] {
        let cube = &s * &s * &s / int(12);
        expect(
            "M_2 pullback",
            phi_s_by_pullback(&[dt.clone(), tdt.clone()], &s),
            WhitneyCochain::edge(cube),
        )?;
    }
    Ok("phi_2, gamma_2, mu_2, m_3, M_2 each by two routes".into())
}

fn magnus_suite(cfg: &VerifyConfig) -> Outcome {
    let summary = suites_pass(&["magnus"], cfg)?;
    let battery = path_battery(cfg.seed, 10, 5);
    let (_, a) = &battery.paths[0];
    let mut omega = magnus_function(a, cfg.lie_degree, MagnusMethod::MielnikPlebanski)
        .map_err(|e| e.to_string())?;
    omega.add_term(vec![0, 1], Poly::term(int(1), 2).into());
    if hausdorff_residual_of(&omega, a).is_zero() {
        return Err("corrupted Magnus series passes the Hausdorff identity".into());
    }
    Ok(format!(
        "{summary}; corrupted M_2 leaves a nonzero Hausdorff residual"
    ))
}

fn bch_suite(cfg: &VerifyConfig) -> Outcome {
    let summary = suites_pass(&["bch"], cfg)?;
    let oracle = bch_oracle(&int(1), &int(1), 4);
    let lie = bch(&int(1), &int(1), 4);
    expect("bch vs oracle", lie.to_series(), oracle.clone())?;
    let x = ScalarSeries::generator(0, 4);
    let y = ScalarSeries::generator(1, 4);
    let yxxy = y.commutator(&x.commutator(&x.commutator(&y)));
    expect("degree 4", oracle.homogeneous(4), yxxy.scale(&rat(-1, 24)))?;
    let names = vec!["x".to_string(), "y".to_string()];
    let roundtrip = LieElement::from_series(&names, &oracle).map_err(|e| e.to_string())?;
    expect(
        "lyndon coefficients",
        roundtrip.terms().collect::<Vec<_>>(),
        lie.terms().collect(),
    )?;
    Ok(format!("{summary}; degree 4 part is -1/24 [y,[x,[x,y]]]"))
}

fn m3_words() -> Vec<Vec<WhitneyCochain>> {
    let basis = [
        WhitneyCochain::unit(),
        WhitneyCochain::t(),
        WhitneyCochain::dt(),
    ];
    let mut out = Vec::new();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                out.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// The output degree of `m_3` on a word is `|a| + |b| + |c| + 1`; only
/// targets of that degree are genuine single-coefficient changes.
fn m3_deltas(word: &[WhitneyCochain]) -> Vec<WhitneyCochain> {
    match word.iter().map(|x| x.degree()).sum::<i32>() + 1 {
        -1 => vec![WhitneyCochain::unit(), WhitneyCochain::t()],
        0 => vec![WhitneyCochain::dt()],
        _ => Vec::new(),
    }
}

fn phi2_deltas(word: &[PolyForm]) -> Vec<WhitneyCochain> {
    match word.iter().map(|x| x.degree()).sum::<i32>() {
        -1 => vec![WhitneyCochain::unit(), WhitneyCochain::t()],
        0 => vec![WhitneyCochain::dt()],
        _ => Vec::new(),
    }
}

fn phi2_words() -> Vec<Vec<PolyForm>> {
    let basis: Vec<PolyForm> = (0..=2)
        .flat_map(|k| [PolyForm::t_pow(k), PolyForm::t_pow_dt(k)])
        .collect();
    let mut out = Vec::new();
    for a in &basis {
        for b in &basis {
            out.push(vec![a.clone(), b.clone()]);
        }
    }
    out
}

fn negative_controls() -> Outcome {
    let mut survivors = Vec::new();
    let mut tried = 0;
    for word in m3_words() {
        for delta in m3_deltas(&word) {
            tried += 1;
            let cfg = VerifyConfig {
                order: 4,
                corruption: Some(Corruption::M3 {
                    word: word.clone(),
                    delta: delta.clone(),
                }),
                ..VerifyConfig::default()
            };
            if suite("structures", &cfg).passed {
                survivors.push(format!("m_3{word:?} += {delta}"));
            }
        }
    }
    for word in phi2_words() {
        for delta in phi2_deltas(&word) {
            tried += 1;
            let cfg = VerifyConfig {
                order: 4,
                form_degree: 5,
                corruption: Some(Corruption::Phi2 {
                    word: word.clone(),
                    delta: delta.clone(),
                }),
                ..VerifyConfig::default()
            };
            let checks = arrow_relations("phi", &cfg, 4).expect("phi is cataloged");
            if checks.iter().all(|c| c.passed) {
                survivors.push(format!("phi_2{word:?} += {delta}"));
            }
        }
    }
    let default_m3 = VerifyConfig {
        corruption: Some(Corruption::default_m3()),
        ..VerifyConfig::default()
    };
    let report = suite("structures", &default_m3);
    let nonzero = report.failures().all(|c| c.residual != 0);
    if report.passed || !nonzero {
        survivors.push("default m_3 corruption".into());
    }
    if survivors.is_empty() {
        Ok(format!("{} corruptions all detected", tried + 1))
    } else {
        Err(format!("undetected: {}", survivors.join("; ")))
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("eulerian table", Box::new(eulerian)),
        (
            "idempotents",
            Box::new(|| suites_pass(&["idempotents"], &VerifyConfig::default())),
        ),
        (
            "contraction",
            Box::new(|| suites_pass(&["contraction"], &VerifyConfig::default())),
        ),
        (
            "structures",
            Box::new(|| suites_pass(&["structures"], &VerifyConfig::default())),
        ),
        (
            "morphism relations",
            Box::new(|| suites_pass(&["morphism-relations"], &VerifyConfig::default())),
        ),
        (
            "diagram identities",
            Box::new(|| suites_pass(&["diagram-identities"], &VerifyConfig::default())),
        ),
        (
            "phi routes and transfer",
            Box::new(|| {
                suites_pass(
                    &["phi-routes", "transfer-equality"],
                    &VerifyConfig::default(),
                )
            }),
        ),
        ("spot values", Box::new(spot_values)),
        (
            "magnus",
            Box::new(|| magnus_suite(&VerifyConfig::default())),
        ),
        ("bch", Box::new(|| bch_suite(&VerifyConfig::default()))),
        (
            "ode",
            Box::new(|| suites_pass(&["ode"], &VerifyConfig::default())),
        ),
        (
            "uniqueness",
            Box::new(|| suites_pass(&["uniqueness"], &VerifyConfig::default())),
        ),
        ("negative controls", Box::new(negative_controls)),
    ];
    println!();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
