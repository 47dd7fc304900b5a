use crate::{Config, Output, TableKind};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use interval_forms::combinatorics::eulerian_table;
use interval_forms::forms::{PolyForm, WhitneyCochain};
use interval_forms::interval_morphisms::{
    gamma_polynomial, log_coefficient, mu_polynomial, Arrow, Corruption, MorphismCatalog, PhiRoute,
};
use interval_forms::lie_extension::{self, LieElement, MagnusMethod};
use interval_forms::scalars_polys::{bernoulli_numbers, factorial, one, Rational};
use interval_forms::syntax::{parse_cochain, parse_form, parse_path, parse_scalar};
use interval_forms::verify::{self, arrow_relations, SuiteReport, VerifyConfig, SUITES};
use interval_forms::whitney_structures::CInftyStructure;
use serde_json::{json, Value};

pub enum Outcome {
    Pass,
    Fail,
}

fn emit(cfg: &Config, json: &Value, table: impl FnOnce() -> String) {
    match cfg.output {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(json).expect("serializable")
        ),
        Output::Table => print!("{}", table()),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn table(cfg: &Config, kind: TableKind, n_max: Option<usize>) -> Result<Outcome> {
    let order = cfg.order as usize;
    let n_max = n_max.unwrap_or(order);
    if n_max > order {
        bail!("n_max {n_max} exceeds the truncation order {order}");
    }
    let (name, rows): (&str, Vec<(String, Vec<String>)>) = match kind {
        TableKind::Eulerian => (
            "eulerian",
            eulerian_table(n_max)
                .iter()
                .enumerate()
                .map(|(i, r)| (format!("n={}", i + 1), strings(r)))
                .collect(),
        ),
        TableKind::Bernoulli => (
            "bernoulli",
            vec![("B_n".into(), strings(&bernoulli_numbers(n_max)))],
        ),
        TableKind::M => (
            "m",
            CInftyStructure::new(n_max)
                .table(n_max)
                .iter()
                .enumerate()
                .map(|(i, r)| (format!("arity={}", i + 2), strings(r)))
                .collect(),
        ),
        TableKind::Mu => (
            "mu",
            (1..n_max)
                .map(|n| {
                    let polys = (0..=n).map(|i| mu_polynomial(n, i).to_string()).collect();
                    (format!("arity={}", n + 1), polys)
                })
                .collect(),
        ),
        TableKind::Gamma => (
            "gamma",
            (2..=n_max)
                .map(|n| {
                    let mut polys: Vec<String> =
                        (0..n).map(|i| gamma_polynomial(n, i).to_string()).collect();
                    polys.push(format!("({}) dt", log_coefficient(n)));
                    (format!("arity={n}"), polys)
                })
                .collect(),
        ),
        TableKind::Exp => (
            "exp",
            vec![(
                "dt^n".into(),
                (1..=n_max)
                    .map(|n| (one() / factorial(n)).to_string())
                    .collect(),
            )],
        ),
        TableKind::Log => (
            "log",
            vec![(
                "dt^n".into(),
                (1..=n_max)
                    .map(|n| log_coefficient(n).to_string())
                    .collect(),
            )],
        ),
    };
    let json = if rows.len() == 1 {
        json!({ "kind": name, "values": rows[0].1 })
    } else {
        json!({ "kind": name, "rows": rows.iter().map(|(label, r)| json!({ "label": label, "values": r })).collect::<Vec<_>>() })
    };
    emit(cfg, &json, || {
        rows.iter()
            .map(|(label, r)| format!("{label:>9}  {}\n", r.join("  ")))
            .collect()
    });
    Ok(Outcome::Pass)
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CorruptKind {
    /// shift m_3(dt, t, dt) by dt
    M3,
    /// shift phi_2(dt, t dt) by dt
    Phi2,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`
    suite: String,
    /// Highest arity for morphism relations
    #[arg(long, default_value_t = 5)]
    max_arity: usize,
    /// Cap on the total polynomial degree of basis tensors of forms
    #[arg(long, default_value_t = 8)]
    form_degree: usize,
    /// Seed for randomized path batteries
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Only list failing checks in the report
    #[arg(long)]
    failures_only: bool,
    /// Negative control: damage one catalog coefficient before checking
    #[arg(long, value_enum)]
    corrupt: Option<CorruptKind>,
}

fn verify_config(cfg: &Config, max_arity: usize, form_degree: usize, seed: u64) -> VerifyConfig {
    VerifyConfig {
        order: cfg.order as usize,
        poly_degree: cfg.poly_degree as usize,
        lie_degree: cfg.lie_degree as usize,
        relation_arity: max_arity,
        form_degree,
        seed,
        corruption: None,
    }
}

fn report_json(r: &SuiteReport, failures_only: bool) -> Value {
    let checks: Vec<&verify::Check> = if failures_only {
        r.failures().collect()
    } else {
        r.checks.iter().collect()
    };
    json!({
        "suite": r.suite,
        "passed": r.passed,
        "total": r.checks.len(),
        "failed": r.failures().count(),
        "checks": checks,
    })
}

fn report_table(r: &SuiteReport) -> String {
    let mut out = format!("{} {}\n", if r.passed { "PASS" } else { "FAIL" }, r.suite);
    for (relation, total, failed) in r.tally() {
        out += &format!("  {relation:<40} {total:>7} checked  {failed:>5} failed\n");
    }
    for c in r.failures().take(10) {
        out += &format!(
            "  ✗ {} on {}: {}\n",
            c.relation,
            c.basis_tensor.join(" ⊗ "),
            c.residual
        );
    }
    out
}

fn emit_reports(cfg: &Config, reports: &[SuiteReport], failures_only: bool) -> Outcome {
    let json = if reports.len() == 1 {
        report_json(&reports[0], failures_only)
    } else {
        Value::Array(
            reports
                .iter()
                .map(|r| report_json(r, failures_only))
                .collect(),
        )
    };
    emit(cfg, &json, || reports.iter().map(report_table).collect());
    if reports.iter().all(|r| r.passed) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn verify(cfg: &Config, args: &VerifyArgs) -> Result<Outcome> {
    let mut vc = verify_config(cfg, args.max_arity, args.form_degree, args.seed);
    vc.corruption = args.corrupt.map(|k| match k {
        CorruptKind::M3 => Corruption::default_m3(),
        CorruptKind::Phi2 => Corruption::default_phi2(),
    });
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let reports = names
        .iter()
        .map(|n| verify::run_suite(n, &vc))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(emit_reports(cfg, &reports, args.failures_only))
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// lambda, mu, exp, log, gamma, phi or m
    #[arg(long)]
    name: String,
    /// Route for phi: log-lambda, eulerian or estar-pullback
    #[arg(long)]
    route: Option<String>,
    /// Evaluate phi_s instead of phi
    #[arg(long)]
    s: Option<String>,
    /// Inputs, one per tensor factor, e.g. --inputs dt "t dt"
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    inputs: Vec<String>,
}

fn cochain_json(c: &WhitneyCochain) -> Value {
    json!({ "v0": c.v0.to_string(), "v1": c.v1.to_string(), "e": c.e.to_string() })
}

fn form_json(w: &PolyForm) -> Value {
    json!({ "f0": w.f0.to_string(), "f1": w.f1.to_string() })
}

fn parse_all<T>(
    inputs: &[String],
    f: impl Fn(&str) -> Result<T, interval_forms::syntax::ParseError>,
) -> Result<Vec<T>> {
    inputs
        .iter()
        .map(|s| f(s).with_context(|| format!("cannot parse input {s:?}")))
        .collect()
}

pub fn eval(cfg: &Config, args: &EvalArgs) -> Result<Outcome> {
    let order = cfg.order as usize;
    let n = args.inputs.len();
    if n > order {
        bail!("{n} inputs exceed the truncation order {order}");
    }
    let catalog = MorphismCatalog::new(order);
    let (json, text) = match (args.name.as_str(), &args.s) {
        ("phi", Some(s)) => {
            let s = parse_scalar(s)?;
            let v = catalog
                .phi_s(&s)
                .eval(&parse_all(&args.inputs, parse_form)?);
            (cochain_json(&v), v.to_string())
        }
        ("phi", None) => {
            let route: PhiRoute = match &args.route {
                Some(r) => r.parse().map_err(|e: String| anyhow!(e))?,
                None => PhiRoute::EulerianIntegral,
            };
            let v = catalog
                .phi_route(route)
                .eval(&parse_all(&args.inputs, parse_form)?);
            (cochain_json(&v), v.to_string())
        }
        ("m", _) => {
            let v = catalog
                .cinfty()
                .eval(&parse_all(&args.inputs, parse_cochain)?);
            (cochain_json(&v), v.to_string())
        }
        (name, _) => match catalog.arrow(name) {
            Some(Arrow::FormsToCochains(f)) => {
                let v = f.eval(&parse_all(&args.inputs, parse_form)?);
                (cochain_json(&v), v.to_string())
            }
            Some(Arrow::CochainsToForms(f)) => {
                let v = f.eval(&parse_all(&args.inputs, parse_cochain)?);
                (form_json(&v), v.to_string())
            }
            Some(Arrow::CochainsToCochains(f)) => {
                let v = f.eval(&parse_all(&args.inputs, parse_cochain)?);
                (cochain_json(&v), v.to_string())
            }
            None => bail!("unknown arrow {name:?}"),
        },
    };
    emit(cfg, &json, || format!("{text}\n"));
    Ok(Outcome::Pass)
}

#[derive(Args, Debug)]
pub struct MorphismVerifyArgs {
    /// lambda, mu, exp, log, gamma, phi or phi_<s>
    #[arg(long)]
    name: String,
    #[arg(long, default_value_t = 5)]
    max_arity: usize,
    #[arg(long, default_value_t = 8)]
    form_degree: usize,
    #[arg(long)]
    failures_only: bool,
}

pub fn morphism_verify(cfg: &Config, args: &MorphismVerifyArgs) -> Result<Outcome> {
    let vc = verify_config(cfg, args.max_arity, args.form_degree, 0);
    let checks = arrow_relations(&args.name, &vc, args.max_arity)
        .ok_or_else(|| anyhow!("unknown arrow {:?}", args.name))?;
    let report = SuiteReport::new(format!("{} relations", args.name), checks);
    Ok(emit_reports(cfg, &[report], args.failures_only))
}

#[derive(Args, Debug)]
pub struct MagnusArgs {
    /// Generator names
    #[arg(long, value_delimiter = ',', default_value = "x,y")]
    generators: Vec<String>,
    /// Nilpotency degree (defaults to --lie-degree)
    #[arg(long)]
    degree: Option<usize>,
    /// Coefficient path, e.g. "x + t y"
    #[arg(long)]
    path: String,
    #[arg(long, default_value = "mp")]
    method: String,
    /// Upper limit of integration
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    s: String,
}

fn emit_lie(cfg: &Config, lie: &LieElement) {
    emit(
        cfg,
        &serde_json::to_value(lie).expect("serializable"),
        || format!("{lie}\n"),
    );
}

pub fn magnus(cfg: &Config, args: &MagnusArgs) -> Result<Outcome> {
    let degree = args.degree.unwrap_or(cfg.lie_degree as usize);
    let method: MagnusMethod = args.method.parse().map_err(|e: String| anyhow!(e))?;
    let path = parse_path(&args.path, &args.generators)?;
    let s = parse_scalar(&args.s)?;
    match lie_extension::magnus(&path, &s, degree, method) {
        Ok(lie) => {
            emit_lie(cfg, &lie);
            Ok(Outcome::Pass)
        }
        Err(e) => {
            eprintln!("consistency failure: {e}");
            Ok(Outcome::Fail)
        }
    }
}

#[derive(Args, Debug)]
pub struct BchArgs {
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x_weight: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    y_weight: String,
}

pub fn bch(cfg: &Config, args: &BchArgs) -> Result<Outcome> {
    let degree = args.degree.unwrap_or(cfg.lie_degree as usize);
    let lie = lie_extension::bch(
        &parse_scalar(&args.x_weight)?,
        &parse_scalar(&args.y_weight)?,
        degree,
    );
    emit_lie(cfg, &lie);
    Ok(Outcome::Pass)
}
