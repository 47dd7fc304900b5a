//! Algebra structures on the interval: the de Rham dg algebra of polynomial
//! forms, the cup-product dg algebra on Whitney cochains, and the
//! Bernoulli-coefficient `C∞` structure on Whitney cochains, all encoded as
//! truncated coderivations of suspended tensor coalgebras.

use crate::ainfty_framework::{
    Contraction, FrameworkError, GradedVector, Multilinear, TruncatedCoderivation,
    TruncatedMorphism,
};
use crate::forms::{dupont_h, dupont_pi, inclusion, PolyForm, WhitneyCochain};
use crate::scalars_polys::{
    bernoulli_numbers, binomial, factorial, one, rat, sign, zero, Rational,
};
use std::sync::Arc;

/// The cup product, determined by unitality and
/// `t ∪ t = t`, `t ∪ dt = 0`, `dt ∪ t = dt`.
pub fn cup(a: &WhitneyCochain, b: &WhitneyCochain) -> WhitneyCochain {
    WhitneyCochain::new(&a.v0 * &b.v0, &a.v1 * &b.v1, &a.v0 * &b.e + &a.e * &b.v1)
}

/// Unsuspended degree of a homogeneous element: 0 for functions, 1 for
/// one-forms.
fn form_degree<V: GradedVector>(x: &V) -> i32 {
    x.degree() + 1
}

/// Embeds a dg algebra `(d, ·)` as an `A∞` structure:
/// `Q_1(sa) = -s(da)`, `Q_2(sa ⊗ sb) = (-1)^{|a|} s(ab)`.
pub fn dg_algebra_structure<V: GradedVector>(
    name: &str,
    order: usize,
    d: impl Fn(&V) -> V + Send + Sync + 'static,
    product: impl Fn(&V, &V) -> V + Send + Sync + 'static,
) -> TruncatedCoderivation<V> {
    let d: Multilinear<V, V> = Arc::new(move |args: &[V]| d(&args[0]).scale(&-one()));
    let product: Multilinear<V, V> = Arc::new(move |args: &[V]| {
        let p = product(&args[0], &args[1]);
        p.scale(&sign(form_degree(&args[0]) as usize))
    });
    let mut coeffs = vec![d, product];
    coeffs.truncate(order);
    while coeffs.len() < order {
        coeffs.push(Arc::new(|_: &[V]| V::zero()));
    }
    TruncatedMorphism::new(name, coeffs)
}

/// `Ω*([0,1])` with `d` and the wedge product.
pub fn de_rham_structure(order: usize) -> TruncatedCoderivation<PolyForm> {
    dg_algebra_structure("de Rham", order, PolyForm::d, PolyForm::wedge)
}

/// `C*_∪([0,1])` with the simplicial differential and the cup product.
pub fn cup_structure(order: usize) -> TruncatedCoderivation<WhitneyCochain> {
    dg_algebra_structure("cup", order, WhitneyCochain::d, cup)
}

/// Dupont's contraction of polynomial forms onto Whitney forms, with side
/// conditions checked on a few monomials.
pub fn dupont_contraction() -> Contraction<PolyForm, WhitneyCochain> {
    let big: Vec<PolyForm> = (0..4)
        .flat_map(|k| [PolyForm::t_pow(k), PolyForm::t_pow_dt(k)])
        .collect();
    let small = [
        WhitneyCochain::unit(),
        WhitneyCochain::t(),
        WhitneyCochain::dt(),
    ];
    Contraction::new(
        Arc::new(inclusion),
        Arc::new(dupont_pi),
        Arc::new(dupont_h),
        &big,
        &small,
    )
    .expect("Dupont contraction satisfies its side conditions")
}

/// The basis `{1, t, dt}` of Whitney cochains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CochainBasis {
    Unit,
    T,
    Dt,
}

/// Which basis element a basis cochain is.
pub fn classify(x: &WhitneyCochain) -> CochainBasis {
    if *x == WhitneyCochain::unit() {
        CochainBasis::Unit
    } else if *x == WhitneyCochain::t() {
        CochainBasis::T
    } else {
        debug_assert_eq!(*x, WhitneyCochain::dt());
        CochainBasis::Dt
    }
}

/// Position of the unique `t` in a word of `t`s and `dt`s, if exactly one.
pub fn single_t_position(word: &[CochainBasis]) -> Option<usize> {
    let mut ts = word
        .iter()
        .enumerate()
        .filter(|(_, b)| **b == CochainBasis::T);
    let (i, _) = ts.next()?;
    ts.next().is_none().then_some(i)
}

/// The unital `C∞` structure on Whitney cochains with Bernoulli
/// coefficients, truncated at order `N`.
#[derive(Clone, Debug)]
pub struct CInftyStructure {
    order: usize,
    /// `B_k / k!` for `k <= N`.
    weights: Vec<Rational>,
}

impl CInftyStructure {
    pub fn new(order: usize) -> Self {
        let weights = bernoulli_numbers(order)
            .into_iter()
            .enumerate()
            .map(|(k, b)| b / factorial(k))
            .collect();
        CInftyStructure { order, weights }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `s dt` in `m_{n+1}((s dt)^{⊗i} ⊗ s t ⊗ (s dt)^{⊗(n-i)})`,
    /// namely `(-1)^{i+1} C(n, i) B_n / n!`.
    pub fn coefficient(&self, n: usize, i: usize) -> Rational {
        -sign(i) * binomial(n, i) * &self.weights[n]
    }

    /// `m_n` on basis elements `1`, `t`, `dt`.
    fn on_basis(&self, args: &[WhitneyCochain]) -> WhitneyCochain {
        let word: Vec<CochainBasis> = args.iter().map(classify).collect();
        match word.as_slice() {
            [CochainBasis::T] => WhitneyCochain::dt().scale(&-one()),
            [_] => WhitneyCochain::zero(),
            [CochainBasis::Unit, _] => args[1].clone(),
            [x, CochainBasis::Unit] => match x {
                CochainBasis::Dt => WhitneyCochain::dt().scale(&-one()),
                _ => args[0].clone(),
            },
            [CochainBasis::T, CochainBasis::T] => WhitneyCochain::t(),
            _ if word.contains(&CochainBasis::Unit) => WhitneyCochain::zero(),
            _ => match single_t_position(&word) {
                Some(i) => WhitneyCochain::edge(self.coefficient(word.len() - 1, i)),
                None => WhitneyCochain::zero(),
            },
        }
    }

    /// `m_n(x_1 ⊗ ... ⊗ x_n)` for arbitrary cochains.
    pub fn m(&self, args: &[WhitneyCochain]) -> Result<WhitneyCochain, FrameworkError> {
        self.coderivation().try_eval(args)
    }

    pub fn coderivation(&self) -> TruncatedCoderivation<WhitneyCochain> {
        let coeffs = (0..self.order)
            .map(|_| {
                let me = self.clone();
                Arc::new(move |args: &[WhitneyCochain]| me.on_basis(args))
                    as Multilinear<WhitneyCochain, WhitneyCochain>
            })
            .collect();
        TruncatedMorphism::new("C∞", coeffs)
    }

    /// Rows `n = 1..=n_max` of `m_{n+1}` coefficients indexed by the slot
    /// `i = 0..=n` of the function argument.
    pub fn table(&self, n_max: usize) -> Vec<Vec<Rational>> {
        (1..=n_max.min(self.order.saturating_sub(1)))
            .map(|n| (0..=n).map(|i| self.coefficient(n, i)).collect())
            .collect()
    }
}

/// `m_2` values on pairs of non-unit basis elements, for display.
pub fn m2_table() -> Vec<(&'static str, Rational)> {
    vec![
        ("t⊗t", one()),
        ("t⊗dt", rat(1, 2)),
        ("dt⊗t", rat(-1, 2)),
        ("dt⊗dt", zero()),
    ]
}
