use interval_forms::combinatorics::{
    dynkin, eulerian_adjoint, eulerian_adjoint_via_shuffles, eulerian_projector, shuffle_words,
    GradedLetter, TensorElement,
};
use interval_forms::forms::{dupont_h, dupont_pi, inclusion, PolyForm, WhitneyCochain};
use interval_forms::lie_extension::{LieElement, ScalarSeries};
use interval_forms::scalars_polys::{int, rat, PiecewisePoly, Poly, Rational};
use interval_forms::syntax::{parse_cochain, parse_form};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn piecewise() -> impl Strategy<Value = PiecewisePoly> {
    prop_oneof![
        poly(4).prop_map(PiecewisePoly::from),
        (poly(3), poly(3)).prop_map(|(a, b)| {
            PiecewisePoly::new(vec![int(0), rat(1, 2), int(1)], vec![a, b]).unwrap()
        }),
        (poly(2), poly(2), poly(2)).prop_map(|(a, b, c)| {
            PiecewisePoly::new(vec![int(0), rat(1, 4), rat(2, 3), int(1)], vec![a, b, c]).unwrap()
        }),
    ]
}

fn form() -> impl Strategy<Value = PolyForm> {
    (poly(4), poly(4)).prop_map(|(a, b)| PolyForm::new(a.into(), b.into()))
}

fn letter() -> impl Strategy<Value = GradedLetter> {
    (0u32..3, -1i32..=0).prop_map(|(id, degree)| GradedLetter::new(id, degree))
}

fn word(max: usize) -> impl Strategy<Value = Vec<GradedLetter>> {
    prop::collection::vec(letter(), 1..=max)
}

fn tensor(len: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(letter(), len), rational()), 1..=3).prop_map(
        |terms| {
            let mut t = TensorElement::zero();
            for (w, c) in terms {
                t.add_term(w, c);
            }
            t
        },
    )
}

fn series_without_constant() -> impl Strategy<Value = ScalarSeries> {
    prop::collection::vec((prop::collection::vec(0u8..2, 1..=3), rational()), 0..6).prop_map(
        |terms| {
            let mut s = ScalarSeries::zero(4);
            for (w, c) in terms {
                s.add_term(w, c);
            }
            s
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn poly_eval_is_a_ring_map(a in poly(5), b in poly(5), x in rational()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn fundamental_theorem(a in poly(6), x in rational(), y in rational()) {
        prop_assert_eq!(a.antiderivative().derivative(), a.clone());
        prop_assert_eq!(a.integral(&x, &y), -a.integral(&y, &x));
    }

    #[test]
    fn compose_affine_matches_evaluation(a in poly(5), s in rational(), c in rational(), x in rational()) {
        prop_assert_eq!(a.compose_affine(&s, &c).eval(&x), a.eval(&(&s * &x + &c)));
    }

    #[test]
    fn piecewise_integration_is_linear(f in piecewise(), g in piecewise(), c in rational()) {
        let lhs = (&f + &g.scale(&c)).integrate_from_zero();
        let rhs = &f.integrate_from_zero() + &g.integrate_from_zero().scale(&c);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.integrate_from_zero().eval(&int(1)), f.integral());
    }

    #[test]
    fn piecewise_integral_differentiates_back(f in piecewise()) {
        prop_assert_eq!(f.integrate_from_zero().derivative(), f);
    }

    #[test]
    fn piecewise_products_evaluate_pointwise(f in piecewise(), g in piecewise(), k in 0i64..=12) {
        let x = rat(k, 12);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
    }

    #[test]
    fn reflection_is_an_involution(f in piecewise()) {
        prop_assert_eq!(f.reflect().reflect(), f);
    }

    #[test]
    fn dupont_side_conditions(w in form()) {
        let h = dupont_h(&w);
        prop_assert!(dupont_h(&h).is_zero());
        prop_assert!(dupont_pi(&h).is_zero());
        let homotopy = h.d().add(&dupont_h(&w.d()));
        prop_assert_eq!(homotopy, inclusion(&dupont_pi(&w)).sub(&w));
    }

    #[test]
    fn eulerian_projector_is_idempotent(t in tensor(4)) {
        let e = eulerian_projector(&t);
        prop_assert_eq!(eulerian_projector(&e), e.clone());
        prop_assert_eq!(dynkin(&e), e);
        let es = eulerian_adjoint(&t);
        prop_assert_eq!(eulerian_adjoint(&es), es.clone());
        prop_assert_eq!(eulerian_adjoint_via_shuffles(&t), es);
    }

    #[test]
    fn adjoint_kills_shuffles(a in word(3), b in word(3)) {
        prop_assert!(eulerian_adjoint(&shuffle_words(&a, &b)).is_zero());
    }

    #[test]
    fn shuffle_is_graded_commutative(a in word(3), b in word(3)) {
        let ab = shuffle_words(&a, &b);
        let ba = shuffle_words(&b, &a);
        let odd = |w: &[GradedLetter]| w.iter().filter(|l| l.is_odd()).count();
        let sign = if odd(&a) * odd(&b) % 2 == 1 { int(-1) } else { int(1) };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn shuffle_is_associative(a in word(2), b in word(2), c in word(2)) {
        let ta = TensorElement::word(a.clone());
        let tb = TensorElement::word(b.clone());
        let tc = TensorElement::word(c.clone());
        prop_assert_eq!(ta.shuffle(&tb).shuffle(&tc), ta.shuffle(&tb.shuffle(&tc)));
    }

    #[test]
    fn adjointness(t in tensor(3), u in tensor(3)) {
        prop_assert_eq!(eulerian_projector(&t).pairing(&u), t.pairing(&eulerian_adjoint(&u)));
    }

    #[test]
    fn series_exp_log_inverse(x in series_without_constant()) {
        let e = x.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), x);
    }

    #[test]
    fn lie_extraction_round_trip(a in rational(), b in rational(), c in rational()) {
        let x = ScalarSeries::generator(0, 4);
        let y = ScalarSeries::generator(1, 4);
        let xy = x.commutator(&y);
        let lie = x.scale(&a).add(&xy.scale(&b)).add(&y.commutator(&xy).scale(&c));
        let names = vec!["x".to_string(), "y".to_string()];
        let element = LieElement::from_series(&names, &lie).unwrap();
        prop_assert_eq!(element.to_series(), lie);
    }

    #[test]
    fn form_syntax_round_trip(w in form()) {
        prop_assert_eq!(parse_form(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn piecewise_syntax_round_trip(f in piecewise(), g in piecewise()) {
        let w = PolyForm::new(f, g);
        prop_assert_eq!(parse_form(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn cochain_syntax_round_trip(v0 in rational(), v1 in rational(), e in rational()) {
        let c = WhitneyCochain::new(v0, v1, e);
        prop_assert_eq!(parse_cochain(&c.to_string()).unwrap(), c);
    }
}
