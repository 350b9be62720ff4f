//! Algebraic invariants on randomly generated inputs.

use factorlab::nc_torus::{DeformationMatrix, TorusPoly};
use factorlab::operators::{w_unitary, GridSpec, ModeSet};
use factorlab::symcalc::{Exponents, FunMatrix, MatrixDiffOp, TrigLaurentFun, Var};
use factorlab::theta_deform::DeformedElement;
use num_complex::Complex;
use proptest::prelude::*;

type F = TrigLaurentFun<f64>;

fn coeff() -> impl Strategy<Value = Complex<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex::new(a, b))
}

fn fun() -> impl Strategy<Value = F> {
    let term = (-2..=2i32, -2..=2i32, -2..=2i32, -2..=2i32, -1..=2i32, 0..=2i32, coeff())
        .prop_map(|(n1, n2, a, b, c, d, v)| (Exponents::new(n1, n2, a, b, c, d), v));
    prop::collection::vec(term, 1..4).prop_map(F::from_terms)
}

fn base_fun() -> impl Strategy<Value = F> {
    let term = (0..=2i32, 0..=2i32, 0..=2i32, 0..=2i32, coeff()).prop_map(|(a, b, c, d, v)| (Exponents::new(0, 0, a, b, c, d), v));
    prop::collection::vec(term, 1..4).prop_map(F::from_terms)
}

fn torus_poly(theta: &DeformationMatrix<f64>) -> impl Strategy<Value = TorusPoly<f64>> {
    let theta = theta.clone();
    prop::collection::vec(((-3..=3i64, -3..=3i64), coeff()), 1..5)
        .prop_map(move |t| TorusPoly::from_terms(&theta, t.into_iter().map(|((a, b), v)| (vec![a, b], v))).unwrap())
}

fn close(a: &F, b: &F) -> bool {
    (a - b).max_abs() < 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in fun(), b in fun(), c in fun()) {
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!(close(&(&a * &b), &(&b * &a)));
    }

    #[test]
    fn pythagorean_form_respects_evaluation(a in fun(), phi in 0.1..1.4f64, psi in -1.4..1.4f64) {
        let (clear, red) = a.pythagorean_normal_form();
        let m = F::monomial(clear, Complex::new(1.0, 0.0));
        let lhs = (&a * &m).evaluate(0.3, 0.7, phi, psi);
        let rhs = red.evaluate(0.3, 0.7, phi, psi);
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn leibniz_rule(a in fun(), b in fun()) {
        for v in Var::ALL {
            let lhs = (&a * &b).differentiate(v);
            let rhs = &(&a.differentiate(v) * &b) + &(&a * &b.differentiate(v));
            prop_assert!(close(&lhs, &rhs));
        }
    }

    #[test]
    fn composition_applies_in_sequence(f in base_fun(), g in base_fun(), s in fun()) {
        let p = MatrixDiffOp::derivative(Var::Phi, FunMatrix::scalar(1, f));
        let q = &MatrixDiffOp::derivative(Var::Theta1, FunMatrix::scalar(1, g.clone())) + &MatrixDiffOp::multiplication(FunMatrix::scalar(1, g));
        let pq = p.compose(&q).unwrap();
        let lhs = pq.apply(std::slice::from_ref(&s));
        let rhs = p.apply(&q.apply(std::slice::from_ref(&s)));
        prop_assert!(close(&lhs[0], &rhs[0]));
    }

    #[test]
    fn torus_star_is_an_antihomomorphism((a, b) in torus_pair()) {
        let lhs = (&a * &b).star();
        let rhs = &b.star() * &a.star();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-13);
        prop_assert!((&a.star().star() - &a).max_abs() < 1e-15);
    }

    #[test]
    fn deformed_product_is_associative(a in fun(), b in fun(), c in fun(), t in -1.0..1.0f64) {
        let theta = DeformationMatrix::two(t);
        let (a, b, c) = (DeformedElement::from_fun(&a), DeformedElement::from_fun(&b), DeformedElement::from_fun(&c));
        let lhs = a.product(&b, &theta).product(&c, &theta);
        let rhs = a.product(&b.product(&c, &theta), &theta);
        prop_assert!(close(&lhs.full(), &rhs.full()));
    }

    #[test]
    fn w_unitary_preserves_norms(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let w = w_unitary(&GridSpec::square(6), &ModeSet::radius(1));
        let x: Vec<Complex<f64>> = (0..w.dim()).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let y = w.apply(&x);
        let (a, b) = (w.product_norm_sq(&x), w.spinor_norm_sq(&y));
        prop_assert!((a - b).abs() < 1e-12 * a);
    }
}

fn torus_pair() -> impl Strategy<Value = (TorusPoly<f64>, TorusPoly<f64>)> {
    (-1.0..1.0f64).prop_flat_map(|t| {
        let theta = DeformationMatrix::two(t);
        (torus_poly(&theta), torus_poly(&theta))
    })
}
