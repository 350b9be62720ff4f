//! Closed forms and explicit formulas against independent numerical oracles.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use factorlab::operators::{resolvent_series, GridSpec};
use factorlab::symcalc::{Exponents, TrigLaurentFun};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn quadrant_integrals_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let e = Exponents::new(0, 0, rng.random_range(0..=5), rng.random_range(0..=5), rng.random_range(0..=4), rng.random_range(0..=4));
        let coeff = Cx::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let f = TrigLaurentFun::monomial(e, coeff);
        let exact = f.integrate_quadrant().unwrap();
        let base = quad2(|p, s| f.evaluate_base(p, s), (0.0, FRAC_PI_2), (-FRAC_PI_2, FRAC_PI_2), 1e-13);
        let numeric = base * (4.0 * PI * PI);
        assert!((exact - numeric).norm() < 1e-10 * (1.0 + exact.norm()), "{e:?}: {exact} vs {numeric}");
    }
}

#[test]
fn oscillating_terms_integrate_to_zero() {
    let f = &TrigLaurentFun::<f64>::phase(1, -2) * &TrigLaurentFun::trig(2, 1, 0, 0);
    assert_eq!(f.integrate_quadrant().unwrap(), Cx::new(0.0, 0.0));
    let numeric = torus_mean(|t1, t2| f.evaluate(t1, t2, 0.4, 0.1));
    assert!(numeric.norm() < 1e-12);
}

#[test]
fn quadrant_integrals_reject_poles() {
    assert!(TrigLaurentFun::<f64>::trig(-1, 0, 0, 0).integrate_quadrant().is_err());
}

#[test]
fn eigenfamilies_diagonalize_the_vertical_operator() {
    let worst = eigen_residual(5, &GridSpec::square(32).nodes());
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn eigenfamilies_are_orthonormal() {
    let nodes: Vec<(f64, f64)> = GridSpec::square(32).nodes().into_iter().step_by(97).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for &(p, s) in &nodes {
        let mut pairs = vec![([0, 0], [0, 0])];
        for _ in 0..6 {
            let n = [rng.random_range(-5..=5), rng.random_range(-5..=5)];
            let m = [rng.random_range(-5..=5), rng.random_range(-5..=5)];
            pairs.push((n, n));
            pairs.push((n, m));
        }
        for (n, m) in pairs {
            for a in [true, false] {
                for b in [true, false] {
                    let want = if n == m && a == b { 1.0 } else { 0.0 };
                    worst = worst.max((inner(n, a, m, b, p, s) - want).norm());
                }
            }
        }
    }
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn resolvent_series_is_the_inverse() {
    let nodes = GridSpec::square(32).nodes();
    let mut worst: f64 = 0.0;
    for mu in [0.5, 1.0, 2.0] {
        for n1 in -5..=5 {
            for n2 in -5..=5 {
                let r = resolvent_series(mu, n1, n2).unwrap();
                for &(p, s) in nodes.iter().step_by(7) {
                    let want = direct_inverse(mu, vertical_symbol([n1, n2], p, s));
                    let got = r.at(p, s);
                    for k in 0..4 {
                        worst = worst.max((got[k] - want[k]).norm());
                    }
                }
            }
        }
    }
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn resolvent_rejects_zero() {
    assert!(resolvent_series(0.0, 1, 1).is_err());
}
