//! Algebraic identities of the noncommutative two-torus on random twisted polynomials.

use num_complex::Complex;
use rand::{Rng, SeedableRng};

use super::{Check, VerificationReport};
use crate::nc_torus::{DeformationMatrix, TorusPoly};

type P = TorusPoly<f64>;

const EXACT: f64 = 1e-13;

fn random_poly(theta: &DeformationMatrix<f64>, rng: &mut impl Rng) -> P {
    let terms: Vec<(Vec<i64>, Complex<f64>)> = (0..rng.random_range(1..=4))
        .map(|_| {
            let k = vec![rng.random_range(-2..=2), rng.random_range(-2..=2)];
            (k, Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        })
        .collect();
    P::from_terms(theta, terms).expect("rank two exponents")
}

fn mul(a: &P, b: &P) -> P {
    a.product(b).expect("same deformation")
}

/// Associativity, the commutation rule of the generators, the involution, and the trace
/// on `cases` seeded random polynomials.
pub fn verify_torus(theta12: f64, cases: usize, seed: u64) -> VerificationReport {
    let theta = DeformationMatrix::two(theta12);
    let mut report = VerificationReport::new("torus").param("theta", theta12).param("cases", cases).param("seed", seed);

    let (u1, u2) = (P::generator(&theta, 0), P::generator(&theta, 1));
    let twist = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * theta.get(1, 0));
    let relation = &mul(&u2, &u1) - &mul(&u1, &u2).scale(twist);
    report.push(Check::new("generator relation", relation.max_abs(), EXACT));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut assoc, mut star, mut trace, mut positive) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..cases {
        let (a, b, c) = (random_poly(&theta, &mut rng), random_poly(&theta, &mut rng), random_poly(&theta, &mut rng));
        assoc = assoc.max((&mul(&mul(&a, &b), &c) - &mul(&a, &mul(&b, &c))).max_abs());
        star = star.max((&mul(&a, &b).star() - &mul(&b.star(), &a.star())).max_abs());
        let t = mul(&a.star(), &a).trace();
        let mass: f64 = a.terms().map(|(_, v)| v.norm_sqr()).sum();
        trace = trace.max((t - Complex::new(mass, 0.0)).norm());
        positive = positive.min(t.re);
    }
    report.push(Check::new("associativity", assoc, EXACT));
    report.push(Check::new("involution reverses products", star, EXACT));
    report.push(Check::new("trace of x*x is the coefficient mass", trace, EXACT));
    report.push(Check::condition("trace is faithful", positive > 0.0).with("min_trace", positive));

    let mut ortho: f64 = 0.0;
    for k in (-2..=2).flat_map(|a| (-2..=2).map(move |b| [a, b])) {
        for l in (-2..=2).flat_map(|a| (-2..=2).map(move |b| [a, b])) {
            let uk = P::monomial(&theta, &k, Complex::new(1.0, 0.0));
            let ul = P::monomial(&theta, &l, Complex::new(1.0, 0.0));
            let want = if k == l { 1.0 } else { 0.0 };
            ortho = ortho.max((mul(&uk.star(), &ul).trace() - want).norm());
        }
    }
    report.push(Check::new("monomials are orthonormal", ortho, EXACT));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_identities() {
        for t in [0.0, 0.25, 1.0 / 3.0, 0.618] {
            let r = verify_torus(t, 200, 11);
            assert!(r.passed(), "{r:?}");
        }
    }
}
