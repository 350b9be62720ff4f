//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use factorlab::operators::{build_d_v, eigen_family};
use factorlab::symcalc::{FunMatrix, Var};
use num_complex::Complex;
use quadrature::double_exponential;

pub type Cx = Complex<f64>;

pub fn quad(f: impl Fn(f64) -> Cx, a: f64, b: f64, tol: f64) -> Cx {
    let re = double_exponential::integrate(|x| f(x).re, a, b, tol).integral;
    let im = double_exponential::integrate(|x| f(x).im, a, b, tol).integral;
    Cx::new(re, im)
}

pub fn quad2(f: impl Fn(f64, f64) -> Cx, (a, b): (f64, f64), (c, d): (f64, f64), tol: f64) -> Cx {
    quad(|x| quad(|y| f(x, y), c, d, tol), a, b, tol)
}

/// Normalized Haar average over the two-torus.
pub fn torus_mean(f: impl Fn(f64, f64) -> Cx) -> Cx {
    quad2(f, (0.0, 2.0 * PI), (0.0, 2.0 * PI), 1e-12) / (4.0 * PI * PI)
}

/// `Σ_j A_j(φ, ψ)·(i n_j)` read off the coefficients of the vertical operator.
pub fn vertical_symbol(n: [i32; 2], phi: f64, psi: f64) -> [Cx; 4] {
    static COEFFS: OnceLock<[FunMatrix<f64>; 2]> = OnceLock::new();
    let c = COEFFS.get_or_init(|| {
        let d = build_d_v::<f64>();
        [d.coefficient_of(Var::Theta1), d.coefficient_of(Var::Theta2)]
    });
    let mut out = [Cx::new(0.0, 0.0); 4];
    for (m, k) in c.iter().zip(n) {
        let a = m.evaluate(0.0, 0.0, phi, psi);
        for (o, v) in out.iter_mut().zip(a) {
            *o += v * Cx::new(0.0, k as f64);
        }
    }
    out
}

pub fn matvec(m: &[Cx; 4], v: &[Cx; 2]) -> [Cx; 2] {
    [m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]]
}

/// `⟨Ψ^a_n, Ψ^b_m⟩_X` at a base point: torus average of `Ψ*Ψ` times `sinφ cosφ cos²ψ`.
pub fn inner(n: [i32; 2], a: bool, m: [i32; 2], b: bool, p: f64, s: f64) -> Cx {
    let (fa, fb) = (eigen_family(n[0], n[1]), eigen_family(m[0], m[1]));
    let w = p.sin() * p.cos() * s.cos().powi(2);
    torus_mean(|t1, t2| {
        let (x, y) = (fa.psi(a, t1, t2, p, s), fb.psi(b, t1, t2, p, s));
        x[0].conj() * y[0] + x[1].conj() * y[1]
    }) * w
}

/// `(iμ + S)⁻¹` for a 2×2 symbol by the adjugate formula.
pub fn direct_inverse(mu: f64, s: [Cx; 4]) -> [Cx; 4] {
    let imu = Cx::new(0.0, mu);
    let (a, b, c, d) = (s[0] + imu, s[1], s[2], s[3] + imu);
    let det = a * d - b * c;
    [d / det, -b / det, -c / det, a / det]
}

/// Largest deviation of `D_V Ψ± = ∓λ Ψ±` over modes `|n|∞ ≤ r` and the given nodes, together
/// with the deviation of the library's mode symbol from the coefficient-derived one.
pub fn eigen_residual(r: i32, nodes: &[(f64, f64)]) -> f64 {
    let mut worst: f64 = 0.0;
    for n1 in -r..=r {
        for n2 in -r..=r {
            let fam = eigen_family(n1, n2);
            for &(p, s) in nodes {
                let m = vertical_symbol([n1, n2], p, s);
                let lam = fam.lambda(p, s);
                for (plus, sign) in [(true, -1.0), (false, 1.0)] {
                    let v = fam.psi(plus, 0.3, -1.1, p, s);
                    let dv = matvec(&m, &v);
                    let scale = (1.0 + lam) * v[0].norm();
                    let sym = matvec(&fam.symbol(p, s), &v);
                    for c in 0..2 {
                        worst = worst.max((dv[c] - v[c] * (sign * lam)).norm() / scale);
                        worst = worst.max((sym[c] - dv[c]).norm() / scale);
                    }
                }
            }
        }
    }
    worst
}
