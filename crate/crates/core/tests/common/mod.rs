//! Shared helpers for the integration-test binaries: an independent
//! tanh-sinh quadrature oracle on (0, 1), seeded sample points, and the raw
//! kernel-coefficient recurrence used to rebuild series away from the
//! production code paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use bergman_core::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tanh-sinh quadrature of `f` over (0, 1). The integrand receives both `t`
/// and `1 - t` so endpoint singularities keep full precision on either side;
/// abscissas are refined by level halving until two levels agree to 5e-14
/// relative. Handles integrable endpoint singularities such as `t^e` with
/// `e > -1` (mass below `t ~ 1e-290` is unreachable in f64 and ignored).
pub fn tanh_sinh_01(f: impl Fn(f64, f64) -> f64) -> f64 {
    let u_max = 6.8f64;
    let point = |u: f64| -> f64 {
        let y = PI * u.sinh();
        let t = 1.0 / (1.0 + (-y).exp());
        let omt = 1.0 / (1.0 + y.exp());
        if t < 1e-290 || omt < 1e-290 {
            return 0.0;
        }
        let w = PI * u.cosh() * t * omt;
        w * f(t, omt)
    };
    let mut h = 0.5f64;
    let mut levels = (u_max / h) as i64;
    let mut total = point(0.0);
    for k in 1..=levels {
        total += point(k as f64 * h) + point(-(k as f64) * h);
    }
    let mut estimate = total * h;
    for _ in 0..10 {
        h *= 0.5;
        levels = (u_max / h) as i64;
        let mut odd = 0.0;
        let mut k = 1;
        while k <= levels {
            odd += point(k as f64 * h) + point(-(k as f64) * h);
            k += 2;
        }
        total += odd;
        let refined = total * h;
        if (refined - estimate).abs() <= 5e-14 * refined.abs().max(1e-300) {
            return refined;
        }
        estimate = refined;
    }
    estimate
}

/// Deterministic points in the closed disk of radius `max_radius`, spread
/// uniformly by area.
pub fn seeded_points(count: usize, max_radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = max_radius * rng.gen::<f64>().sqrt();
            let theta = 2.0 * PI * rng.gen::<f64>();
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// The kernel coefficients `d_n = (alpha+beta+2)_n / (beta+1)_n` rebuilt from
/// the bare recurrence, independent of the production series code.
pub fn kernel_coefficients(alpha: f64, beta: f64, len: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(len);
    d.push(1.0f64);
    for n in 0..len.saturating_sub(1) {
        let nf = n as f64;
        let next = d[n] * (alpha + beta + 2.0 + nf) / (beta + 1.0 + nf);
        d.push(next);
    }
    d
}

/// `sum_n d_n^2 x^n` from a test-local coefficient vector; panics if the
/// vector is too short for the requested accuracy.
pub fn phi_from_coefficients(d: &[f64], x: f64) -> f64 {
    let mut acc = 0.0f64;
    let mut pow = 1.0f64;
    for (n, &dn) in d.iter().enumerate() {
        let term = dn * dn * pow;
        acc += term;
        pow *= x;
        if term.abs() < 1e-17 * acc.abs() && n > 4 {
            return acc;
        }
    }
    assert!(
        x.abs() < 1e-12,
        "coefficient vector too short for phi at x = {x}"
    );
    acc
}

/// Scale-aware residual `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
pub fn residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / 1.0f64.max(lhs.abs()).max(rhs.abs())
}

/// Relative error with an absolute floor for values near zero.
pub fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1e-30)
}
