//! Scalar special functions: gamma, beta, rising factorials and the
//! generalized hypergeometric series `pFq` that the kernel and transform
//! modules are built on.
//!
//! Everything here works in `f64`. Gamma uses the Lanczos approximation
//! (g = 7, 9 coefficients) with the reflection formula for the left
//! half-line; beta goes through log-gamma so that large parameters do not
//! overflow.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default relative tolerance for hypergeometric partial sums.
pub const DEFAULT_TOLERANCE: f64 = 1e-14;
/// Default term budget for hypergeometric partial sums.
pub const DEFAULT_MAX_TERMS: usize = 100_000;

const LANCZOS_G: f64 = 7.0;
// Published table values, kept verbatim even where they exceed f64 precision.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function on the real line. Poles at non-positive integers return
/// non-finite values rather than an error.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Natural logarithm of Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires a positive argument");
    if x < 0.5 {
        // Stay accurate near 0 where Gamma blows up like 1/x.
        return PI.ln() - ((PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// ln Beta(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({a}, {b})"
        )));
    }
    Ok(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b))
}

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_beta(a, b)?.exp())
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for k in 0..n {
        acc *= a + k as f64;
    }
    acc
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 1e-12 && (x - x.round()).abs() < 1e-12
}

/// A generalized hypergeometric series
/// `pFq(a1..ap; b1..bq; xi) = sum_n prod(a_i)_n / prod(b_j)_n * xi^n / n!`
/// with explicit tolerance and term budget.
///
/// Partial sums stop once three consecutive terms fall below
/// `tolerance * (1 + |sum|)`. On the unit circle the series is accepted only
/// when it converges absolutely (terminating, fewer numerator than
/// denominator parameters, or `sum(b) - sum(a) > 0` in the balanced case).
#[derive(Debug, Clone)]
pub struct HypergeometricSeries {
    numerator: Vec<f64>,
    denominator: Vec<f64>,
    argument: Complex64,
    tolerance: f64,
    max_terms: usize,
}

impl HypergeometricSeries {
    pub fn new(numerator: &[f64], denominator: &[f64], argument: Complex64) -> Result<Self> {
        for &b in denominator {
            if is_nonpositive_integer(b) {
                return Err(Error::Domain(format!(
                    "denominator parameter {b} is a non-positive integer"
                )));
            }
        }
        let r = argument.norm();
        if r > 1.0 + 1e-13 {
            return Err(Error::Domain(format!(
                "series argument must satisfy |xi| <= 1, got |xi| = {r}"
            )));
        }
        Ok(Self {
            numerator: numerator.to_vec(),
            denominator: denominator.to_vec(),
            argument,
            tolerance: DEFAULT_TOLERANCE,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    fn terminates(&self) -> bool {
        self.numerator.iter().copied().any(is_nonpositive_integer)
    }

    /// Sum the series.
    pub fn sum(&self) -> Result<Complex64> {
        let r = self.argument.norm();
        let p = self.numerator.len();
        let q = self.denominator.len();
        if r > 0.0 && !self.terminates() {
            if p > q + 1 {
                // Term ratio grows like n^(p-q-1); the series diverges.
                return Err(Error::NonConvergent {
                    max_terms: 0,
                    last_term: f64::INFINITY,
                });
            }
            if p == q + 1 && r >= 1.0 - 1e-13 {
                let num_sum: f64 = self.numerator.iter().sum();
                let den_sum: f64 = self.denominator.iter().sum();
                if den_sum - num_sum <= 0.0 {
                    return Err(Error::NonConvergent {
                        max_terms: 0,
                        last_term: f64::INFINITY,
                    });
                }
            }
        }

        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut quiet = 0usize;
        for n in 0..self.max_terms {
            let nf = n as f64;
            let mut ratio = self.argument / (nf + 1.0);
            for &a in &self.numerator {
                ratio *= a + nf;
            }
            for &b in &self.denominator {
                ratio /= b + nf;
            }
            term *= ratio;
            sum += term;
            if term.norm() < self.tolerance * (1.0 + sum.norm()) {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::NonConvergent {
            max_terms: self.max_terms,
            last_term: term.norm(),
        })
    }
}

/// Sum `pFq` at a complex argument with the default tolerance and budget.
pub fn pfq(numerator: &[f64], denominator: &[f64], argument: Complex64) -> Result<Complex64> {
    HypergeometricSeries::new(numerator, denominator, argument)?.sum()
}

/// Sum `pFq` at a real argument, returning the (real) value.
pub fn pfq_real(numerator: &[f64], denominator: &[f64], x: f64) -> Result<f64> {
    Ok(pfq(numerator, denominator, Complex64::new(x, 0.0))?.re)
}

/// Gauss hypergeometric function 2F1(a, b; c; xi).
pub fn hyp2f1(a: f64, b: f64, c: f64, xi: Complex64) -> Result<Complex64> {
    pfq(&[a, b], &[c], xi)
}
