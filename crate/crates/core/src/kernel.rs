//! The diagonal reproducing kernel of the weighted space on the unit disk,
//! its bounded hypergeometric factor `G`, and the parameter reduction
//! `beta = beta0 + s` that removes the kernel's pole at the origin.
//!
//! For reduced parameters (`s = 0`) the kernel is
//! `K(xi) = G(xi) / (1 - xi)^(alpha+2)` where `G(xi) = sum_n c_n xi^n`,
//! `c_0 = 1` and `c_n = beta/(n+beta) * (-alpha-1)_n / n!`. `G` is bounded on
//! the closed disk (`1 <= G <= G(1)` for beta in (-1, 0]), so the factored
//! form stays accurate all the way to the boundary where the raw kernel
//! series converges too slowly to be usable.

use crate::error::{Error, Result};
use crate::specialfn::{self, beta as beta_fn, pochhammer, DEFAULT_MAX_TERMS, DEFAULT_TOLERANCE};
use num_complex::Complex64;

/// Weight parameters `(alpha, beta)` together with the derived decomposition
/// `beta = beta0 + s`, `beta0` in `(-1, 0]`, `s` a non-negative integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
    beta0: f64,
    shift: u32,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::Domain(format!("alpha must be > -1, got {alpha}")));
        }
        if !beta.is_finite() || beta <= -1.0 {
            return Err(Error::Domain(format!("beta must be > -1, got {beta}")));
        }
        let (beta0, shift) = reduce(beta)?;
        Ok(Self { alpha, beta, beta0, shift })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The fractional part of beta after reduction, in `(-1, 0]`.
    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    /// The integer shift `s` with `beta = beta0 + s`.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// The same weight with beta replaced by beta0 (so `shift == 0`).
    pub fn reduced(&self) -> Self {
        Self { alpha: self.alpha, beta: self.beta0, beta0: self.beta0, shift: 0 }
    }

    pub fn is_reduced(&self) -> bool {
        self.shift == 0
    }
}

/// Decompose `beta > -1` as `beta0 + s` with `beta0` in `(-1, 0]` and
/// `s = min{k in N : beta <= k}`.
pub fn reduce(beta: f64) -> Result<(f64, u32)> {
    if !beta.is_finite() || beta <= -1.0 {
        return Err(Error::Domain(format!("beta must be > -1, got {beta}")));
    }
    let s = if beta <= 0.0 { 0 } else { beta.ceil() as u32 };
    Ok((beta - s as f64, s))
}

fn check_unit_disk_closure(xi: Complex64) -> Result<f64> {
    let r = xi.norm();
    if !(r <= 1.0 + 1e-13) {
        return Err(Error::Domain(format!("|xi| must be <= 1, got {r}")));
    }
    Ok(r)
}

/// Sum the G series by its term recurrence
/// `c_{n+1} = c_n * (n+beta)/(n+1+beta) * (n-alpha-1)/(n+1)`.
fn g_series_sum(alpha: f64, beta: f64, xi: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0usize;
    for n in 0..DEFAULT_MAX_TERMS {
        let nf = n as f64;
        term *= xi * ((nf + beta) / (nf + 1.0 + beta)) * ((nf - alpha - 1.0) / (nf + 1.0));
        sum += term;
        if term.norm() < DEFAULT_TOLERANCE * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergent { max_terms: DEFAULT_MAX_TERMS, last_term: term.norm() })
}

/// Boundary representation of `G` for real `t` near 1:
/// `G(t) = A t^(-beta) - beta/(alpha+2) (1-t)^(alpha+2) 2F1(1, alpha+beta+2; alpha+3; 1-t)`
/// with `A = (alpha+1) B(alpha+1, beta+1) = G(1)`. Derived from the Euler
/// integral representation of the coefficients; numerically stable as long as
/// `(1-t)(alpha+beta+2)` stays small compared to `alpha+3`.
fn g_boundary_form(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    let u = 1.0 - t;
    let a = (alpha + 1.0) * beta_fn(alpha + 1.0, beta + 1.0)?;
    let f = specialfn::pfq_real(&[1.0, alpha + beta + 2.0], &[alpha + 3.0], u)?;
    Ok(a * t.powf(-beta) - beta / (alpha + 2.0) * u.powf(alpha + 2.0) * f)
}

/// Evaluate `G_{alpha,beta}(xi)` on the closed unit disk.
///
/// On the circle itself, `xi = 1` uses the endpoint closed form
/// `(alpha+1) B(alpha+1, beta+1)`; other unimodular arguments require
/// `alpha > 0` so the coefficient decay `n^(-alpha-2)` makes the plain series
/// summable at the default tolerance.
pub fn g_eval(params: &Params, xi: Complex64) -> Result<Complex64> {
    let alpha = params.alpha;
    let beta = params.beta;
    let r = check_unit_disk_closure(xi)?;
    if beta == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if (xi - 1.0).norm() < 1e-13 {
        let g1 = (alpha + 1.0) * beta_fn(alpha + 1.0, beta + 1.0)?;
        return Ok(Complex64::new(g1, 0.0));
    }
    if r >= 1.0 - 1e-13 {
        if alpha <= 0.0 {
            return Err(Error::Domain(format!(
                "G on the unit circle away from 1 requires alpha > 0, got alpha = {alpha}"
            )));
        }
        return g_series_sum(alpha, beta, xi);
    }
    if xi.im == 0.0 && xi.re > 0.9 {
        let t = xi.re;
        // The two-term boundary split cancels catastrophically once the 2F1
        // terms grow before decaying; fall back on the series in that regime.
        if (1.0 - t) * (alpha + beta + 2.0) < (alpha + 3.0) / 3.0 {
            return Ok(Complex64::new(g_boundary_form(alpha, beta, t)?, 0.0));
        }
    }
    g_series_sum(alpha, beta, xi)
}

/// Real-argument convenience wrapper around [`g_eval`].
pub fn g_eval_real(params: &Params, t: f64) -> Result<f64> {
    Ok(g_eval(params, Complex64::new(t, 0.0))?.re)
}

/// `G'(t)` for `t` in `[0, 1)` via the first-order identity
/// `t G'(t) = beta ((1-t)^(alpha+1) - G(t))`; the removable singularity at
/// `t = 0` is replaced by the series coefficient `-beta(alpha+1)/(beta+1)`.
pub fn g_derivative(params: &Params, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("g_derivative requires t in [0, 1), got {t}")));
    }
    let alpha = params.alpha;
    let beta = params.beta;
    if t == 0.0 {
        return Ok(-beta * (alpha + 1.0) / (beta + 1.0));
    }
    let g = g_eval_real(params, t)?;
    Ok(beta * ((1.0 - t).powf(alpha + 1.0) - g) / t)
}

/// The G power series with its coefficient recurrence exposed, used as the
/// independent second route when testing [`g_eval`] and [`g_derivative`].
#[derive(Debug, Clone)]
pub struct GSeries {
    alpha: f64,
    beta: f64,
}

impl GSeries {
    pub fn new(params: &Params) -> Self {
        Self { alpha: params.alpha, beta: params.beta }
    }

    /// Coefficients c_0..=c_n of the series.
    pub fn coefficients(&self, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut c = 1.0;
        out.push(c);
        for k in 0..n {
            let kf = k as f64;
            c *= (kf + self.beta) / (kf + 1.0 + self.beta) * (kf - self.alpha - 1.0)
                / (kf + 1.0);
            out.push(c);
        }
        out
    }

    /// Plain partial sum of the series; `|xi| < 1`.
    pub fn value(&self, xi: Complex64) -> Result<Complex64> {
        if xi.norm() >= 1.0 {
            return Err(Error::Domain("GSeries::value requires |xi| < 1".into()));
        }
        if self.beta == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        g_series_sum(self.alpha, self.beta, xi)
    }

    /// Termwise-differentiated series `sum n c_n xi^(n-1)`; `|xi| < 1`.
    pub fn derivative(&self, xi: Complex64) -> Result<Complex64> {
        if xi.norm() >= 1.0 {
            return Err(Error::Domain("GSeries::derivative requires |xi| < 1".into()));
        }
        let mut c = Complex64::new(1.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut quiet = 0usize;
        for n in 0..DEFAULT_MAX_TERMS {
            let nf = n as f64;
            c *= ((nf + self.beta) / (nf + 1.0 + self.beta))
                * ((nf - self.alpha - 1.0) / (nf + 1.0));
            // term for index n+1: (n+1) c_{n+1} xi^n
            let term = c * (nf + 1.0) * pow;
            sum += term;
            pow *= xi;
            if term.norm() < DEFAULT_TOLERANCE * (1.0 + sum.norm()) {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::NonConvergent { max_terms: DEFAULT_MAX_TERMS, last_term: 0.0 })
    }
}

/// Evaluate the kernel at a point of the open unit disk:
/// `K(xi) = (beta0+1)_s / (alpha+beta0+2)_s * xi^(-s) * G_{alpha,beta0}(xi) / (1-xi)^(alpha+2)`.
pub fn kernel_eval(params: &Params, xi: Complex64) -> Result<Complex64> {
    let r = xi.norm();
    if !(r < 1.0) {
        return Err(Error::Domain(format!("kernel requires |xi| < 1, got {r}")));
    }
    let s = params.shift;
    if s >= 1 && xi == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularArgument(format!(
            "kernel has a pole of order {s} at xi = 0 for beta = {}",
            params.beta
        )));
    }
    let reduced = params.reduced();
    let g = g_eval(&reduced, xi)?;
    let alpha = params.alpha;
    let mut value = g * (Complex64::new(1.0, 0.0) - xi).powf(-(alpha + 2.0));
    if s >= 1 {
        let prefactor = pochhammer(params.beta0 + 1.0, s)
            / pochhammer(alpha + params.beta0 + 2.0, s);
        value *= prefactor * xi.powi(-(s as i32));
    }
    Ok(value)
}

/// Two-point kernel `K(z, w) = kernel_eval(z * conj(w))`.
pub fn kernel_two_point(params: &Params, z: Complex64, w: Complex64) -> Result<Complex64> {
    kernel_eval(params, z * w.conj())
}

/// `(K, K', K'')` at real `t` in `[0, 1)` by termwise differentiation of
/// `K(xi) = sum_n (alpha+beta+2)_n/(beta+1)_n xi^n`. Requires reduced
/// parameters; callers holding beta > 0 must reduce first.
pub fn kernel_derivatives(params: &Params, t: f64) -> Result<(f64, f64, f64)> {
    if !params.is_reduced() {
        return Err(Error::Domain(
            "kernel_derivatives requires reduced parameters (shift = 0)".into(),
        ));
    }
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("kernel_derivatives requires t in [0, 1), got {t}")));
    }
    let alpha = params.alpha;
    let beta = params.beta;
    let max_terms = 2_000_000usize;
    let mut d = 1.0f64; // d_n
    let mut pow = 1.0f64; // t^n
    let mut prev_pow = 0.0f64; // t^(n-1), valid from n = 1
    let (mut k0, mut k1, mut k2) = (1.0f64, 0.0f64, 0.0f64);
    for n in 0..max_terms {
        let nf = n as f64;
        let ratio = (alpha + beta + 2.0 + nf) / (beta + 1.0 + nf);
        d *= ratio;
        // terms of index n+1: t^(m-2) = t^(n-1) for the second derivative
        let m = nf + 1.0;
        let t0 = d * pow * t;
        let t1 = d * m * pow;
        let t2 = if n >= 1 { d * m * nf * prev_pow } else { 0.0 };
        k0 += t0;
        k1 += t1;
        k2 += t2;
        prev_pow = pow;
        pow *= t;
        if t == 0.0 && n >= 2 {
            break;
        }
        // Geometric tail bound: the term ratio of the second-derivative sum is
        // ratio * t * ((m+1)/(m-1))^2 and decreases toward t < 1.  Never break
        // before n = 1: the second-derivative sum gets its leading term there.
        let q = ratio * t * if n >= 1 { ((m + 1.0) / (m - 1.0)).powi(2) } else { 4.0 };
        if n >= 1 && q < 1.0 {
            let tail = q / (1.0 - q);
            let eps = 1e-16;
            if t0.abs() * tail < eps * (1.0 + k0.abs())
                && t1.abs() * tail < eps * (1.0 + k1.abs())
                && t2.abs() * tail < eps * (1.0 + k2.abs())
            {
                break;
            }
        }
        if n + 1 == max_terms {
            return Err(Error::NonConvergent { max_terms, last_term: t0.abs() });
        }
    }
    Ok((k0, k1, k2))
}

/// Precomputed coefficients `d_n = (alpha+beta+2)_n / (beta+1)_n` of the
/// reduced kernel series, with the weighted sums used by the transform and
/// the metric. Evaluations stop on a geometric tail bound, so the table cost
/// is paid once while each call only touches the terms it needs.
#[derive(Debug, Clone)]
pub struct KernelSeries {
    params: Params,
    coeffs: Vec<f64>,
}

/// Largest squared-modulus argument the precomputed table supports for the
/// plain kernel sums (`t = |z|^2`).
pub const SERIES_T_MAX: f64 = 0.985;
/// Largest argument supported by the squared-coefficient sums
/// (`x = |z|^2 |w|^2`).
pub const SERIES_SQ_MAX: f64 = 0.9985;

impl KernelSeries {
    pub fn new(params: &Params) -> Result<Self> {
        if !params.is_reduced() {
            return Err(Error::Domain(
                "KernelSeries requires reduced parameters (shift = 0)".into(),
            ));
        }
        let alpha = params.alpha;
        let beta = params.beta;
        let cap = 400_000usize;
        let mut coeffs = Vec::with_capacity(4096);
        let mut d = 1.0f64;
        coeffs.push(d);
        let mut n = 0usize;
        loop {
            let nf = n as f64;
            d *= (alpha + beta + 2.0 + nf) / (beta + 1.0 + nf);
            coeffs.push(d);
            n += 1;
            // Keep both the plain sums at t <= SERIES_T_MAX and the squared
            // sums at x <= SERIES_SQ_MAX below the round-off floor, with an
            // n^4 margin for the derivative-weighted variants.
            let m = (n as f64).powi(4).max(1.0);
            let plain = d * SERIES_T_MAX.powi(n as i32) * m;
            let squared = d * d * SERIES_SQ_MAX.powi(n as i32) * m;
            if (plain < 1e-20 && squared < 1e-20) || n >= cap {
                break;
            }
        }
        if n >= cap {
            return Err(Error::Build(format!(
                "kernel coefficient table did not close under {cap} terms"
            )));
        }
        Ok(Self { params: *params, coeffs })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// The table `d_0, d_1, ...` itself.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    fn check_t(&self, t: f64, what: &str) -> Result<()> {
        if !(0.0..=SERIES_T_MAX).contains(&t) {
            return Err(Error::Domain(format!(
                "{what} supports arguments in [0, {SERIES_T_MAX}], got {t}"
            )));
        }
        Ok(())
    }

    /// `K(t)` for real `t` in `[0, SERIES_T_MAX]`.
    pub fn value(&self, t: f64) -> Result<f64> {
        self.check_t(t, "KernelSeries::value")?;
        let mut sum = 0.0;
        let mut pow = 1.0;
        for (n, d) in self.coeffs.iter().enumerate() {
            let term = d * pow;
            sum += term;
            if term < 1e-17 * sum && n > 0 {
                break;
            }
            pow *= t;
        }
        Ok(sum)
    }

    /// `(K, K', K'')` at real `t`; same sums as [`kernel_derivatives`] but
    /// from the shared table.
    pub fn derivatives(&self, t: f64) -> Result<(f64, f64, f64)> {
        self.check_t(t, "KernelSeries::derivatives")?;
        let (mut k0, mut k1, mut k2) = (0.0f64, 0.0f64, 0.0f64);
        let mut pow = 1.0; // t^(n-2) deferred: track t^n with explicit divisions avoided
        // Sum k0 = sum d_n t^n, k1 = sum n d_n t^(n-1), k2 = sum n(n-1) d_n t^(n-2).
        let mut pow_nm2 = 0.0; // t^(n-2), valid from n = 2
        let mut pow_nm1 = 0.0; // t^(n-1), valid from n = 1
        for (n, d) in self.coeffs.iter().enumerate() {
            let nf = n as f64;
            let term0 = d * pow;
            k0 += term0;
            if n >= 1 {
                k1 += d * nf * pow_nm1;
            }
            if n >= 2 {
                k2 += d * nf * (nf - 1.0) * pow_nm2;
            }
            if n >= 2 && d * nf * nf * pow_nm2 < 1e-17 * (1.0 + k2.abs()) && term0 < 1e-17 * k0
            {
                break;
            }
            pow_nm2 = pow_nm1;
            pow_nm1 = pow;
            pow *= t;
        }
        Ok((k0, k1, k2))
    }

    /// `K(xi)` for complex `xi` with `|xi| <= SERIES_T_MAX`.
    pub fn value_complex(&self, xi: Complex64) -> Result<Complex64> {
        self.check_t(xi.norm(), "KernelSeries::value_complex")?;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut quiet = 0usize;
        for d in &self.coeffs {
            let term = pow * *d;
            sum += term;
            pow *= xi;
            if term.norm() < 1e-17 * (1.0 + sum.norm()) {
                quiet += 1;
                if quiet >= 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok(sum)
    }

    /// Angular average of `|K(z conj(w))|^2` over `arg z` with `|z|^2 = t`:
    /// `Phi(x) = sum d_n^2 x^n` evaluated at `x = t |w|^2`.
    pub fn abs_sq_angular_avg(&self, x: f64) -> Result<f64> {
        if !(0.0..=SERIES_SQ_MAX).contains(&x) {
            return Err(Error::Domain(format!(
                "abs_sq_angular_avg supports x in [0, {SERIES_SQ_MAX}], got {x}"
            )));
        }
        let mut sum = 0.0;
        let mut pow = 1.0;
        for (n, d) in self.coeffs.iter().enumerate() {
            let term = d * d * pow;
            sum += term;
            if n > 0 && term < 1e-17 * sum {
                break;
            }
            pow *= x;
        }
        Ok(sum)
    }

    /// The three squared-coefficient sums used by the projection identity:
    /// `Phi(x) = sum d_n^2 x^n`, `Psi(x) = sum n d_n^2 x^(n-1)`,
    /// `Phi1(x) = sum n^2 d_n^2 x^(n-1)`.
    pub fn sq_weighted(&self, x: f64) -> Result<(f64, f64, f64)> {
        if !(0.0..=SERIES_SQ_MAX).contains(&x) {
            return Err(Error::Domain(format!(
                "sq_weighted supports x in [0, {SERIES_SQ_MAX}], got {x}"
            )));
        }
        let (mut phi, mut psi, mut phi1) = (0.0f64, 0.0f64, 0.0f64);
        let mut pow = 1.0; // x^n
        let mut pow_nm1 = 0.0; // x^(n-1)
        for (n, d) in self.coeffs.iter().enumerate() {
            let nf = n as f64;
            let dd = d * d;
            phi += dd * pow;
            psi += dd * nf * pow_nm1;
            phi1 += dd * nf * nf * pow_nm1;
            if n > 1 && dd * nf * nf * pow_nm1.max(pow) < 1e-17 * (1.0 + phi1) {
                break;
            }
            pow_nm1 = pow;
            pow *= x;
        }
        Ok((phi, psi, phi1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn p(alpha: f64, beta: f64) -> Params {
        Params::new(alpha, beta).unwrap()
    }

    #[test]
    fn reduce_cases() {
        assert_eq!(reduce(-0.5).unwrap(), (-0.5, 0));
        assert_eq!(reduce(0.0).unwrap(), (0.0, 0));
        let (b0, s) = reduce(2.3).unwrap();
        assert_eq!(s, 3);
        assert_relative_eq!(b0, -0.7, max_relative = 1e-12);
        let (b0, s) = reduce(2.0).unwrap();
        assert_eq!(s, 2);
        assert_abs_diff_eq!(b0, 0.0, epsilon = 1e-15);
        assert!(reduce(-1.0).is_err());
    }

    #[test]
    fn params_validation_and_reduction() {
        assert!(Params::new(-1.0, 0.0).is_err());
        assert!(Params::new(0.0, -1.5).is_err());
        let params = p(1.3, 2.3);
        assert_eq!(params.shift(), 3);
        assert!(params.reduced().is_reduced());
        assert_relative_eq!(params.reduced().beta(), -0.7, max_relative = 1e-12);
    }

    #[test]
    fn g_at_zero_is_one() {
        for &(a, b) in &[(0.5, -0.5), (3.7, -0.9), (2.0, -0.1)] {
            let v = g_eval_real(&p(a, b), 0.0).unwrap();
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn g_beta_zero_is_constant_one() {
        for &t in &[0.0, 0.3, 0.77, 0.9999] {
            let v = g_eval_real(&p(1.7, 0.0), t).unwrap();
            assert_abs_diff_eq!(v, 1.0, epsilon = 0.0);
        }
    }

    #[test]
    fn g_alpha_zero_is_linear() {
        // Only the n = 1 coefficient survives: G(t) = 1 - beta t / (beta + 1).
        for &b in &[-0.9f64, -0.5, -0.1, 0.7] {
            for &t in &[0.1f64, 0.5, 0.89] {
                let v = g_eval_real(&p(0.0, b), t).unwrap();
                assert_relative_eq!(v, 1.0 - b * t / (b + 1.0), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn g_endpoint_closed_form() {
        for &(a, b) in &[(0.5f64, -0.5f64), (3.7, -0.9), (1.0, -0.1), (2.2, 0.8)] {
            let v = g_eval_real(&p(a, b), 1.0).unwrap();
            let expect = (a + 1.0) * beta_fn(a + 1.0, b + 1.0).unwrap();
            assert_relative_eq!(v, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn g_boundary_form_matches_series() {
        // Both evaluation branches must agree where they overlap.
        for &(a, b) in &[(0.5f64, -0.5f64), (3.7, -0.9), (1.3, -0.1)] {
            let params = p(a, b);
            for &t in &[0.901f64, 0.95, 0.99] {
                let series = g_series_sum(a, b, Complex64::new(t, 0.0)).unwrap().re;
                let boundary = g_boundary_form(a, b, t).unwrap();
                assert_relative_eq!(series, boundary, max_relative = 1e-11);
                let dispatched = g_eval_real(&params, t).unwrap();
                assert_relative_eq!(dispatched, boundary, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn g_derivative_two_routes() {
        for &(a, b) in &[(0.0f64, -0.5f64), (1.3, -0.9), (2.0, -0.1), (3.7, -0.5)] {
            let params = p(a, b);
            let series = GSeries::new(&params);
            for &t in &[0.05f64, 0.3, 0.7, 0.95] {
                let identity = g_derivative(&params, t).unwrap();
                let termwise = series.derivative(Complex64::new(t, 0.0)).unwrap().re;
                assert_relative_eq!(identity, termwise, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn g_derivative_at_zero_is_series_coefficient() {
        let params = p(2.5, -0.4);
        let v = g_derivative(&params, 0.0).unwrap();
        assert_relative_eq!(v, 0.4 * 3.5 / 0.6, max_relative = 1e-14);
    }

    #[test]
    fn g_derivative_hypergeometric_closed_form() {
        // G'(t) = -beta (alpha+1)/(beta+1) 2F1(beta+1, -alpha; beta+2; t).
        let (a, b, t) = (1.3f64, -0.6f64, 0.4f64);
        let lhs = g_derivative(&p(a, b), t).unwrap();
        let rhs = -b * (a + 1.0) / (b + 1.0)
            * specialfn::pfq_real(&[b + 1.0, -a], &[b + 2.0], t).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-11);
    }

    #[test]
    fn g_circle_requires_positive_alpha() {
        let xi = Complex64::new(0.0, 1.0);
        assert!(g_eval(&p(-0.5, -0.5), xi).is_err());
        let v = g_eval(&p(1.5, -0.5), xi).unwrap();
        assert!(v.norm().is_finite());
    }

    #[test]
    fn kernel_beta_zero_closed_form() {
        for &a in &[-0.5f64, 0.0, 1.3, 3.7] {
            let params = p(a, 0.0);
            for &xi in &[Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.55)] {
                let v = kernel_eval(&params, xi).unwrap();
                let expect = (Complex64::new(1.0, 0.0) - xi).powf(-(a + 2.0));
                assert!((v - expect).norm() <= 1e-12 * expect.norm());
            }
        }
    }

    #[test]
    fn kernel_two_route_consistency() {
        // K = G / (1-xi)^(alpha+2) must match the raw 2F1 series.
        let params = p(1.0, -0.5);
        let xi = Complex64::new(0.4, 0.0);
        let v = kernel_eval(&params, xi).unwrap();
        let raw = specialfn::pfq(&[1.0, 1.0 + -0.5 + 2.0], &[0.5], xi).unwrap();
        assert!((v - raw).norm() <= 1e-11 * raw.norm());
    }

    #[test]
    fn kernel_pole_for_shifted_beta() {
        let params = p(0.5, 1.5); // s = 2
        assert!(matches!(
            kernel_eval(&params, Complex64::new(0.0, 0.0)),
            Err(Error::SingularArgument(_))
        ));
        // Away from 0 the factored form evaluates fine.
        let v = kernel_eval(&params, Complex64::new(0.2, 0.1)).unwrap();
        assert!(v.norm().is_finite());
    }

    #[test]
    fn kernel_rejects_boundary() {
        assert!(kernel_eval(&p(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
        assert!(kernel_eval(&p(1.0, 0.0), Complex64::new(0.8, 0.7)).is_err());
    }

    #[test]
    fn derivatives_match_beta_zero_closed_forms() {
        for &a in &[-0.5f64, 0.0, 2.0] {
            let params = p(a, 0.0);
            for &t in &[0.0f64, 0.3, 0.8] {
                let (k0, k1, k2) = kernel_derivatives(&params, t).unwrap();
                let u = 1.0 - t;
                assert_relative_eq!(k0, u.powf(-(a + 2.0)), max_relative = 1e-13);
                assert_relative_eq!(k1, (a + 2.0) * u.powf(-(a + 3.0)), max_relative = 1e-12);
                assert_relative_eq!(
                    k2,
                    (a + 2.0) * (a + 3.0) * u.powf(-(a + 4.0)),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn derivatives_at_zero_are_series_coefficients() {
        let (a, b) = (1.3f64, -0.6f64);
        let (k0, k1, k2) = kernel_derivatives(&p(a, b), 0.0).unwrap();
        assert_abs_diff_eq!(k0, 1.0, epsilon = 0.0);
        assert_relative_eq!(k1, (a + b + 2.0) / (b + 1.0), max_relative = 1e-14);
        assert_relative_eq!(
            k2,
            2.0 * (a + b + 2.0) * (a + b + 3.0) / ((b + 1.0) * (b + 2.0)),
            max_relative = 1e-14
        );
    }

    #[test]
    fn derivatives_require_reduced_params() {
        assert!(kernel_derivatives(&p(1.0, 0.5), 0.3).is_err());
    }

    #[test]
    fn series_table_matches_direct_sums() {
        let params = p(2.1, -0.7);
        let series = KernelSeries::new(&params).unwrap();
        for &t in &[0.0f64, 0.25, 0.8, 0.97] {
            let (k0, k1, k2) = kernel_derivatives(&params, t).unwrap();
            let (s0, s1, s2) = series.derivatives(t).unwrap();
            assert_relative_eq!(k0, s0, max_relative = 1e-13);
            assert_relative_eq!(k1, s1, max_relative = 1e-12);
            assert_relative_eq!(k2, s2, max_relative = 1e-12);
            assert_relative_eq!(series.value(t).unwrap(), k0, max_relative = 1e-13);
        }
    }

    #[test]
    fn series_value_complex_matches_kernel_eval() {
        let params = p(1.3, -0.4);
        let series = KernelSeries::new(&params).unwrap();
        let xi = Complex64::new(0.35, -0.5);
        let a = series.value_complex(xi).unwrap();
        let b = kernel_eval(&params, xi).unwrap();
        assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn angular_average_matches_brute_force() {
        let params = p(0.8, -0.3);
        let series = KernelSeries::new(&params).unwrap();
        let (t, w) = (0.6f64, Complex64::new(0.5, 0.2));
        let x = t * w.norm_sqr();
        let phi = series.abs_sq_angular_avg(x).unwrap();
        let m = 512;
        let mut avg = 0.0;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let z = Complex64::from_polar(t.sqrt(), theta);
            avg += series.value_complex(z * w.conj()).unwrap().norm_sqr();
        }
        avg /= m as f64;
        assert_relative_eq!(phi, avg, max_relative = 1e-12);
    }

    #[test]
    fn sq_weighted_internal_consistency() {
        let params = p(1.5, -0.5);
        let series = KernelSeries::new(&params).unwrap();
        let x = 0.4;
        let (phi, psi, phi1) = series.sq_weighted(x).unwrap();
        assert_relative_eq!(phi, series.abs_sq_angular_avg(x).unwrap(), max_relative = 1e-14);
        // Finite-difference check of Psi = d Phi / dx.
        let h = 1e-6;
        let dphi = (series.abs_sq_angular_avg(x + h).unwrap()
            - series.abs_sq_angular_avg(x - h).unwrap())
            / (2.0 * h);
        assert_relative_eq!(psi, dphi, max_relative = 1e-8);
        assert!(phi1 > psi);
    }
}
