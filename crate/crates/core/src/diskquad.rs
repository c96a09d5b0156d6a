//! Quadrature over the unit disk against the probability measure
//! `dmu_{alpha,beta}(z) = |z|^(2 beta) (1-|z|^2)^alpha dA(z) / B(alpha+1, beta+1)`.
//!
//! The substitution `t = r^2` turns radial integrals into weighted integrals
//! on `(0,1)` with weight `t^beta (1-t)^alpha`, handled by Gauss-Jacobi rules;
//! the angular direction uses the uniform `M`-point rule, which is exact for
//! trigonometric polynomials of degree below `M`. Radial integrands that are
//! singular beyond the weight (logarithms, the `h` family) go through a
//! geometrically graded composite Gauss-Legendre ladder instead, since fixed
//! Jacobi rules only converge algebraically for them.

use crate::error::{Error, Result};
use crate::kernel::Params;
use crate::specialfn::beta as beta_fn;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub const DEFAULT_RADIAL_ORDER: usize = 80;
pub const DEFAULT_ANGULAR_COUNT: usize = 256;

type CachedRule = Arc<(Vec<f64>, Vec<f64>)>;
type JacobiCache = Mutex<HashMap<(usize, u64, u64), CachedRule>>;

fn jacobi_cache() -> &'static JacobiCache {
    static CACHE: OnceLock<JacobiCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Jacobi nodes and weights on `(0, 1)` for the weight
/// `t^t_exponent (1-t)^u_exponent`, computed by the Golub-Welsch
/// eigenvalue method. Weights are raw: they sum to
/// `B(t_exponent+1, u_exponent+1)`.
pub fn gauss_jacobi_unit(n: usize, t_exponent: f64, u_exponent: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Build("quadrature order must be at least 1".into()));
    }
    if !t_exponent.is_finite() || t_exponent <= -1.0 || !u_exponent.is_finite() || u_exponent <= -1.0
    {
        return Err(Error::Integrability(format!(
            "Jacobi weight exponents must be > -1, got ({t_exponent}, {u_exponent})"
        )));
    }
    let key = (n, t_exponent.to_bits(), u_exponent.to_bits());
    if let Some(hit) = jacobi_cache().lock().unwrap().get(&key) {
        return Ok((hit.0.clone(), hit.1.clone()));
    }

    // Jacobi weight (1-x)^a (1+x)^b on [-1,1] maps to (1-t)^a t^b under
    // t = (1+x)/2.
    let a = u_exponent;
    let b = t_exponent;
    let mut m = DMatrix::<f64>::zeros(n, n);
    m[(0, 0)] = (b - a) / (a + b + 2.0);
    for k in 1..n {
        let kf = k as f64;
        let denom = (2.0 * kf + a + b) * (2.0 * kf + a + b + 2.0);
        m[(k, k)] = (b * b - a * a) / denom;
        let off_sq = if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                / ((2.0 * kf + a + b).powi(2) * (2.0 * kf + a + b + 1.0) * (2.0 * kf + a + b - 1.0))
        };
        if !(off_sq > 0.0 && off_sq.is_finite()) {
            return Err(Error::Build(format!(
                "Jacobi recurrence broke down at step {k} for exponents ({t_exponent}, {u_exponent})"
            )));
        }
        let off = off_sq.sqrt();
        m[(k - 1, k)] = off;
        m[(k, k - 1)] = off;
    }
    let eigen = m.symmetric_eigen();
    let mass = beta_fn(t_exponent + 1.0, u_exponent + 1.0)?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = eigen.eigenvalues[i];
            let v0 = eigen.eigenvectors[(0, i)];
            ((1.0 + x) / 2.0, mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    for window in pairs.windows(2) {
        if !(window[0].0 < window[1].0) {
            return Err(Error::Build("Jacobi nodes failed to separate".into()));
        }
    }
    if pairs[0].0 <= 0.0 || pairs[n - 1].0 >= 1.0 || pairs.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::Build(
            "Jacobi eigenvalue solve produced out-of-range nodes or weights".into(),
        ));
    }
    let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    jacobi_cache()
        .lock()
        .unwrap()
        .insert(key, Arc::new((nodes.clone(), weights.clone())));
    Ok((nodes, weights))
}

fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    gauss_jacobi_unit(n, 0.0, 0.0)
}

/// Radial Gauss-Jacobi rule for the normalized measure plus a uniform angular
/// rule; the radial weights sum to 1.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    params: Params,
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    angular_count: usize,
}

impl QuadratureRule {
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Nodes in the variable `t = |z|^2`, strictly increasing inside (0,1).
    pub fn radial_nodes(&self) -> &[f64] {
        &self.radial_nodes
    }

    /// Probability weights for the radial measure; they sum to 1.
    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn radial_order(&self) -> usize {
        self.radial_nodes.len()
    }

    /// Weighted sum over the radial nodes: integrates radial functions of
    /// `t = |z|^2` against the full normalized measure.
    pub fn radial_sum(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.radial_nodes
            .iter()
            .zip(&self.radial_weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Tensor polar sum over radial nodes and the uniform angular rule.
    pub fn polar_sum(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let m = self.angular_count;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let r = t.sqrt();
            let mut ang = Complex64::new(0.0, 0.0);
            for j in 0..m {
                let theta = 2.0 * PI * j as f64 / m as f64;
                ang += f(Complex64::from_polar(r, theta));
            }
            acc += ang * (w / m as f64);
        }
        acc
    }
}

pub fn build_rule(params: &Params, radial_order: usize, angular_count: usize) -> Result<QuadratureRule> {
    if radial_order < 2 {
        return Err(Error::Build(format!("radial_order must be >= 2, got {radial_order}")));
    }
    if angular_count < 4 {
        return Err(Error::Build(format!("angular_count must be >= 4, got {angular_count}")));
    }
    let (radial_nodes, raw) = gauss_jacobi_unit(radial_order, params.beta(), params.alpha())?;
    let total: f64 = raw.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::Build("radial weights failed to normalize".into()));
    }
    let radial_weights = raw.iter().map(|w| w / total).collect();
    Ok(QuadratureRule { params: *params, radial_nodes, radial_weights, angular_count })
}

/// Radial integrands factored as `t^t_exp (1-t)^u_exp ln(t)^log_pow` on top
/// of the measure's own weight.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialProfile {
    pub t_exp: f64,
    pub u_exp: f64,
    pub log_pow: u32,
}

/// The closed family of integrands used across the crate's checks.
#[derive(Clone)]
pub enum TestFunction {
    /// `z^n conj(z)^m`.
    Monomial(u32, u32),
    /// `(1 - |z|^2)^N`.
    OneMinusModSqPow(u32),
    /// `log |z|^2`.
    LogModSq,
    /// `|z|^(-2s) (1 - |z|^2)^(-tau)`.
    HFamily(f64, f64),
    /// `(1 - |z|^2)^N` (alias kept for the boundedness probes).
    GN(u32),
    /// `Re(z^n)`.
    HarmonicReZn(u32),
    /// Arbitrary user integrand sampled at quadrature nodes.
    Callable(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Monomial(n, m) => write!(f, "Monomial({n}, {m})"),
            Self::OneMinusModSqPow(n) => write!(f, "OneMinusModSqPow({n})"),
            Self::LogModSq => write!(f, "LogModSq"),
            Self::HFamily(s, tau) => write!(f, "HFamily({s}, {tau})"),
            Self::GN(n) => write!(f, "GN({n})"),
            Self::HarmonicReZn(n) => write!(f, "HarmonicReZn({n})"),
            Self::Callable(_) => write!(f, "Callable(..)"),
        }
    }
}

impl TestFunction {
    pub fn callable(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::Callable(Arc::new(f))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Monomial(n, m) => z.powu(*n) * z.conj().powu(*m),
            Self::OneMinusModSqPow(n) | Self::GN(n) => {
                Complex64::new((1.0 - z.norm_sqr()).powi(*n as i32), 0.0)
            }
            Self::LogModSq => Complex64::new(z.norm_sqr().ln(), 0.0),
            Self::HFamily(s, tau) => Complex64::new(
                z.norm_sqr().powf(-s) * (1.0 - z.norm_sqr()).powf(-tau),
                0.0,
            ),
            Self::HarmonicReZn(n) => Complex64::new(z.powu(*n).re, 0.0),
            Self::Callable(f) => f(z),
        }
    }

    pub fn is_radial(&self) -> bool {
        match self {
            Self::Monomial(n, m) => n == m,
            Self::OneMinusModSqPow(_) | Self::LogModSq | Self::HFamily(..) | Self::GN(_) => true,
            Self::HarmonicReZn(n) => *n == 0,
            Self::Callable(_) => false,
        }
    }

    pub(crate) fn radial_profile(&self) -> Option<RadialProfile> {
        match self {
            Self::Monomial(n, m) if n == m => {
                Some(RadialProfile { t_exp: *n as f64, u_exp: 0.0, log_pow: 0 })
            }
            Self::OneMinusModSqPow(n) | Self::GN(n) => {
                Some(RadialProfile { t_exp: 0.0, u_exp: *n as f64, log_pow: 0 })
            }
            Self::LogModSq => Some(RadialProfile { t_exp: 0.0, u_exp: 0.0, log_pow: 1 }),
            Self::HFamily(s, tau) => {
                Some(RadialProfile { t_exp: -s, u_exp: -tau, log_pow: 0 })
            }
            Self::HarmonicReZn(0) => Some(RadialProfile { t_exp: 0.0, u_exp: 0.0, log_pow: 0 }),
            _ => None,
        }
    }

    /// `|f|^2` within the same family, when representable.
    pub fn abs_squared(&self) -> Option<TestFunction> {
        match self {
            Self::Monomial(n, m) => Some(Self::Monomial(n + m, n + m)),
            Self::OneMinusModSqPow(n) => Some(Self::OneMinusModSqPow(2 * n)),
            Self::GN(n) => Some(Self::GN(2 * n)),
            Self::HFamily(s, tau) => Some(Self::HFamily(2.0 * s, 2.0 * tau)),
            Self::HarmonicReZn(0) => Some(Self::HarmonicReZn(0)),
            Self::Callable(f) => {
                let f = Arc::clone(f);
                Some(Self::callable(move |z| Complex64::new(f(z).norm_sqr(), 0.0)))
            }
            Self::LogModSq | Self::HarmonicReZn(_) => None,
        }
    }

    /// Whether the function extends continuously to the closed disk
    /// (Callable is assumed continuous by the caller).
    pub(crate) fn boundary_continuous(&self) -> bool {
        !matches!(self, Self::LogModSq | Self::HFamily(..))
    }

    pub(crate) fn check_integrable(&self, params: &Params) -> Result<()> {
        if let Self::HFamily(s, tau) = self {
            if !(*s < params.beta() + 1.0) || !(*tau < params.alpha() + 1.0) {
                return Err(Error::Integrability(format!(
                    "HFamily({s}, {tau}) is not integrable at (alpha, beta) = ({}, {}): \
                     needs s < beta+1 and tau < alpha+1",
                    params.alpha(),
                    params.beta()
                )));
            }
        }
        Ok(())
    }
}

fn is_small_nonneg_integer(x: f64) -> bool {
    x >= 0.0 && x == x.round() && x <= 1e6
}

/// `int_0^1 t^exp0 (1-t)^exp1 ln(t)^log_pow rest(t, 1-t) dt` for smooth
/// `rest`, which receives `(t, 1-t)` so it can stay accurate near both ends.
///
/// Without the log factor the endpoint singularities are absorbed exactly
/// into a Gauss-Jacobi weight (valid arbitrarily close to exponent -1) and
/// the order is doubled until two answers agree. With the log factor,
/// geometrically graded Gauss-Legendre panels march into each endpoint; the
/// panels near 0 decay like 2^(-k(exp0+1)), so this route converges within
/// the level cap for exp0 above roughly -0.9 and reports NonConvergent for
/// deeper singularities rather than returning a bad value.
pub(crate) fn graded_integral_01(
    exp0: f64,
    exp1: f64,
    log_pow: u32,
    rest: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    if !exp0.is_finite() || exp0 <= -1.0 || !exp1.is_finite() || exp1 <= -1.0 {
        return Err(Error::Integrability(format!(
            "graded integral requires exponents > -1, got ({exp0}, {exp1})"
        )));
    }
    if log_pow == 0 {
        let mut prev = f64::NAN;
        let mut diff = f64::NAN;
        for &order in &[80usize, 160, 320] {
            let (nodes, weights) = gauss_jacobi_unit(order, exp0, exp1)?;
            let mut acc = 0.0;
            for (&t, &w) in nodes.iter().zip(&weights) {
                acc += w * rest(t, 1.0 - t);
            }
            diff = (acc - prev).abs();
            if diff <= 1e-13 * acc.abs().max(f64::MIN_POSITIVE) {
                return Ok(acc);
            }
            prev = acc;
        }
        return Err(Error::NonConvergent { max_terms: 320, last_term: diff });
    }
    let (nodes, weights) = gauss_legendre_unit(16)?;
    let max_levels = 800;
    let mut total = 0.0f64;
    // side 0: panels in t descending toward 0; side 1: panels in u = 1-t.
    for side in 0..2 {
        let mut quiet = 0usize;
        let mut level = 1;
        loop {
            let hi = 0.5f64.powi(level);
            let lo = hi / 2.0;
            let mut panel = 0.0f64;
            for (&x, &w) in nodes.iter().zip(&weights) {
                let v = lo + (hi - lo) * x;
                let (t, u) = if side == 0 { (v, 1.0 - v) } else { (1.0 - v, v) };
                panel += w
                    * t.powf(exp0)
                    * u.powf(exp1)
                    * t.ln().powi(log_pow as i32)
                    * rest(t, u);
            }
            panel *= hi - lo;
            total += panel;
            if panel.abs() <= 1e-17 * (total.abs() + f64::MIN_POSITIVE) {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            level += 1;
            if level > max_levels {
                return Err(Error::NonConvergent {
                    max_terms: max_levels as usize,
                    last_term: panel.abs(),
                });
            }
        }
    }
    Ok(total)
}

/// Radial integral of `t^p.t_exp (1-t)^p.u_exp ln(t)^p.log_pow` against the
/// full normalized measure carried by `rule`.
pub(crate) fn integrate_radial_profile(rule: &QuadratureRule, p: RadialProfile) -> Result<f64> {
    let params = rule.params();
    if p.log_pow == 0 && is_small_nonneg_integer(p.t_exp) && is_small_nonneg_integer(p.u_exp) {
        // Polynomial in t: the rule integrates it exactly.
        return Ok(rule.radial_sum(|t| t.powf(p.t_exp) * (1.0 - t).powf(p.u_exp)));
    }
    let exp0 = params.beta() + p.t_exp;
    let exp1 = params.alpha() + p.u_exp;
    let raw = graded_integral_01(exp0, exp1, p.log_pow, |_, _| 1.0)?;
    Ok(raw / beta_fn(params.alpha() + 1.0, params.beta() + 1.0)?)
}

/// Quadrature approximation of `int f dmu_{alpha,beta}` over the unit disk.
pub fn disk_integrate(f: &TestFunction, rule: &QuadratureRule) -> Result<Complex64> {
    f.check_integrable(rule.params())?;
    if let Some(profile) = f.radial_profile() {
        return Ok(Complex64::new(integrate_radial_profile(rule, profile)?, 0.0));
    }
    Ok(rule.polar_sum(|z| f.eval(z)))
}

/// `int f(w) conj(w)^n w^k dmu_{alpha,beta}(w)`.
pub fn moment(f: &TestFunction, n: u32, k: u32, rule: &QuadratureRule) -> Result<Complex64> {
    match f {
        TestFunction::Monomial(p, q) => {
            disk_integrate(&TestFunction::Monomial(p + k, q + n), rule)
        }
        TestFunction::HarmonicReZn(j) => {
            // Re w^j = (w^j + conj(w)^j) / 2.
            let first = disk_integrate(&TestFunction::Monomial(j + k, n), rule)?;
            let second = disk_integrate(&TestFunction::Monomial(k, j + n), rule)?;
            Ok((first + second) / 2.0)
        }
        _ => {
            if let Some(mut profile) = f.radial_profile() {
                if n == k {
                    f.check_integrable(rule.params())?;
                    profile.t_exp += n as f64;
                    return Ok(Complex64::new(integrate_radial_profile(rule, profile)?, 0.0));
                }
            }
            f.check_integrable(rule.params())?;
            Ok(rule.polar_sum(|w| f.eval(w) * w.conj().powu(n) * w.powu(k)))
        }
    }
}
