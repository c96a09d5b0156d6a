//! Boundedness of the transform between weighted L^p spaces: the two-sided
//! integral estimates `I_{c,d}` / `J_{c,d}`, their boundary asymptotics, the
//! closed predicate for `L^p(mu_{a,b})` boundedness, the equivalent
//! Schur-test interval condition, and an empirical norm probe.

use crate::berezin::{berezin_adjoint_apply, berezin_apply, BerezinContext};
use crate::diskquad::{gauss_jacobi_unit, QuadratureRule, TestFunction};
use crate::error::{Error, Result};
use crate::kernel::{self, KernelSeries, Params};
use crate::specialfn::{beta as beta_fn, pfq_real};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The full parameter tuple of a boundedness question: transform weight
/// `(alpha, beta)` (beta already reduced), target weight `(a, b)`, exponent
/// `p` with conjugate `q` (infinite when `p = 1`).
#[derive(Debug, Clone, Copy)]
pub struct LpSetting {
    alpha: f64,
    beta: f64,
    a: f64,
    b: f64,
    p: f64,
    q: f64,
}

impl LpSetting {
    pub fn new(alpha: f64, beta: f64, a: f64, b: f64, p: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("a", a), ("b", b)] {
            if !v.is_finite() || v <= -1.0 {
                return Err(Error::Domain(format!("{name} must be > -1, got {v}")));
            }
        }
        if !beta.is_finite() || beta <= -1.0 || beta > 0.0 {
            return Err(Error::Domain(format!("beta must lie in (-1, 0], got {beta}")));
        }
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Domain(format!("p must be >= 1, got {p}")));
        }
        let q = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
        Ok(Self { alpha, beta, a, b, p, q })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Conjugate exponent; `inf` when `p = 1`.
    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Boundary behavior of `I_{c,d}(w)` as `|w| -> 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticClass {
    Bounded,
    Logarithmic,
    /// Grows like `(1-|w|^2)^(-exponent)`; the exponent is `alpha - d > 0`.
    Power(f64),
}

/// Trichotomy in `alpha - d`; exact ties (within 1e-12) are logarithmic.
pub fn classify_asymptotic(alpha: f64, d: f64) -> AsymptoticClass {
    if (alpha - d).abs() <= 1e-12 {
        AsymptoticClass::Logarithmic
    } else if alpha < d {
        AsymptoticClass::Bounded
    } else {
        AsymptoticClass::Power(alpha - d)
    }
}

/// `I_{c,d}(w) = int_D |K(z conj(w))|^2 / K(|z|^2) |z|^(2c) (1-|z|^2)^d dA(z)`
/// by Gauss-Jacobi quadrature with weight `t^c (1-t)^(alpha+2+d)` after the
/// kernel denominator is factored into `(1-t)^(alpha+2)/G(t)`.
pub fn icd_numeric(
    c: f64,
    d: f64,
    w: Complex64,
    params: &Params,
    rule: &QuadratureRule,
) -> Result<f64> {
    if !params.is_reduced() {
        return Err(Error::Domain("icd_numeric requires reduced parameters".into()));
    }
    let alpha = params.alpha();
    if !(c > -1.0) || !(alpha + d + 3.0 > 0.0) {
        return Err(Error::Integrability(format!(
            "I_(c,d) requires c > -1 and d > -alpha-3, got c = {c}, d = {d}"
        )));
    }
    if !(w.norm() < 1.0) {
        return Err(Error::Domain(format!("|w| must be < 1, got {}", w.norm())));
    }
    let series = KernelSeries::new(params)?;
    let (nodes, weights) = gauss_jacobi_unit(rule.radial_order(), c, alpha + 2.0 + d)?;
    let t_w = w.norm_sqr();
    let mut acc = 0.0;
    for (&t, &u) in nodes.iter().zip(&weights) {
        acc += u * series.abs_sq_angular_avg(t * t_w)? / kernel::g_eval_real(params, t)?;
    }
    Ok(acc)
}

/// The closed hypergeometric form of the upper envelope
/// `J_{c,d}(w) = int_D |K(z conj(w))|^2 |z|^(2c) (1-|z|^2)^(alpha+2+d) dA(z)`:
/// `B(c+1, alpha+d+3) 4F3(1, g, g, c+1; beta+1, beta+1, alpha+c+d+4; |w|^2)`
/// with `g = alpha+beta+2`.
pub fn jcd_closed(c: f64, d: f64, w: Complex64, params: &Params) -> Result<f64> {
    if !params.is_reduced() {
        return Err(Error::Domain("jcd_closed requires reduced parameters".into()));
    }
    let alpha = params.alpha();
    let beta = params.beta();
    if !(c > -1.0) || !(alpha + d + 3.0 > 0.0) {
        return Err(Error::Integrability(format!(
            "J_(c,d) requires c > -1 and d > -alpha-3, got c = {c}, d = {d}"
        )));
    }
    if !(w.norm() < 1.0) {
        return Err(Error::Domain(format!("|w| must be < 1, got {}", w.norm())));
    }
    let g = alpha + beta + 2.0;
    let front = beta_fn(c + 1.0, alpha + d + 3.0)?;
    let tail = pfq_real(
        &[1.0, g, g, c + 1.0],
        &[beta + 1.0, beta + 1.0, alpha + c + d + 4.0],
        w.norm_sqr(),
    )?;
    Ok(front * tail)
}

/// The closed boundedness criterion: `p(alpha+1) > a+1` together with
/// `b <= beta` when `p = 1` and `b < p(beta+1) - 1` when `p > 1`.
pub fn bounded_predicate(setting: &LpSetting) -> bool {
    let first = setting.p * (setting.alpha + 1.0) > setting.a + 1.0;
    let second = if setting.p == 1.0 {
        setting.b <= setting.beta
    } else {
        setting.b < setting.p * (setting.beta + 1.0) - 1.0
    };
    first && second
}

/// Whether both open Schur-test windows are non-empty:
/// `((b-beta)/p, (b+1)/p) ∩ (0, (beta+1)/q)` and
/// `((a-alpha)/p, (a+alpha+3)/p) ∩ (-(alpha+2)/q, (alpha+1)/q)`.
pub fn schur_intervals_nonempty(setting: &LpSetting) -> Result<bool> {
    if setting.p <= 1.0 {
        return Err(Error::Domain("the Schur interval test requires p > 1".into()));
    }
    let (alpha, beta, a, b, p, q) = (
        setting.alpha,
        setting.beta,
        setting.a,
        setting.b,
        setting.p,
        setting.q,
    );
    let lo1 = ((b - beta) / p).max(0.0);
    let hi1 = ((b + 1.0) / p).min((beta + 1.0) / q);
    let lo2 = ((a - alpha) / p).max(-(alpha + 2.0) / q);
    let hi2 = ((a + alpha + 3.0) / p).min((alpha + 1.0) / q);
    Ok(lo1 < hi1 && lo2 < hi2)
}

#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub predicate: bool,
    pub schur: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub disagreements: usize,
}

/// Seeded random comparison of [`bounded_predicate`] against
/// [`schur_intervals_nonempty`] over `(alpha, a, b) in (-1, 4]`,
/// `beta in (-1, 0]`, `p in (1, 5]`.
pub fn schur_agreement_sweep(count: usize, seed: u64) -> Result<SweepOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    let mut disagreements = 0usize;
    for _ in 0..count {
        let alpha = 4.0 - 5.0 * rng.gen::<f64>();
        let beta = -rng.gen::<f64>();
        let a = 4.0 - 5.0 * rng.gen::<f64>();
        let b = 4.0 - 5.0 * rng.gen::<f64>();
        let p = 5.0 - 4.0 * rng.gen::<f64>();
        let setting = LpSetting::new(alpha, beta, a, b, p)?;
        let predicate = bounded_predicate(&setting);
        let schur = schur_intervals_nonempty(&setting)?;
        if predicate != schur {
            disagreements += 1;
        }
        rows.push(SweepRow { alpha, beta, a, b, p, predicate, schur });
    }
    Ok(SweepOutcome { rows, disagreements })
}

/// Least-squares exponent `s` fitting `v ~ (1 - r^2)^(-s)` on a radius ladder.
pub fn growth_exponent(radii: &[f64], values: &[f64]) -> Result<f64> {
    if radii.len() != values.len() || radii.len() < 2 {
        return Err(Error::Domain("growth fit needs at least two (radius, value) pairs".into()));
    }
    let mut xs = Vec::with_capacity(radii.len());
    let mut ys = Vec::with_capacity(values.len());
    for (&r, &v) in radii.iter().zip(values) {
        if !(0.0..1.0).contains(&r) || !(v > 0.0) {
            return Err(Error::Domain(format!(
                "growth fit needs r in [0,1) and positive values, got ({r}, {v})"
            )));
        }
        xs.push((1.0 / (1.0 - r * r)).ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    if den == 0.0 {
        return Err(Error::Domain("growth fit needs distinct radii".into()));
    }
    Ok(num / den)
}

/// Discrete lower-bound probe of the operator norm on the given grid.
///
/// For `p > 1`: the largest ratio of importance-weighted discrete
/// `L^p` norms `|Bf|/|f|` with weights `|z|^(2b) (1-|z|^2)^a`. For `p = 1`
/// the duality route is used instead: the largest sup of the (constant-
/// corrected) adjoint over the grid divided by the sup of `|g|`.
pub fn empirical_bound_probe(
    setting: &LpSetting,
    ctx: &BerezinContext,
    sample: &[TestFunction],
    grid: &[Complex64],
) -> Result<f64> {
    if sample.is_empty() || grid.is_empty() {
        return Err(Error::Domain("probe needs a non-empty sample and grid".into()));
    }
    if (ctx.params().alpha() - setting.alpha).abs() > 1e-12
        || (ctx.params().beta() - setting.beta).abs() > 1e-12
    {
        return Err(Error::Domain(
            "probe setting and context weights must agree (reduced beta)".into(),
        ));
    }
    let (a, b, p) = (setting.a, setting.b, setting.p);
    let mut best = 0.0f64;
    if p == 1.0 {
        let constant = beta_fn(a + 1.0, b + 1.0)?
            / beta_fn(setting.alpha + 1.0, setting.beta + 1.0)?;
        for g in sample {
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for &z in grid {
                num = num.max(berezin_adjoint_apply(ctx, g, z, a, b)?.norm());
                den = den.max(g.eval(z).norm());
            }
            if !(den > 0.0) {
                return Err(Error::Domain("probe function vanishes on the whole grid".into()));
            }
            best = best.max(constant * num / den);
        }
        return Ok(best);
    }
    for f in sample {
        if let TestFunction::HFamily(s, tau) = f {
            if !(p * s < b + 1.0) || !(p * tau < a + 1.0) {
                return Err(Error::Integrability(format!(
                    "HFamily({s}, {tau}) is not in L^{p} of the target weight"
                )));
            }
        }
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for &z in grid {
            let weight = z.norm_sqr().powf(b) * (1.0 - z.norm_sqr()).powf(a);
            num += weight * berezin_apply(ctx, f, z)?.norm().powf(p);
            den += weight * f.eval(z).norm().powf(p);
        }
        if !(den > 0.0) {
            return Err(Error::Domain("probe function vanishes on the whole grid".into()));
        }
        best = best.max((num / den).powf(1.0 / p));
    }
    Ok(best)
}
