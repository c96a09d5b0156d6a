//! The kernel-induced conformal metric `rho(z)|dz|`, geodesic distances by
//! polyline descent, coherent states, the projection-norm identity, and the
//! Lipschitz estimates that tie the transform to the metric.
//!
//! Everything here requires reduced parameters (`shift == 0`). For a shifted
//! weight the diagonal kernel gains a factor `c |z|^(-2s)` whose log is
//! harmonic away from the origin, so the induced metric agrees with the
//! reduced one wherever it is defined; callers reduce first.

use crate::berezin::{berezin_apply, bmo_norm, default_bmo_grid, mean_oscillation, BerezinContext};
use crate::diskquad::{gauss_jacobi_unit, QuadratureRule, TestFunction};
use crate::error::{Error, Result};
use crate::kernel::{self, KernelSeries, Params};
use crate::specialfn::pfq_real;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default sweep budget for [`geodesic_distance`].
pub const DEFAULT_GEODESIC_BUDGET: usize = 400;

/// A piecewise-linear path in the open disk.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPolyline {
    points: Vec<Complex64>,
}

impl PathPolyline {
    /// At least two vertices, all strictly inside the disk, consecutive
    /// vertices distinct.
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("a path needs at least two vertices".into()));
        }
        for p in &points {
            if !(p.norm() < 1.0) {
                return Err(Error::Domain(format!("path vertex {p} is not inside the disk")));
            }
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("consecutive path vertices must be distinct".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }
}

/// Shared state for metric evaluations: the coefficient table plus a direct
/// fallback for arguments beyond the table's guard radius.
struct MetricEvaluator {
    params: Params,
    series: KernelSeries,
}

impl MetricEvaluator {
    fn new(params: &Params) -> Result<Self> {
        if !params.is_reduced() {
            return Err(Error::Domain(
                "metric operations require reduced parameters (shift == 0)".into(),
            ));
        }
        let series = KernelSeries::new(params)?;
        Ok(Self { params: *params, series })
    }

    /// `rho^2` at `t = |z|^2`; negative round-off clamped at -1e-12.
    fn density_sq(&self, t: f64) -> Result<f64> {
        let (k, k1, k2) = if t <= kernel::SERIES_T_MAX {
            self.series.derivatives(t)?
        } else {
            kernel::kernel_derivatives(&self.params, t)?
        };
        let r = k1 / k;
        let v = r + t * (k2 / k) - t * r * r;
        if v < -1e-12 {
            return Err(Error::Domain(format!("metric density came out negative ({v}) at t = {t}")));
        }
        Ok(v.max(0.0))
    }

    fn rho_t(&self, t: f64) -> Result<f64> {
        Ok(self.density_sq(t)?.sqrt())
    }

    /// Metric length of one straight segment with the given unit-interval
    /// nodes and weights.
    fn segment_length(
        &self,
        a: Complex64,
        b: Complex64,
        nodes: &[f64],
        weights: &[f64],
    ) -> Result<f64> {
        let d = b - a;
        let len = d.norm();
        if len == 0.0 {
            return Ok(0.0);
        }
        let mut acc = 0.0;
        for (&t, &u) in nodes.iter().zip(weights) {
            acc += u * self.rho_t((a + d * t).norm_sqr())?;
        }
        Ok(acc * len)
    }

    fn polyline_length(
        &self,
        points: &[Complex64],
        nodes: &[f64],
        weights: &[f64],
    ) -> Result<f64> {
        let mut acc = 0.0;
        for pair in points.windows(2) {
            acc += self.segment_length(pair[0], pair[1], nodes, weights)?;
        }
        Ok(acc)
    }

    /// `int_0^r rho(s) ds` by panel-doubling composite Gauss-Legendre.
    /// Exact for radial same-ray geodesics.
    fn radial_distance(&self, r: f64) -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        let (nodes, weights) = gauss_jacobi_unit(24, 0.0, 0.0)?;
        let mut panels = 1usize;
        let mut prev = f64::NAN;
        loop {
            let mut acc = 0.0;
            for k in 0..panels {
                let lo = r * k as f64 / panels as f64;
                let width = r / panels as f64;
                for (&t, &u) in nodes.iter().zip(&weights) {
                    let s = lo + width * t;
                    acc += u * width * self.rho_t(s * s)?;
                }
            }
            let diff = (acc - prev).abs();
            if diff <= 1e-13 * acc.abs().max(1.0) {
                return Ok(acc);
            }
            prev = acc;
            panels *= 2;
            if panels > 4096 {
                return Err(Error::NonConvergent { max_terms: panels, last_term: diff });
            }
        }
    }
}

/// The metric density `rho(z) = sqrt(K'/K + |z|^2 K''/K - |z|^2 (K'/K)^2)`
/// with all derivatives at `t = |z|^2`. Radial; finite on the open disk.
pub fn rho(params: &Params, z: Complex64) -> Result<f64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("rho requires |z| < 1, got {}", z.norm())));
    }
    let t = z.norm_sqr();
    let (k, k1, k2) = kernel::kernel_derivatives(params, t)?;
    let r = k1 / k;
    let v = r + t * (k2 / k) - t * r * r;
    if v < -1e-12 {
        return Err(Error::Domain(format!("metric density came out negative ({v}) at t = {t}")));
    }
    Ok(v.max(0.0).sqrt())
}

/// Length of a polyline in the metric, each straight segment integrated with
/// a `samples_per_segment`-point Gauss-Legendre rule.
pub fn path_length(
    params: &Params,
    path: &PathPolyline,
    samples_per_segment: usize,
) -> Result<f64> {
    if samples_per_segment < 2 {
        return Err(Error::Domain("path_length needs at least 2 samples per segment".into()));
    }
    let eval = MetricEvaluator::new(params)?;
    let (nodes, weights) = gauss_jacobi_unit(samples_per_segment, 0.0, 0.0)?;
    eval.polyline_length(path.points(), &nodes, &weights)
}

/// Result of the geodesic search: an upper approximation of the distance,
/// the optimized polyline (absent for coincident endpoints), whether the
/// final refinement level settled within the sweep budget, and the number of
/// coordinate-descent sweeps spent.
#[derive(Debug, Clone)]
pub struct Geodesic {
    pub length: f64,
    pub path: Option<PathPolyline>,
    pub converged: bool,
    pub sweeps_used: usize,
}

/// Chebyshev proxy for `rho` on `[0, t_cap]`, built once per geodesic call.
/// The exact density costs a long coefficient sum per point; the optimizer
/// only needs ~1e-12 fidelity, and the final reported length is re-measured
/// against the exact density.
struct ChebRho {
    t_cap: f64,
    coeffs: Vec<f64>,
}

impl ChebRho {
    const POINTS: usize = 129;

    fn build(eval: &MetricEvaluator, t_cap: f64) -> Result<Self> {
        let m = Self::POINTS - 1;
        let mut f = vec![0.0; Self::POINTS];
        for (j, slot) in f.iter_mut().enumerate() {
            let x = (PI * j as f64 / m as f64).cos();
            let t = (t_cap * 0.5 * (x + 1.0)).clamp(0.0, t_cap);
            *slot = eval.rho_t(t)?;
        }
        let mut coeffs = vec![0.0; Self::POINTS];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.5 * (f[0] + f[m] * (PI * k as f64).cos());
            for (j, &fj) in f.iter().enumerate().take(m).skip(1) {
                s += fj * (PI * (j * k) as f64 / m as f64).cos();
            }
            *c = 2.0 * s / m as f64;
        }
        coeffs[0] *= 0.5;
        coeffs[m] *= 0.5;
        let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let keep = coeffs.iter().rposition(|c| c.abs() > 1e-13 * scale).unwrap_or(0) + 1;
        coeffs.truncate(keep);
        Ok(Self { t_cap, coeffs })
    }

    fn eval(&self, t: f64) -> f64 {
        let x = 2.0 * t / self.t_cap - 1.0;
        let (mut s0, mut s1) = (0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            let s2 = s1;
            s1 = s0;
            s0 = 2.0 * x * s1 - s2 + c;
        }
        s0 - x * s1
    }
}

struct GeoWorkspace {
    cheb: ChebRho,
    radius_cap: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GeoWorkspace {
    fn new(eval: &MetricEvaluator, max_radius: f64) -> Result<Self> {
        let radius_cap = (max_radius + 0.03).min(0.9923).max(max_radius);
        let cheb = ChebRho::build(eval, radius_cap * radius_cap)?;
        let (nodes, weights) = gauss_jacobi_unit(6, 0.0, 0.0)?;
        Ok(Self { cheb, radius_cap, nodes, weights })
    }

    fn segment_length(&self, a: Complex64, b: Complex64) -> f64 {
        let d = b - a;
        let len = d.norm();
        if len == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for (&t, &u) in self.nodes.iter().zip(&self.weights) {
            acc += u * self.cheb.eval((a + d * t).norm_sqr());
        }
        acc * len
    }

    fn polyline_length(&self, points: &[Complex64]) -> f64 {
        points.windows(2).map(|p| self.segment_length(p[0], p[1])).sum()
    }

    fn clamp(&self, v: Complex64) -> Complex64 {
        let n = v.norm();
        if n > self.radius_cap {
            v * (self.radius_cap / n)
        } else {
            v
        }
    }

    /// One damped-Newton update of a single interior vertex against its two
    /// neighbors. Only accepts moves that decrease the local objective.
    fn update_vertex(&self, prev: Complex64, v: Complex64, next: Complex64) -> Complex64 {
        let local = |p: Complex64| self.segment_length(prev, p) + self.segment_length(p, next);
        let f0 = local(v);
        let h = 1e-6;
        let ex = Complex64::new(h, 0.0);
        let ey = Complex64::new(0.0, h);
        let gx = (local(v + ex) - local(v - ex)) / (2.0 * h);
        let gy = (local(v + ey) - local(v - ey)) / (2.0 * h);
        let gnorm = gx.hypot(gy);
        if gnorm < 1e-12 {
            return v;
        }
        let hh = 5e-4;
        let hx = Complex64::new(hh, 0.0);
        let hy = Complex64::new(0.0, hh);
        let fxx = (local(v + hx) + local(v - hx) - 2.0 * f0) / (hh * hh);
        let fyy = (local(v + hy) + local(v - hy) - 2.0 * f0) / (hh * hh);
        let fxy = (local(v + hx + hy) - local(v + hx - hy) - local(v - hx + hy)
            + local(v - hx - hy))
            / (4.0 * hh * hh);
        let det = fxx * fyy - fxy * fxy;
        let mut step = if fxx > 0.0 && det > 0.0 {
            Complex64::new(-(fyy * gx - fxy * gy) / det, -(fxx * gy - fxy * gx) / det)
        } else {
            Complex64::new(-gx, -gy) * (0.02 / gnorm)
        };
        let cap = 0.1;
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        for _ in 0..5 {
            let cand = self.clamp(v + step);
            if local(cand) < f0 {
                return cand;
            }
            step *= 0.5;
        }
        v
    }

    fn sweep(&self, points: &mut [Complex64]) {
        for i in 1..points.len() - 1 {
            points[i] = self.update_vertex(points[i - 1], points[i], points[i + 1]);
        }
    }
}

fn refine_midpoints(points: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(points.len() * 2 - 1);
    for pair in points.windows(2) {
        out.push(pair[0]);
        out.push((pair[0] + pair[1]) * 0.5);
    }
    out.push(*points.last().expect("non-empty path"));
    out
}

fn dedupe_consecutive(points: Vec<Complex64>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}

/// Multigrid coordinate descent from the straight chord; then the settled
/// polyline is re-measured with the exact density at two resolutions and
/// Richardson-extrapolated (vertex error is O(1/segments^2)).
fn optimize_between(
    eval: &MetricEvaluator,
    z: Complex64,
    w: Complex64,
    budget: usize,
) -> Result<Geodesic> {
    let ws = GeoWorkspace::new(eval, z.norm().max(w.norm()))?;
    let mut points = vec![z, w];
    let mut sweeps_used = 0usize;
    let mut converged = false;
    for &segments in &[2usize, 4, 8, 16, 32, 64] {
        while points.len() - 1 < segments {
            points = refine_midpoints(&points);
        }
        let cap = if segments <= 8 { 40 } else { 16 };
        let mut prev = ws.polyline_length(&points);
        let mut settled = false;
        for _ in 0..cap {
            if sweeps_used >= budget {
                break;
            }
            ws.sweep(&mut points);
            sweeps_used += 1;
            let len = ws.polyline_length(&points);
            if (prev - len).abs() <= 1e-8 * len.max(1e-12) {
                settled = true;
                break;
            }
            prev = len;
        }
        if segments == 64 {
            converged = settled;
        }
    }
    let (nodes, weights) = gauss_jacobi_unit(16, 0.0, 0.0)?;
    let fine = eval.polyline_length(&points, &nodes, &weights)?;
    let coarse_points: Vec<Complex64> = points.iter().copied().step_by(2).collect();
    let coarse = eval.polyline_length(&coarse_points, &nodes, &weights)?;
    let length = fine + (fine - coarse) / 3.0;
    let path = PathPolyline::new(dedupe_consecutive(points))?;
    Ok(Geodesic { length, path: Some(path), converged, sweeps_used })
}

fn canonical_pair(z: Complex64, w: Complex64) -> (Complex64, Complex64) {
    if (w.re, w.im) < (z.re, z.im) {
        (w, z)
    } else {
        (z, w)
    }
}

/// Upper approximation of the geodesic distance. Endpoints are ordered
/// canonically first, so the result is exactly symmetric. Same-ray pairs use
/// the exact radial integral; everything else goes through the polyline
/// optimizer (opposite-ray pairs also compare against the route through the
/// origin).
pub fn geodesic_distance(
    params: &Params,
    z: Complex64,
    w: Complex64,
    budget: usize,
) -> Result<Geodesic> {
    if !(z.norm() < 1.0) || !(w.norm() < 1.0) {
        return Err(Error::Domain("geodesic endpoints must lie inside the disk".into()));
    }
    let eval = MetricEvaluator::new(params)?;
    let (z, w) = canonical_pair(z, w);
    if z == w {
        return Ok(Geodesic { length: 0.0, path: None, converged: true, sweeps_used: 0 });
    }
    let cross = z.re * w.im - z.im * w.re;
    let dot = z.re * w.re + z.im * w.im;
    let scale = z.norm() * w.norm();
    if cross.abs() <= 1e-14 * scale || scale == 0.0 {
        if dot >= 0.0 || scale == 0.0 {
            // Same ray: the radial segment is the exact geodesic.
            let length =
                (eval.radial_distance(z.norm())? - eval.radial_distance(w.norm())?).abs();
            return Ok(Geodesic {
                length,
                path: Some(PathPolyline::new(vec![z, w])?),
                converged: true,
                sweeps_used: 0,
            });
        }
        // Opposite rays: the diameter through the origin competes with the
        // optimizer's best curve.
        let through = eval.radial_distance(z.norm())? + eval.radial_distance(w.norm())?;
        let general = optimize_between(&eval, z, w, budget)?;
        if through < general.length {
            return Ok(Geodesic {
                length: through,
                path: Some(PathPolyline::new(vec![z, Complex64::new(0.0, 0.0), w])?),
                converged: true,
                sweeps_used: general.sweeps_used,
            });
        }
        return Ok(general);
    }
    optimize_between(&eval, z, w, budget)
}

/// The normalized kernel section `phi_xi(z) = K(z conj(xi)) / sqrt(K(|xi|^2))`.
#[derive(Debug, Clone)]
pub struct CoherentState {
    params: Params,
    center: Complex64,
}

impl CoherentState {
    pub fn new(params: &Params, center: Complex64) -> Result<Self> {
        if !params.is_reduced() {
            return Err(Error::Domain("coherent states require reduced parameters".into()));
        }
        if !(center.norm() < 1.0) {
            return Err(Error::Domain("coherent state center must lie inside the disk".into()));
        }
        Ok(Self { params: *params, center })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let k_center =
            kernel::kernel_eval(&self.params, Complex64::new(self.center.norm_sqr(), 0.0))?;
        let k = kernel::kernel_eval(&self.params, z * self.center.conj())?;
        Ok(k / k_center.re.sqrt())
    }

    /// The rank-one projection `P f(z) = f(center) K(z conj(center)) / K(|center|^2)`
    /// of a function holomorphic on the closed disk, given its center value.
    pub fn project_value(&self, f_at_center: Complex64, z: Complex64) -> Result<Complex64> {
        let k_center =
            kernel::kernel_eval(&self.params, Complex64::new(self.center.norm_sqr(), 0.0))?;
        let k = kernel::kernel_eval(&self.params, z * self.center.conj())?;
        Ok(f_at_center * k / k_center.re)
    }
}

/// Both sides of the tangent-projection identity, plus the intermediate
/// squared norms for diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct ProjectionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub a_norm_sq: f64,
    pub d_norm_sq: f64,
    pub cross: f64,
    /// Set when `|gamma| > 0.95`, where the quadrature loses headroom.
    pub accuracy_flagged: bool,
}

/// Compares the L^2 norm of the normal component of `d/dt phi_gamma(t)`
/// (via the Pythagorean reduction `|A|^2 + |D|^2 - 2<A, D>`) against
/// `|gamma'| rho(gamma)`. The three scalar integrals reduce to radial sums
/// of the squared-coefficient series against the rule's weights.
pub fn projection_norm_identity_check(
    params: &Params,
    gamma_point: Complex64,
    gamma_velocity: Complex64,
    rule: &QuadratureRule,
) -> Result<ProjectionCheck> {
    if !params.is_reduced() {
        return Err(Error::Domain("projection check requires reduced parameters".into()));
    }
    if gamma_velocity.norm() == 0.0 {
        return Err(Error::Domain("gamma_velocity must be nonzero".into()));
    }
    let r = gamma_point.norm();
    if !(r <= 0.99) {
        return Err(Error::Domain(format!("projection check supports |gamma| <= 0.99, got {r}")));
    }
    let series = KernelSeries::new(params)?;
    let big_t = gamma_point.norm_sqr();
    let (k, k1, _) = series.derivatives(big_t)?;
    let vsq = gamma_velocity.norm_sqr();
    let (mut a2, mut d2, mut cross) = (0.0f64, 0.0f64, 0.0f64);
    for (&t, &u) in rule.radial_nodes().iter().zip(rule.radial_weights()) {
        let (phi, psi, phi1) = series.sq_weighted(t * big_t)?;
        a2 += u * t * phi1;
        d2 += u * phi;
        cross += u * t * psi;
    }
    a2 *= vsq / k;
    d2 *= vsq * big_t * k1 * k1 / (k * k * k);
    cross *= vsq * big_t * k1 / (k * k);
    let lhs = (a2 + d2 - 2.0 * cross).max(0.0).sqrt();
    let rhs = gamma_velocity.norm() * rho(params, gamma_point)?;
    Ok(ProjectionCheck { lhs, rhs, a_norm_sq: a2, d_norm_sq: d2, cross, accuracy_flagged: r > 0.95 })
}

/// Closed hypergeometric form of the squared norm of the kernel-derivative
/// component: `|gamma'|^2 / K(T) * (alpha+beta+2)/(beta+1) *
/// 3F2(2, 2, alpha+beta+3; 1, beta+2; T)` at `T = |gamma|^2`.
pub fn tangent_norm_sq_closed(
    params: &Params,
    gamma_point: Complex64,
    gamma_velocity: Complex64,
) -> Result<f64> {
    if !params.is_reduced() {
        return Err(Error::Domain("tangent norm requires reduced parameters".into()));
    }
    let t = gamma_point.norm_sqr();
    if !(t < 1.0) {
        return Err(Error::Domain("gamma must lie inside the disk".into()));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let k = kernel::kernel_eval(params, Complex64::new(t, 0.0))?.re;
    let tail = pfq_real(&[2.0, 2.0, alpha + beta + 3.0], &[1.0, beta + 2.0], t)?;
    Ok(gamma_velocity.norm_sqr() / k * ((alpha + beta + 2.0) / (beta + 1.0)) * tail)
}

/// Outcome of one Lipschitz comparison `|Bf(z) - Bf(w)| <= 2 |f|_BMO d(z, w)`.
#[derive(Debug, Clone, Copy)]
pub struct LipschitzCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; the contract is `margin >= -tolerance`.
    pub margin: f64,
    pub distance: f64,
    pub bmo: f64,
    /// Pathwise bound `2 max MO along the path * path length`, valid even
    /// when the grid BMO norm underestimates the true sup.
    pub certificate: f64,
}

pub fn lipschitz_check(
    ctx: &BerezinContext,
    params: &Params,
    f: &TestFunction,
    z: Complex64,
    w: Complex64,
) -> Result<LipschitzCheck> {
    let bmo = bmo_norm(ctx, f, &default_bmo_grid())?;
    lipschitz_check_with_bmo(ctx, params, f, z, w, bmo)
}

/// As [`lipschitz_check`] with a precomputed BMO norm (the grid sup is by
/// far the dominant cost when sweeping many point pairs).
pub fn lipschitz_check_with_bmo(
    ctx: &BerezinContext,
    params: &Params,
    f: &TestFunction,
    z: Complex64,
    w: Complex64,
    bmo: f64,
) -> Result<LipschitzCheck> {
    check_same_weight(ctx, params)?;
    let bz = berezin_apply(ctx, f, z)?;
    let bw = berezin_apply(ctx, f, w)?;
    let lhs = (bz - bw).norm();
    let geo = geodesic_distance(params, z, w, DEFAULT_GEODESIC_BUDGET)?;
    let rhs = 2.0 * bmo * geo.length;
    let certificate = match &geo.path {
        None => 0.0,
        Some(path) => {
            let mut mo_max = 0.0f64;
            for pair in path.points().windows(2) {
                mo_max = mo_max.max(mean_oscillation(ctx, f, pair[0])?);
                mo_max = mo_max.max(mean_oscillation(ctx, f, (pair[0] + pair[1]) * 0.5)?);
            }
            mo_max = mo_max.max(mean_oscillation(ctx, f, *path.points().last().unwrap())?);
            2.0 * mo_max * geo.length
        }
    };
    Ok(LipschitzCheck { lhs, rhs, margin: rhs - lhs, distance: geo.length, bmo, certificate })
}

/// One sampled point of the derivative bound along a path: global parameter
/// `t`, `|d/ds Bf|` on the left, `2 MO(f) |gamma'| rho` on the right.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeBoundSample {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Samples `|d/ds Bf(gamma(s))| <= 2 MO(f)(gamma) |gamma'| rho(gamma)` at
/// three interior fractions of every segment. The derivative uses central
/// differences with one Richardson refinement (h = 1e-4 in the segment
/// parameter), enough for ~6 digits given the transform's own accuracy.
pub fn derivative_bound_check(
    ctx: &BerezinContext,
    params: &Params,
    f: &TestFunction,
    path: &PathPolyline,
) -> Result<Vec<DerivativeBoundSample>> {
    check_same_weight(ctx, params)?;
    let segments = path.segments() as f64;
    let mut out = Vec::with_capacity(path.segments() * 3);
    for (i, pair) in path.points().windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        let d = b - a;
        for &frac in &[0.2, 0.5, 0.8] {
            let value = |s: f64| berezin_apply(ctx, f, a + d * s);
            let h = 1e-4;
            let coarse = (value(frac + h)? - value(frac - h)?) / (2.0 * h);
            let fine = (value(frac + h / 2.0)? - value(frac - h / 2.0)?) / h;
            let lhs = ((fine * 4.0 - coarse) / 3.0).norm();
            let point = a + d * frac;
            let rhs =
                2.0 * mean_oscillation(ctx, f, point)? * d.norm() * rho(params, point)?;
            out.push(DerivativeBoundSample { t: (i as f64 + frac) / segments, lhs, rhs });
        }
    }
    Ok(out)
}

fn check_same_weight(ctx: &BerezinContext, params: &Params) -> Result<()> {
    if (ctx.params().alpha() - params.alpha()).abs() > 1e-12
        || (ctx.params().beta() - params.beta()).abs() > 1e-12
    {
        return Err(Error::Domain(
            "transform context and metric parameters must carry the same weight".into(),
        ));
    }
    Ok(())
}
