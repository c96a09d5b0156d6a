//! `berezin-eval`: the transform on reference functions with known values.
//!
//! Three reference families run at a fixed point set: the constant `1`
//! (reproducing identity, so the transform returns `1` exactly up to
//! quadrature), the logarithm `log |z|^2` at `alpha = 0` (closed-form fixed
//! point `-(1 - t) / (beta + 1 - beta t)` with `t = |z|^2`), and a harmonic
//! polynomial (harmonic functions are fixed points). The `beta` entering
//! the logarithm's closed form is the reduced one, because the transform
//! itself only depends on it.

use bergman_core::berezin::{berezin_apply, BerezinContext};
use bergman_core::diskquad::TestFunction;
use bergman_core::{Complex64, Params, Result};

use crate::commands::{c64, tol_floor};
use crate::report::{row, Report};
use crate::CommonArgs;

const COLUMNS: &[&str] = &[
    "f", "alpha", "beta", "z_re", "z_im", "value_re", "value_im", "expected_re", "expected_im",
    "abs_error", "tol", "pass",
];

fn points() -> [Complex64; 5] {
    [c64(0.0, 0.0), c64(0.4, 0.0), c64(0.3, 0.3), c64(0.0, 0.7), c64(-0.5, 0.0)]
}

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut report = Report::new("berezin-eval", COLUMNS);

    let params = Params::new(args.alpha, args.beta)?;
    let ctx = BerezinContext::new(&params, args.radial_order, args.angular_count, 1e-10)?;

    // The reproducing identity: the transform of 1 is 1 everywhere.
    family(&mut report, &ctx, "1", &TestFunction::Monomial(0, 0), tol_floor(args, 1e-10), |_| {
        c64(1.0, 0.0)
    })?;

    // The logarithmic symbol needs alpha = 0 for its closed-form value.
    let log_params = Params::new(0.0, args.beta)?;
    let log_ctx = BerezinContext::new(&log_params, args.radial_order, args.angular_count, 1e-10)?;
    let beta0 = log_ctx.params().beta();
    family(
        &mut report,
        &log_ctx,
        "log|z|^2",
        &TestFunction::LogModSq,
        tol_floor(args, 1e-8),
        move |z| {
            let t = z.norm_sqr();
            c64(-(1.0 - t) / (beta0 + 1.0 - beta0 * t), 0.0)
        },
    )?;

    // Harmonic functions are fixed points of the transform.
    family(
        &mut report,
        &ctx,
        "Re z^2",
        &TestFunction::HarmonicReZn(2),
        tol_floor(args, 1e-8),
        |z| c64((z * z).re, 0.0),
    )?;

    Ok(report)
}

fn family(
    report: &mut Report,
    ctx: &BerezinContext,
    label: &'static str,
    f: &TestFunction,
    tol: f64,
    expected: impl Fn(Complex64) -> Complex64,
) -> Result<()> {
    let alpha = ctx.params().alpha();
    let beta0 = ctx.params().beta();
    for z in points() {
        let value = berezin_apply(ctx, f, z)?;
        let want = expected(z);
        let abs_error = (value - want).norm();
        let pass = report.check(abs_error <= tol, || {
            format!("{label} at z = {z}: |value - expected| = {abs_error:.3e} exceeds {tol:.3e}")
        });
        report.push(row![
            label, alpha, beta0, z.re, z.im, value.re, value.im, want.re, want.im, abs_error,
            tol, pass
        ]);
    }
    Ok(())
}
