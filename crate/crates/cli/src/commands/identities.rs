//! `verify-lemma1`: grid checks of the radial kernel-profile identities.
//!
//! For each parameter case the suite evaluates the profile `G` on a uniform
//! grid of `t = |xi|^2` and reports the maximum absolute residual of each
//! identity: the first-order ODE, the two parameter-shift recurrences, the
//! two-sided order bounds, and the endpoint values. Three cases run: the
//! configured weight, `alpha = 0` (where the profile difference
//! `G_(alpha,beta) - G_(alpha,beta+1)` collapses to the closed form
//! `t / ((beta+1)(beta+2))`), and `beta = 0` (where the ODE degenerates to
//! `0 = 0`).

use bergman_core::kernel::{g_derivative, g_eval_real};
use bergman_core::specialfn::beta;
use bergman_core::{Params, Result};

use crate::report::{row, Report};
use crate::CommonArgs;

const COLUMNS: &[&str] =
    &["case", "alpha", "beta", "identity", "grid_points", "max_abs_residual", "tol", "pass"];

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut report = Report::new("verify-lemma1", COLUMNS);
    let cases = [
        ("config", args.alpha, args.beta),
        ("alpha-zero", 0.0, args.beta),
        ("beta-zero", args.alpha, 0.0),
    ];
    for (case, alpha, beta_w) in cases {
        grid_case(&mut report, case, alpha, beta_w, args)?;
    }
    closed_form_case(&mut report, args)?;
    Ok(report)
}

/// Interior grid in `t = |xi|^2`; the endpoint `t = 1` is checked
/// separately against the closed endpoint value.
fn grid() -> Vec<f64> {
    (0..20).map(|k| 0.05 * k as f64).collect()
}

fn grid_case(
    report: &mut Report,
    case: &'static str,
    alpha: f64,
    beta_w: f64,
    args: &CommonArgs,
) -> Result<()> {
    let params = Params::new(alpha, beta_w)?;
    let up_alpha = Params::new(alpha + 1.0, beta_w)?;
    let up_beta = Params::new(alpha, beta_w + 1.0)?;
    let ts = grid();

    let mut derivative = 0.0f64;
    let mut alpha_step = 0.0f64;
    let mut beta_shift = 0.0f64;
    let mut order_chain = 0.0f64;
    for &t in &ts {
        let g = g_eval_real(&params, t)?;
        let g_up = g_eval_real(&up_beta, t)?;
        let low1 = (1.0 - t).powf(alpha + 1.0);
        let low2 = (1.0 - t).powf(alpha + 2.0);

        // t G' = beta ((1-t)^(alpha+1) - G)
        derivative = derivative.max((t * g_derivative(&params, t)? - beta_w * (low1 - g)).abs());
        // (alpha+beta+2) G_(alpha+1,beta) = (alpha+2) G + beta (1-t)^(alpha+2)
        alpha_step = alpha_step.max(
            (g_eval_real(&up_alpha, t)?
                - ((alpha + 2.0) * g + beta_w * low2) / (alpha + beta_w + 2.0))
                .abs(),
        );
        // t G_(alpha,beta+1) = (beta+1)/(alpha+beta+2) (G - (1-t)^(alpha+2))
        beta_shift = beta_shift
            .max((t * g_up - (beta_w + 1.0) / (alpha + beta_w + 2.0) * (g - low2)).abs());
        // (1-t)^(alpha+2) <= (1-t)^(alpha+1) <= G_(alpha,beta+1) <= G_(alpha,beta)
        order_chain = order_chain
            .max(low2 - low1)
            .max(low1 - g_up)
            .max(g_up - g)
            .max(0.0);
    }
    let endpoints = (g_eval_real(&params, 0.0)? - 1.0)
        .abs()
        .max((g_eval_real(&params, 1.0)? - (alpha + 1.0) * beta(alpha + 1.0, beta_w + 1.0)?).abs());

    for (identity, residual) in [
        ("derivative", derivative),
        ("alpha-step", alpha_step),
        ("beta-shift", beta_shift),
        ("order-chain", order_chain),
        ("endpoints", endpoints),
    ] {
        let pass = report.check(residual <= args.tol, || {
            format!("{case}/{identity}: residual {residual:.3e} exceeds tol {:.3e}", args.tol)
        });
        report.push(row![
            case,
            alpha,
            beta_w,
            identity,
            ts.len() as i128,
            residual,
            args.tol,
            pass
        ]);
    }
    Ok(())
}

/// At `alpha = 0` both profiles are linear in `t` and their difference is
/// exactly `t / ((beta+1)(beta+2))`.
fn closed_form_case(report: &mut Report, args: &CommonArgs) -> Result<()> {
    let beta_w = args.beta;
    let base = Params::new(0.0, beta_w)?;
    let stepped = Params::new(0.0, beta_w + 1.0)?;
    let ts = grid();
    let mut residual = 0.0f64;
    for &t in &ts {
        let h = g_eval_real(&base, t)? - g_eval_real(&stepped, t)?;
        residual = residual.max((h - t / ((beta_w + 1.0) * (beta_w + 2.0))).abs());
    }
    let pass = report.check(residual <= args.tol, || {
        format!("alpha-zero/h-closed-form: residual {residual:.3e} exceeds tol {:.3e}", args.tol)
    });
    report.push(row![
        "alpha-zero",
        0.0f64,
        beta_w,
        "h-closed-form",
        ts.len() as i128,
        residual,
        args.tol,
        pass
    ]);
    Ok(())
}
