//! `lipschitz`: the transform is distance-Lipschitz with the oscillation
//! norm as the constant.
//!
//! Each row checks `|Bf(z) - Bf(w)| <= 2 ||f|| d(z, w)` where `||f||` is
//! the grid oscillation norm and `d` the geodesic upper bound. Degenerate
//! rows pin the constant symbol (zero oscillation) and coincident points
//! (zero distance); one row runs at the fixed reference weight
//! `(alpha, beta) = (0, -0.5)`, the rest at the configured weight. The
//! `certificate` column is the pathwise bound `2 max MO * length` measured
//! along the optimized path itself.

use bergman_core::berezin::{bmo_norm, default_bmo_grid, BerezinContext};
use bergman_core::diskquad::TestFunction;
use bergman_core::metric::lipschitz_check_with_bmo;
use bergman_core::{Complex64, Params, Result};

use crate::commands::{c64, tol_floor};
use crate::report::{row, Report};
use crate::CommonArgs;

const COLUMNS: &[&str] = &[
    "f", "alpha", "beta", "z_re", "z_im", "w_re", "w_im", "lhs", "rhs", "margin", "distance",
    "bmo", "certificate", "pass",
];

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut report = Report::new("lipschitz", COLUMNS);
    let floor = tol_floor(args, 1e-8);

    let params = Params::new(args.alpha, args.beta)?.reduced();
    let ctx = BerezinContext::new(&params, args.radial_order, args.angular_count, 1e-10)?;
    let grid = default_bmo_grid();

    // Constant symbol: both sides vanish (the oscillation norm only up to
    // the quadrature's own resolution).
    let constant = TestFunction::Monomial(0, 0);
    let bmo_constant = bmo_norm(&ctx, &constant, &grid)?;
    push_check(
        &mut report,
        &ctx,
        &params,
        "1",
        &constant,
        c64(0.2, 0.0),
        c64(0.0, 0.5),
        bmo_constant,
        floor,
        true,
    )?;

    let symbol = TestFunction::Monomial(1, 1);
    let bmo_symbol = bmo_norm(&ctx, &symbol, &grid)?;

    // Coincident points: zero distance, zero difference.
    push_check(
        &mut report,
        &ctx,
        &params,
        "|z|^2",
        &symbol,
        c64(0.3, 0.2),
        c64(0.3, 0.2),
        bmo_symbol,
        floor,
        false,
    )?;

    // Reference weight row.
    let ref_params = Params::new(0.0, -0.5)?;
    let ref_ctx = BerezinContext::new(&ref_params, args.radial_order, args.angular_count, 1e-10)?;
    let bmo_ref = bmo_norm(&ref_ctx, &symbol, &grid)?;
    push_check(
        &mut report,
        &ref_ctx,
        &ref_params,
        "|z|^2",
        &symbol,
        c64(0.0, 0.0),
        c64(0.5, 0.0),
        bmo_ref,
        floor,
        false,
    )?;

    // Generic rows at the configured weight.
    let harmonic = TestFunction::HarmonicReZn(1);
    let bmo_harmonic = bmo_norm(&ctx, &harmonic, &grid)?;
    let pairs = [(c64(0.2, 0.1), c64(-0.3, 0.4)), (c64(0.5, 0.0), c64(0.0, 0.3))];
    for (label, f, bmo) in
        [("|z|^2", &symbol, bmo_symbol), ("Re z", &harmonic, bmo_harmonic)]
    {
        for (z, w) in pairs {
            push_check(&mut report, &ctx, &params, label, f, z, w, bmo, floor, false)?;
        }
    }

    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn push_check(
    report: &mut Report,
    ctx: &BerezinContext,
    params: &Params,
    label: &'static str,
    f: &TestFunction,
    z: Complex64,
    w: Complex64,
    bmo: f64,
    floor: f64,
    expect_zero_lhs: bool,
) -> Result<()> {
    let check = lipschitz_check_with_bmo(ctx, params, f, z, w, bmo)?;
    let mut pass = report.check(check.margin >= -floor, || {
        format!(
            "{label} at ({z}, {w}): margin {:.3e} below -{floor:.3e} \
             (lhs {:.6e}, rhs {:.6e})",
            check.margin, check.lhs, check.rhs
        )
    });
    pass &= report.check(check.certificate >= -floor, || {
        format!("{label} at ({z}, {w}): negative pathwise certificate {:.3e}", check.certificate)
    });
    if expect_zero_lhs {
        pass &= report.check(check.lhs.abs() <= floor, || {
            format!("{label}: transform of a constant moved by {:.3e}", check.lhs)
        });
    }
    report.push(row![
        label,
        params.alpha(),
        params.beta(),
        z.re,
        z.im,
        w.re,
        w.im,
        check.lhs,
        check.rhs,
        check.margin,
        check.distance,
        check.bmo,
        check.certificate,
        pass
    ]);
    Ok(())
}
