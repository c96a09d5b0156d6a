//! `asymptotics`: boundary growth of the squared-kernel integral against
//! its closed hypergeometric envelope.
//!
//! For the configured weight the suite fixes `c = beta + 1` (after
//! reduction) and walks `d` through `alpha + 1`, `alpha`, `alpha - 1` — one
//! value per growth class: bounded, logarithmic, and a power of
//! `1/(1 - |w|^2)`. Each row checks the two-sided envelope
//! `J / G(1) <= I <= J`; the `w = 0` row additionally pins the envelope to
//! its Beta-function value. The fitted growth exponent over the outermost
//! radii is reported for inspection, not asserted: its approach to the
//! predicted class is slow and weight-dependent at these radii.

use bergman_core::bounds::{
    classify_asymptotic, growth_exponent, icd_numeric, jcd_closed, AsymptoticClass,
};
use bergman_core::diskquad::build_rule;
use bergman_core::specialfn::beta;
use bergman_core::{Params, Result};

use crate::commands::{c64, tol_floor};
use crate::report::{row, Report, Value};
use crate::CommonArgs;

const COLUMNS: &[&str] = &[
    "alpha", "beta", "c", "d", "predicted", "predicted_exponent", "abs_w", "icd", "jcd", "ratio",
    "sandwich_lo", "fit_exponent", "pass",
];

const RADII: [f64; 6] = [0.0, 0.3, 0.6, 0.9, 0.95, 0.99];
/// The fit uses the outermost radii, where the class asymptotics dominate.
const FIT_RADII: [f64; 3] = [0.9, 0.95, 0.99];

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut report = Report::new("asymptotics", COLUMNS);
    let params = Params::new(args.alpha, args.beta)?.reduced();
    let alpha = params.alpha();
    let beta0 = params.beta();
    let c = beta0 + 1.0;

    // Boundary radii need a deep radial rule; `--radial-order` can only
    // deepen it further. A second, finer rule estimates the quadrature gap
    // so the sandwich slack stays honest near the boundary.
    let order = args.radial_order.max(240);
    let rule = build_rule(&params, order, 8)?;
    let rule_fine = build_rule(&params, order + 96, 8)?;

    // G(1) = (alpha+1) B(alpha+1, beta+1) gives the lower envelope factor.
    let sandwich_lo = 1.0 / ((alpha + 1.0) * beta(alpha + 1.0, beta0 + 1.0)?);
    let slack_base = tol_floor(args, 1e-9);

    for d in [alpha + 1.0, alpha, alpha - 1.0] {
        let (predicted, predicted_exponent) = match classify_asymptotic(alpha, d) {
            AsymptoticClass::Bounded => ("bounded", Value::Empty),
            AsymptoticClass::Logarithmic => ("logarithmic", Value::Empty),
            AsymptoticClass::Power(e) => ("power", Value::Real(e)),
        };

        let mut values = Vec::with_capacity(RADII.len());
        let mut gaps = Vec::with_capacity(RADII.len());
        for r in RADII {
            let w = c64(r, 0.0);
            let coarse = icd_numeric(c, d, w, &params, &rule)?;
            let fine = icd_numeric(c, d, w, &params, &rule_fine)?;
            values.push(fine);
            gaps.push((fine - coarse).abs());
        }
        let fit_values: Vec<f64> = RADII
            .iter()
            .zip(&values)
            .filter(|(r, _)| FIT_RADII.contains(r))
            .map(|(_, v)| *v)
            .collect();
        let fit = growth_exponent(&FIT_RADII, &fit_values)?;

        for ((r, icd), gap) in RADII.iter().zip(&values).zip(&gaps) {
            let w = c64(*r, 0.0);
            let jcd = jcd_closed(c, d, w, &params)?;
            let ratio = icd / jcd;
            let slack = slack_base.max(8.0 * gap / jcd);
            let mut pass = report.check(
                ratio >= sandwich_lo - slack && ratio <= 1.0 + slack,
                || {
                    format!(
                        "d = {d}, |w| = {r}: I/J = {ratio:.12} outside \
                         [{sandwich_lo:.12}, 1] with slack {slack:.3e}"
                    )
                },
            );
            if *r == 0.0 {
                let reference = beta(c + 1.0, alpha + d + 3.0)?;
                pass &= report.check(
                    (jcd - reference).abs() <= slack_base * reference.max(1.0),
                    || {
                        format!(
                            "d = {d}: J(0) = {jcd:.15e} does not match \
                             B(c+1, alpha+d+3) = {reference:.15e}"
                        )
                    },
                );
            }
            report.push(row![
                alpha,
                beta0,
                c,
                d,
                predicted,
                predicted_exponent.clone(),
                *r,
                *icd,
                jcd,
                ratio,
                sandwich_lo,
                fit,
                pass
            ]);
        }
    }
    Ok(report)
}
