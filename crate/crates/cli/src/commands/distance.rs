//! `metric`: geodesic distances of the induced metric.
//!
//! Rows cover the degenerate pair (`d(z, z) = 0` exactly), the radial
//! closed form at `beta = 0` (where the density is a multiple of the
//! Poincaré density, so `d(0, r) = sqrt(alpha + 2) atanh(r)`), an exact
//! symmetry pair, and generic pairs at the configured weight. The
//! `certificate` column re-measures the optimized polyline with an
//! independent quadrature; as a path integral of the density it is a true
//! upper bound on the distance, up to that quadrature's own error.

use bergman_core::metric::{
    geodesic_distance, path_length, Geodesic, PathPolyline, DEFAULT_GEODESIC_BUDGET,
};
use bergman_core::{Complex64, Params, Result};

use crate::commands::{c64, tol_floor};
use crate::report::{row, Report, Value};
use crate::CommonArgs;

const COLUMNS: &[&str] = &[
    "case", "alpha", "beta", "z_re", "z_im", "w_re", "w_im", "distance", "certificate",
    "converged", "expected", "residual", "pass",
];

/// Samples per segment when re-measuring the optimized path.
const CERTIFICATE_SAMPLES: usize = 32;

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut report = Report::new("metric", COLUMNS);
    let params = Params::new(args.alpha, args.beta)?.reduced();

    // Coincident endpoints: exactly zero, no optimizer involved.
    {
        let z = c64(0.4, 0.2);
        let geo = geodesic_distance(&params, z, z, DEFAULT_GEODESIC_BUDGET)?;
        let pass = report.check(geo.length == 0.0, || {
            format!("fixed-point: d(z, z) = {} instead of 0", geo.length)
        });
        push_pair(
            &mut report,
            "fixed-point",
            &params,
            z,
            z,
            &geo,
            certificate(&params, &geo)?,
            Value::Real(0.0),
            Value::Real(geo.length),
            pass,
        );
    }

    // Radial pairs at beta = 0 against the scaled Poincaré closed form.
    let radial = Params::new(args.alpha, 0.0)?;
    let tol_radial = tol_floor(args, 1e-6);
    for r in [0.3, 0.6, 0.9] {
        let z = c64(0.0, 0.0);
        let w = c64(r, 0.0);
        let geo = geodesic_distance(&radial, z, w, DEFAULT_GEODESIC_BUDGET)?;
        let expected = (args.alpha + 2.0).sqrt() * r.atanh();
        let residual = (geo.length - expected).abs() / expected;
        let pass = report.check(residual <= tol_radial && geo.converged, || {
            format!(
                "radial-closed-form at r = {r}: distance {:.12} vs sqrt(alpha+2) atanh(r) = \
                 {expected:.12} (relative error {residual:.3e})",
                geo.length
            )
        });
        push_pair(
            &mut report,
            "radial-closed-form",
            &radial,
            z,
            w,
            &geo,
            certificate(&radial, &geo)?,
            Value::Real(expected),
            Value::Real(residual),
            pass,
        );
    }

    // Symmetry: both orientations of one skew pair.
    {
        let z = c64(0.3, 0.0);
        let w = Complex64::from_polar(0.5, std::f64::consts::FRAC_PI_4);
        let forward = geodesic_distance(&params, z, w, DEFAULT_GEODESIC_BUDGET)?;
        let reverse = geodesic_distance(&params, w, z, DEFAULT_GEODESIC_BUDGET)?;
        let residual = (forward.length - reverse.length).abs();
        let tol_sym = tol_floor(args, 1e-8);
        let pass = report.check(residual <= tol_sym, || {
            format!("symmetry: |d(z, w) - d(w, z)| = {residual:.3e} exceeds {tol_sym:.3e}")
        });
        for (geo, (from, to)) in [(&forward, (z, w)), (&reverse, (w, z))] {
            push_pair(
                &mut report,
                "symmetry",
                &params,
                from,
                to,
                geo,
                certificate(&params, geo)?,
                Value::Empty,
                Value::Real(residual),
                pass,
            );
        }
    }

    // Generic pairs at the configured weight. The optimizer's settle flag
    // is reported but not asserted here — on steep weights the densest
    // refinement level can still be shaving below its internal cap — and
    // the row instead checks what the descent guarantees: a positive
    // length no worse than the straight-chord initializer, re-measured
    // consistently by the independent certificate quadrature.
    for (z, w) in [(c64(0.2, 0.1), c64(-0.4, 0.3)), (c64(0.0, 0.5), c64(0.6, 0.0))] {
        let geo = geodesic_distance(&params, z, w, DEFAULT_GEODESIC_BUDGET)?;
        let chord = path_length(&params, &PathPolyline::new(vec![z, w])?, CERTIFICATE_SAMPLES)?;
        let cert = certificate(&params, &geo)?;
        let pass = report.check(
            geo.length > 0.0
                && geo.length <= chord * (1.0 + 1e-4)
                && (cert - geo.length).abs() <= 1e-3 * geo.length,
            || {
                format!(
                    "pair ({z}, {w}): length {:.12} vs chord {chord:.12}, \
                     certificate {cert:.12}",
                    geo.length
                )
            },
        );
        push_pair(&mut report, "pair", &params, z, w, &geo, cert, Value::Empty, Value::Empty, pass);
    }

    Ok(report)
}

fn certificate(params: &Params, geo: &Geodesic) -> Result<f64> {
    match &geo.path {
        None => Ok(0.0),
        Some(path) => path_length(params, path, CERTIFICATE_SAMPLES),
    }
}

#[allow(clippy::too_many_arguments)]
fn push_pair(
    report: &mut Report,
    case: &'static str,
    params: &Params,
    z: Complex64,
    w: Complex64,
    geo: &Geodesic,
    certificate: f64,
    expected: Value,
    residual: Value,
    pass: bool,
) {
    report.push(row![
        case,
        params.alpha(),
        params.beta(),
        z.re,
        z.im,
        w.re,
        w.im,
        geo.length,
        certificate,
        geo.converged,
        expected,
        residual,
        pass
    ]);
}
