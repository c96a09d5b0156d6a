//! One module per subcommand; each exposes `run(&CommonArgs) -> Result<Report>`.

pub mod all;
pub mod distance;
pub mod growth;
pub mod identities;
pub mod mapping;
pub mod smoothness;
pub mod transform;

use bergman_core::Complex64;

use crate::CommonArgs;

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The row tolerance: the user override, but never tighter than what the
/// method behind the check can certify.
pub(crate) fn tol_floor(args: &CommonArgs, floor: f64) -> f64 {
    args.tol.max(floor)
}
