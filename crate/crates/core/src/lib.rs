//! Numerical kit for a two-parameter family of weighted Bergman spaces on
//! the unit disk: the reproducing kernel and its hypergeometric factor, disk
//! quadrature adapted to the weight, the kernel-normalized averaging
//! transform with its adjoint and BMO-style seminorms, L^p boundedness
//! predicates with two-sided integral estimates, and the induced conformal
//! metric with geodesics and Lipschitz bounds.
//!
//! The weight is `|z|^(2 beta) (1 - |z|^2)^alpha` (normalized to a
//! probability measure) with `alpha, beta > -1`. Throughout, `beta` is
//! reduced to `beta0 + s` with `beta0 in (-1, 0]` and integer `s >= 0`; the
//! kernel for the original weight is an explicit prefactor times the reduced
//! one, and the reduced form is what the tables and quadratures consume.

// Validation guards are written `!(x > 0.0)` rather than `x <= 0.0` so that
// NaN fails them; the suggested rewrite would silently accept NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod berezin;
pub mod bounds;
pub mod diskquad;
pub mod error;
pub mod kernel;
pub mod metric;
pub mod specialfn;

pub use error::{Error, Result};
pub use kernel::{KernelSeries, Params};
pub use num_complex::Complex64;
