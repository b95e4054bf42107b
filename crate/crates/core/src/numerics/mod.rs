//! Numerical kernels shared by every other module: adaptive Gauss–Kronrod
//! quadrature for complex integrands, Gaussian-envelope truncation of
//! semi-infinite integrals, bisection, Richardson extrapolation, composite
//! Gauss–Legendre rules and interpolation on radial grids.
//!
//! Everything here is a pure function of its inputs.

mod extrapolate;
mod interp;
pub(crate) mod quadrature;
mod roots;

pub use extrapolate::{richardson_extrapolate, ExtrapolationSpec};
pub use interp::{trapezoid, CubicSpline};
pub use quadrature::{
    gauss_legendre, integrate_adaptive, integrate_adaptive_panels, integrate_gaussian_envelope,
    Integral, QuadratureSpec, OSCILLATION_BUDGET,
};
pub use roots::find_root_bisect;
