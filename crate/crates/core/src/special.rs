//! Interference functions of plane waves in two and three dimensions.
//!
//! The angular average of `exp(-i x cos θ)` gives the ordinary Bessel
//! function `J0` over the circle and the spherical Bessel function
//! `j0 = sin x / x` over the sphere. `j0` splits exactly into an incoming and
//! an outgoing wave; `J0` only does so asymptotically, with the correction
//! function [`script_h`] carrying the difference.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{find_root_bisect, integrate_adaptive, integrate_gaussian_envelope, QuadratureSpec};

/// Below this argument `J0` is summed from its power series.
pub const SERIES_CUTOFF: f64 = 12.0;

/// From this argument on, `𝓗` inside `J0` comes from its asymptotic series,
/// whose smallest term is then below `e^{-40}`.
const ASYMPTOTIC_H_CUTOFF: f64 = 20.0;

const SPHERICAL_SERIES_CUTOFF: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BesselMethod {
    Series,
    IntegralRepresentation,
    Asymptotic,
}

/// A `J0` value tagged with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEvaluation {
    pub argument: f64,
    pub value: Complex64,
    pub method: BesselMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

/// Ordinary Bessel function `J0(x)`.
///
/// Power series below [`SERIES_CUTOFF`]; above it the Hankel recombination
/// `J0 = Re[ sqrt(2/(πx)) e^{-i(x-π/4)} 𝓗(x) ]`. `J0` is even, so negative
/// arguments are folded.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_CUTOFF {
        j0_series(x)
    } else {
        let h = if x >= ASYMPTOTIC_H_CUTOFF {
            script_h_asymptotic(x)
        } else {
            script_h_fixed_rule(x)
        };
        let phase = Complex64::from_polar(1.0, -(x - FRAC_PI_4));
        (2.0 / (PI * x)).sqrt() * (phase * h).re
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    while term.abs() >= 1e-17 || m < 2.0 {
        term *= q / (m * m);
        sum += term;
        m += 1.0;
        if m > 200.0 {
            break;
        }
    }
    sum
}

/// Sommerfeld representation `(1/2π) ∫_{-π}^{π} exp(-i x cos φ) dφ`.
///
/// Independent of [`bessel_j0`]; used as its oracle.
pub fn bessel_j0_sommerfeld(x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let r = integrate_adaptive(
        |phi: f64| Complex64::from_polar(1.0, -x * phi.cos()),
        -PI,
        PI,
        spec,
    )?;
    Ok(r.value / (2.0 * PI))
}

/// Evaluates `J0(x)` through the requested route.
pub fn evaluate_j0(x: f64, method: BesselMethod, spec: &QuadratureSpec) -> Result<BesselEvaluation> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("J0 argument must be >= 0, got {x}")));
    }
    let value = match method {
        BesselMethod::Series => Complex64::new(bessel_j0(x), 0.0),
        BesselMethod::IntegralRepresentation => {
            // The imaginary part vanishes by symmetry of the integrand.
            Complex64::new(bessel_j0_sommerfeld(x, spec)?.re, 0.0)
        }
        BesselMethod::Asymptotic => Complex64::new(j0_asymptotic(x)?, 0.0),
    };
    Ok(BesselEvaluation {
        argument: x,
        value,
        method,
    })
}

/// Spherical Bessel function `j0(x) = sin x / x`.
pub fn spherical_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SPHERICAL_SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `(1/2) ∫_0^π sin θ exp(-i x cos θ) dθ`, the angular average over the sphere.
pub fn spherical_j0_integral(x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let r = integrate_adaptive(
        |theta: f64| Complex64::from_polar(theta.sin(), -x * theta.cos()),
        0.0,
        PI,
        spec,
    )?;
    Ok(r.value * 0.5)
}

/// Correction function
/// `𝓗(ξ) = (2/√π) ∫_0^∞ dτ exp(-τ²) / sqrt(1 - iτ²/(2ξ))`,
/// evaluated by Gaussian-envelope quadrature (center 0, width 1/√2) with the
/// principal square root.
pub fn script_h(xi: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain(format!("𝓗 needs a positive argument, got {xi}")));
    }
    let r = integrate_gaussian_envelope(
        |tau: f64| script_h_integrand(tau, xi),
        0.0,
        FRAC_1_SQRT_2,
        spec,
    )?;
    Ok(r.value)
}

#[inline]
fn script_h_integrand(tau: f64, xi: f64) -> Complex64 {
    let t2 = tau * tau;
    let radicand = Complex64::new(1.0, -t2 / (2.0 * xi));
    (-t2).exp() / radicand.sqrt() * (2.0 / PI.sqrt())
}

/// Short-time expansion of `𝓗`: `1 + i/(8ξ)`.
pub fn script_h_first_order(xi: f64) -> Complex64 {
    Complex64::new(1.0, 1.0 / (8.0 * xi))
}

/// Termwise integration of the binomial series of the square root:
/// `𝓗(ξ) ~ Σ_k [(1/2)_k]² / k! · (i/(2ξ))^k`, stopped at the first term
/// below 1e-17 or at the smallest term of the divergent tail.
fn script_h_asymptotic(xi: f64) -> Complex64 {
    let step = Complex64::new(0.0, 1.0 / (2.0 * xi));
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut k = 1.0;
    loop {
        let next = term * step * ((k - 0.5) * (k - 0.5) / k);
        if next.norm() >= term.norm() {
            break;
        }
        sum += next;
        term = next;
        if term.norm() < 1e-17 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Fixed composite Gauss–Legendre rule for `𝓗` at moderate arguments. The
/// integrand is analytic in a strip of half-width ~sqrt(ξ) around the real
/// axis, so 8 panels of 20 nodes on [0, 7.1] are at machine precision.
fn script_h_fixed_rule(xi: f64) -> Complex64 {
    use std::sync::OnceLock;
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (nodes, weights) = RULE.get_or_init(|| crate::numerics::gauss_legendre(20));

    const PANELS: usize = 8;
    const UPPER: f64 = 7.1;
    let half = 0.5 * UPPER / PANELS as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..PANELS {
        let mid = (2 * p + 1) as f64 * half;
        for (x, w) in nodes.iter().zip(weights) {
            sum += script_h_integrand(mid + half * x, xi) * *w;
        }
    }
    sum * half
}

/// Hankel functions of order zero built from `𝓗`:
/// `H0^(1) = sqrt(2/(πξ)) e^{i(ξ-π/4)} 𝓗*(ξ)`,
/// `H0^(2) = sqrt(2/(πξ)) e^{-i(ξ-π/4)} 𝓗(ξ)`.
pub fn hankel_h0(kind: HankelKind, xi: f64) -> Result<Complex64> {
    hankel_h0_with(kind, xi, &QuadratureSpec::default())
}

pub fn hankel_h0_with(kind: HankelKind, xi: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let h = script_h(xi, spec)?;
    let amp = (2.0 / (PI * xi)).sqrt();
    Ok(match kind {
        HankelKind::First => Complex64::from_polar(amp, xi - FRAC_PI_4) * h.conj(),
        HankelKind::Second => Complex64::from_polar(amp, -(xi - FRAC_PI_4)) * h,
    })
}

/// Leading asymptotic form `sqrt(2/(πx)) cos(x - π/4)`.
pub fn j0_asymptotic(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "asymptotic J0 needs a positive argument, got {x}"
        )));
    }
    Ok((2.0 / (PI * x)).sqrt() * (x - FRAC_PI_4).cos())
}

/// The same leading form written as the superposition
/// `sqrt(1/(2πx)) e^{-iπ/4} (e^{ix} + i e^{-ix})` of an outgoing and an
/// incoming cylindrical wave whose coefficients differ in phase by π/2.
///
/// The relative factor must be `+i` for the sum to equal `cos(x - π/4)`;
/// with `-i` it becomes `-i sqrt(2/(πx)) sin(x + π/4)`.
pub fn j0_asymptotic_waves(x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "asymptotic J0 needs a positive argument, got {x}"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let waves = Complex64::from_polar(1.0, x) + i * Complex64::from_polar(1.0, -x);
    Ok(Complex64::from_polar((1.0 / (2.0 * PI * x)).sqrt(), -FRAC_PI_4) * waves)
}

const ZERO_TOL: f64 = 1e-13;

/// Tabulated first 20 positive zeros of `J0`, for checking
/// [`find_j0_zeros`].
pub const J0_ZERO_TABLE: [f64; 20] = [
    2.404_825_557_695_773,
    5.520_078_110_286_311,
    8.653_727_912_911_013,
    11.791_534_439_014_281,
    14.930_917_708_487_787,
    18.071_063_967_910_924,
    21.211_636_629_879_26,
    24.352_471_530_749_302,
    27.493_479_132_040_253,
    30.634_606_468_431_976,
    33.775_820_213_573_57,
    36.917_098_353_664_045,
    40.058_425_764_628_24,
    43.199_791_713_176_73,
    46.341_188_371_661_815,
    49.482_609_897_397_815,
    52.624_051_841_115,
    55.765_510_755_019_98,
    58.906_983_926_080_94,
    62.048_469_190_227_166,
];

/// First `n` positive zeros of `J0`, bracketed around McMahon's estimate
/// `(k - 1/4)π` and refined by bisection.
pub fn find_j0_zeros(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| {
            let guess = (k as f64 - 0.25) * PI;
            find_root_bisect(bessel_j0, guess - 0.3, guess + 0.5, ZERO_TOL)
                .expect("J0 changes sign around every McMahon estimate")
        })
        .collect()
}

/// First `n` positive zeros of `j0`, which are `kπ`.
pub fn find_spherical_j0_zeros(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| {
            let guess = k as f64 * PI;
            find_root_bisect(spherical_j0, guess - 0.5, guess + 0.5, ZERO_TOL)
                .expect("j0 changes sign around every multiple of π")
        })
        .collect()
}
