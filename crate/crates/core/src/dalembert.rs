//! Retarded Green's functions of the wave equation `(∂²/c²∂t² − ∇²) G = δ`.
//!
//! The Fourier solution in N dimensions is an integral over `d^N k`, which
//! splits as `k^{N−1} dk d^{N−1}ω`. The angular integral is what separates
//! the two cases implemented here. In 3D the factor `k²` combines with the
//! angular kernel `sin(kr)/(kr)` into a pure sine transform, which
//! collapses onto the sharp shell `δ(ct − r)/(4πr)`. In 2D the factor `k`
//! and the angular kernel `J₀(kr)` leave `∫ sin(kct) J₀(kr) dk`, which is
//! non-zero everywhere inside the cone: the wake that breaks Huygens'
//! principle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive_panels, richardson_extrapolate, trapezoid, ExtrapolationSpec, QuadratureSpec};
use crate::schrodinger::Dimension;
use crate::special::bessel_j0;

/// Relative distance to `r = ct` below which a point counts as on the cone.
pub const LIGHT_CONE_TOLERANCE: f64 = 1e-12;
/// Relative exclusion zone around the front for the spectral oracle.
pub const FRONT_EXCLUSION: f64 = 0.05;
/// Fraction of `ct` that bounds the interior for [`wake_tail_metric`].
pub const WAKE_INTERIOR: f64 = 0.95;
/// `e^{−ε k_max}` at the spectral truncation point.
const SPECTRAL_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontRegion {
    /// `r > ct` or `t ≤ 0`.
    BeforeFront,
    /// `r = ct` (up to [`LIGHT_CONE_TOLERANCE`]).
    OnFront,
    /// `r < ct`.
    Inside,
}

impl FrontRegion {
    pub fn as_str(self) -> &'static str {
        match self {
            FrontRegion::BeforeFront => "before_front",
            FrontRegion::OnFront => "on_front",
            FrontRegion::Inside => "inside",
        }
    }
}

/// Where `(t, r)` lies relative to the front of a pulse emitted at `t = 0`.
pub fn classify(t: f64, r: f64, c: f64) -> FrontRegion {
    if t <= 0.0 {
        return FrontRegion::BeforeFront;
    }
    let front = c * t;
    if (r - front).abs() < LIGHT_CONE_TOLERANCE * front {
        FrontRegion::OnFront
    } else if r > front {
        FrontRegion::BeforeFront
    } else {
        FrontRegion::Inside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetardedEvaluation2D {
    pub t: f64,
    pub r: f64,
    pub c: f64,
    pub value: f64,
    pub region: FrontRegion,
}

fn check_args(r: f64, c: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be finite and >= 0, got {r}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("wave speed must be finite and > 0, got {c}")));
    }
    Ok(())
}

/// Closed form `Θ(t) Θ((ct)² − r²) / (2π sqrt((ct)² − r²))`.
pub fn g2_ret(t: f64, r: f64, c: f64) -> Result<RetardedEvaluation2D> {
    check_args(r, c)?;
    let region = classify(t, r, c);
    let value = match region {
        FrontRegion::OnFront => return Err(Error::OnLightCone),
        FrontRegion::BeforeFront => 0.0,
        FrontRegion::Inside => {
            let ct = c * t;
            1.0 / (2.0 * PI * ((ct - r) * (ct + r)).sqrt())
        }
    };
    Ok(RetardedEvaluation2D { t, r, c, value, region })
}

/// The 2D Green's function from its spectral representation,
/// `(1/2π) ∫_0^∞ sin(kct) J₀(kr) dk`.
///
/// The integral converges only conditionally, so it is damped by `e^{−εk}`,
/// truncated where the damping reaches 1e-12, and extrapolated to `ε = 0`.
/// The regulators are `ε = s·d` for `s` in `eps_spec.regulator_sequence`,
/// where `d = min(ct, |r − ct|)` is the distance to the front capped at `ct`:
/// the damped integral, as a function of `ε`, is singular at `|ε| = |r − ct|`,
/// so regulators must stay well inside that radius.
/// Inside the cone the damped integral is even in `ε` and the extrapolation
/// runs in `ε²`; outside it also has odd terms and runs in `ε`.
pub fn g2_ret_spectral(t: f64, r: f64, c: f64, eps_spec: &ExtrapolationSpec, spec: &QuadratureSpec) -> Result<f64> {
    check_args(r, c)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("spectral evaluation needs t > 0, got {t}")));
    }
    eps_spec.validate()?;
    spec.validate()?;
    let ct = c * t;
    if (r - ct).abs() <= FRONT_EXCLUSION * ct {
        return Err(Error::TooCloseToFront {
            r,
            front: ct,
            margin: FRONT_EXCLUSION,
        });
    }
    let inside = r < ct;
    let scale = ct.min((r - ct).abs());

    // One starting panel per period of the faster beat, ct + r. Long ranges
    // are split into blocks that each get the full subdivision budget.
    let period = 2.0 * PI / (ct + r);
    let block = (spec.max_subdivisions / 4).max(1);
    let mut samples = Vec::with_capacity(eps_spec.regulator_sequence.len());
    for &s in &eps_spec.regulator_sequence {
        let eps = s * scale;
        let k_max = -SPECTRAL_TAIL.ln() / eps;
        let panels = ((k_max / period).ceil() as usize).max(1);
        let integrand = |k: f64| Complex64::new((-eps * k).exp() * (k * ct).sin() * bessel_j0(k * r), 0.0);
        let mut total = Complex64::new(0.0, 0.0);
        for start in (0..panels).step_by(block) {
            let end = (start + block).min(panels);
            let breaks: Vec<f64> = (start..=end).map(|i| k_max * i as f64 / panels as f64).collect();
            total += integrate_adaptive_panels(integrand, &breaks, spec)?.value;
        }
        let x = if inside { eps * eps } else { eps };
        samples.push((x, total));
    }
    let limit = richardson_extrapolate(&samples, eps_spec)?;
    Ok(limit.re / (2.0 * PI))
}

/// `∫ d³r G₃ f(|r|) = ct · f(ct)` for `t > 0`, and 0 otherwise.
///
/// The 3D Green's function `δ(ct − r)/(4πr)` has no pointwise value, so it
/// is only exposed through its action on a radial test function.
pub fn g3_ret_smeared<F: Fn(f64) -> f64>(t: f64, f: F, c: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let ct = c * t;
    ct * f(ct)
}

/// `n` equally spaced radii covering `[0, 0.95 ct]`.
pub fn interior_samples(t: f64, c: f64, n: usize) -> Vec<f64> {
    let end = WAKE_INTERIOR * c * t;
    let n = n.max(2);
    (0..n).map(|i| end * i as f64 / (n - 1) as f64).collect()
}

/// Amplitude left behind the front: `∫ G dr` over the sampled interior
/// radii (trapezoid rule).
///
/// In 2D this is `(1/2π) arcsin(r_max/ct)` up to discretisation. In 3D the
/// Green's function vanishes everywhere off the front, so the result is
/// exactly 0.
pub fn wake_tail_metric(t: f64, c: f64, r_samples: &[f64], dimension: Dimension) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("wake metric needs t > 0, got {t}")));
    }
    check_args(0.0, c)?;
    let ct = c * t;
    let limit = WAKE_INTERIOR * ct * (1.0 + 1e-12);
    for &r in r_samples {
        if !(r >= 0.0) {
            return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
        }
        if r > limit {
            return Err(Error::TooCloseToFront {
                r,
                front: ct,
                margin: 1.0 - WAKE_INTERIOR,
            });
        }
    }
    if r_samples.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput("wake samples must be strictly increasing".into()));
    }
    match dimension {
        Dimension::Two => {
            let values = r_samples
                .iter()
                .map(|&r| g2_ret(t, r, c).map(|e| e.value))
                .collect::<Result<Vec<_>>>()?;
            Ok(trapezoid(r_samples, &values))
        }
        Dimension::Three => Ok(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(g2_ret(-1.0, 0.5, 1.0).unwrap().value, 0.0);
        assert_eq!(g2_ret(0.0, 0.0, 1.0).unwrap().region, FrontRegion::BeforeFront);
        let out = g2_ret(2.0, 3.0, 1.0).unwrap();
        assert_eq!((out.value, out.region), (0.0, FrontRegion::BeforeFront));
        let v = g2_ret(2.0, 1.0, 1.0).unwrap();
        assert_eq!(v.region, FrontRegion::Inside);
        assert!((v.value - 1.0 / (2.0 * PI * 3f64.sqrt())).abs() < 1e-15);
        assert!((v.value - 0.091888).abs() < 1e-6);
        assert!(matches!(g2_ret(2.0, 2.0, 1.0), Err(Error::OnLightCone)));
        assert!(g2_ret(1.0, -1.0, 1.0).is_err());
        assert!(g2_ret(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn spectral_matches_closed_form() {
        let eps = ExtrapolationSpec::default();
        let spec = QuadratureSpec::default();
        for s in [0.0, 0.25, 0.5, 0.75] {
            let r = 2.0 * s;
            let exact = g2_ret(2.0, r, 1.0).unwrap().value;
            let approx = g2_ret_spectral(2.0, r, 1.0, &eps, &spec).unwrap();
            assert!((approx - exact).abs() < 1e-4 * exact, "r = {r}: {approx} vs {exact}");
        }
        for r in [2.1, 2.2, 2.5, 3.0, 6.0] {
            let outside = g2_ret_spectral(2.0, r, 1.0, &eps, &spec).unwrap();
            assert!(outside.abs() < 1e-5, "r = {r}: {outside}");
        }
        for r in [1.5, 1.8, 1.89] {
            let exact = g2_ret(2.0, r, 1.0).unwrap().value;
            let approx = g2_ret_spectral(2.0, r, 1.0, &eps, &spec).unwrap();
            assert!((approx - exact).abs() < 1e-6 * exact, "r = {r}: {approx} vs {exact}");
        }
    }

    #[test]
    fn spectral_excludes_front() {
        let eps = ExtrapolationSpec::default();
        let spec = QuadratureSpec::default();
        for r in [1.95, 2.0, 2.05] {
            assert!(matches!(
                g2_ret_spectral(2.0, r, 1.0, &eps, &spec),
                Err(Error::TooCloseToFront { .. })
            ));
        }
        assert!(g2_ret_spectral(0.0, 1.0, 1.0, &eps, &spec).is_err());
    }

    #[test]
    fn smeared_3d_examples() {
        assert_eq!(g3_ret_smeared(2.0, |_| 1.0, 1.0), 2.0);
        assert!((g3_ret_smeared(0.7, |r| 1.0 / r, 1.0) - 1.0).abs() < 1e-15);
        let gauss = |r: f64| (-(r - 3.0) * (r - 3.0) / (2.0 * 0.25)).exp();
        assert_eq!(g3_ret_smeared(3.0, gauss, 1.0), 3.0);
        assert_eq!(g3_ret_smeared(-1.0, |_| 1.0, 1.0), 0.0);
        assert_eq!(g3_ret_smeared(0.0, |_| 1.0, 1.0), 0.0);
    }

    #[test]
    fn wake_metric_2d_and_3d() {
        let target = 0.95f64.asin() / (2.0 * PI);
        for t in [2.0, 4.0] {
            let samples = interior_samples(t, 1.0, 2001);
            let w2 = wake_tail_metric(t, 1.0, &samples, Dimension::Two).unwrap();
            assert!((w2 - target).abs() < 1e-6, "t = {t}: {w2}");
            assert_eq!(wake_tail_metric(t, 1.0, &samples, Dimension::Three).unwrap(), 0.0);
        }
        assert!(matches!(
            wake_tail_metric(2.0, 1.0, &[0.0, 1.0, 1.95], Dimension::Two),
            Err(Error::TooCloseToFront { .. })
        ));
    }

    proptest! {
        #[test]
        fn causal_outside_the_cone(t in 0.01f64..10.0, c in 0.1f64..5.0, excess in 1e-6f64..10.0) {
            let r = c * t * (1.0 + excess);
            prop_assert_eq!(g2_ret(t, r, c).unwrap().value, 0.0);
            prop_assert_eq!(g2_ret(-t, r / 2.0, c).unwrap().value, 0.0);
        }

        #[test]
        fn rises_toward_the_front(t in 0.1f64..10.0, a in 0.0f64..0.99, b in 0.0f64..0.99) {
            prop_assume!((a - b).abs() > 1e-9);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let g_lo = g2_ret(t, lo * t, 1.0).unwrap().value;
            let g_hi = g2_ret(t, hi * t, 1.0).unwrap().value;
            prop_assert!(g_hi > g_lo);
        }

        #[test]
        fn homogeneous_of_degree_minus_one(t in 0.1f64..10.0, s in 0.0f64..0.99, lambda in 0.1f64..10.0) {
            let r = s * t;
            let g = g2_ret(t, r, 1.0).unwrap().value;
            let scaled = g2_ret(lambda * t, lambda * r, 1.0).unwrap().value * lambda;
            prop_assert!((g - scaled).abs() <= 1e-12 * g);
        }
    }
}
