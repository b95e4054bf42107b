//! Radial Green's functions of the free Schrödinger particle.
//!
//! All kernels act on reduced radial wave functions (`u = sqrt(r) Ψ` in two
//! dimensions, `u = r Ψ` in three) through `u(r,t) = ∫_0^∞ g(r,t|ρ) v(ρ) dρ`.
//! In three dimensions the kernel is the difference of a free 1D propagator
//! from `ρ` and from the mirror point `-ρ`. In two dimensions each of those
//! two terms is additionally multiplied by `𝓗(2αrρ)`, and the mirror term
//! carries a relative factor `-i` instead of `-1`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{trapezoid, QuadratureSpec};
use crate::special::{bessel_j0, script_h, spherical_j0};

/// Mass `M`, reduced Planck constant `ħ` and wave speed `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalParams {
    pub mass: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(mass: f64, hbar: f64, c: f64) -> Result<Self> {
        let p = Self { mass, hbar, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mass", self.mass), ("hbar", self.hbar), ("c", self.c)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Time-dependent constants of the free propagator at a fixed `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorContext {
    pub t: f64,
    /// `α(t) = M / (2ħt)`
    pub alpha: f64,
    /// `𝒩(t) = sqrt(α/(iπ)) = sqrt(α/π) e^{-iπ/4}`
    pub norm: Complex64,
    pub params: PhysicalParams,
}

impl PropagatorContext {
    pub fn new(params: PhysicalParams, t: f64) -> Result<Self> {
        params.validate()?;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "propagation time must be positive and finite, got {t}"
            )));
        }
        let alpha = params.mass / (2.0 * params.hbar * t);
        Ok(Self {
            t,
            alpha,
            norm: Complex64::from_polar((alpha / PI).sqrt(), -FRAC_PI_4),
            params,
        })
    }
}

pub fn make_context(params: PhysicalParams, t: f64) -> Result<PropagatorContext> {
    PropagatorContext::new(params, t)
}

/// Free 1D propagator `𝒩 exp(iα(x - x̃)²)`.
#[inline]
pub fn g1(x: f64, ctx: &PropagatorContext, x_src: f64) -> Complex64 {
    let d = x - x_src;
    ctx.norm * Complex64::from_polar(1.0, ctx.alpha * d * d)
}

fn check_radial(r: f64, rho: f64) -> Result<()> {
    if !(r >= 0.0) || !(rho >= 0.0) {
        return Err(Error::Domain(format!(
            "radial coordinates must be non-negative (r = {r}, rho = {rho})"
        )));
    }
    Ok(())
}

fn check_positive(r: f64, rho: f64) -> Result<()> {
    if !(r > 0.0) || !(rho > 0.0) {
        return Err(Error::Domain(format!(
            "this form needs r > 0 and rho > 0 (r = {r}, rho = {rho})"
        )));
    }
    Ok(())
}

/// 2D radial kernel in Bessel form,
/// `𝒩 e^{iα(r²+ρ²)} (1/√i) sqrt(παrρ) 2 J0(2αrρ)`. Exactly zero on the axis.
pub fn g2_bessel(r: f64, ctx: &PropagatorContext, rho: f64) -> Result<Complex64> {
    check_radial(r, rho)?;
    Ok(g2_bessel_unchecked(r, ctx, rho))
}

#[inline]
pub(crate) fn g2_bessel_unchecked(r: f64, ctx: &PropagatorContext, rho: f64) -> Complex64 {
    if r == 0.0 || rho == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let a = ctx.alpha;
    let amp = 2.0 * (PI * a * r * rho).sqrt() * bessel_j0(2.0 * a * r * rho);
    ctx.norm * Complex64::from_polar(amp, a * (r * r + rho * rho) - FRAC_PI_4)
}

/// The two terms of the Hankel form of the 2D kernel:
/// `(G1(r|ρ) 𝓗(2αrρ), -i G1(r|-ρ) 𝓗*(2αrρ))`.
pub fn g2_hankel_terms(
    r: f64,
    ctx: &PropagatorContext,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, Complex64)> {
    check_positive(r, rho)?;
    let h = script_h(2.0 * ctx.alpha * r * rho, spec)?;
    let direct = g1(r, ctx, rho) * h;
    let mirror = Complex64::new(0.0, -1.0) * g1(r, ctx, -rho) * h.conj();
    Ok((direct, mirror))
}

/// 2D radial kernel as a difference of free propagators dressed by `𝓗`.
pub fn g2_hankel(r: f64, ctx: &PropagatorContext, rho: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let (direct, mirror) = g2_hankel_terms(r, ctx, rho, spec)?;
    Ok(direct + mirror)
}

/// Short-time approximation of the 2D kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeKernel {
    pub value: Complex64,
    /// `|V_Q(sqrt(rρ))| t / ħ`
    pub phase_parameter: f64,
    /// False when `phase_parameter >= 0.1`; the value is then unreliable.
    pub within_window: bool,
}

/// Largest `|V_Q| t / ħ` for which the short-time kernel is trusted.
pub const SHORT_TIME_WINDOW: f64 = 0.1;

/// 2D kernel with each `𝓗` replaced by `exp(-(i/ħ) V_Q(sqrt(rρ)) t)`
/// (and its conjugate in the mirror term).
pub fn g2_short_time(r: f64, ctx: &PropagatorContext, rho: f64) -> Result<ShortTimeKernel> {
    check_positive(r, rho)?;
    let p = &ctx.params;
    let vq = quantum_potential((r * rho).sqrt(), p)?;
    let phase = -vq * ctx.t / p.hbar;
    let h = Complex64::from_polar(1.0, phase);
    let value = g1(r, ctx, rho) * h + Complex64::new(0.0, -1.0) * g1(r, ctx, -rho) * h.conj();
    Ok(ShortTimeKernel {
        value,
        phase_parameter: phase.abs(),
        within_window: phase.abs() < SHORT_TIME_WINDOW,
    })
}

/// 3D radial kernel `𝒩 [e^{iα(r-ρ)²} - e^{iα(r+ρ)²}] = G1(r|ρ) - G1(r|-ρ)`.
pub fn g3(r: f64, ctx: &PropagatorContext, rho: f64) -> Result<Complex64> {
    check_radial(r, rho)?;
    Ok(g3_unchecked(r, ctx, rho))
}

#[inline]
pub(crate) fn g3_unchecked(r: f64, ctx: &PropagatorContext, rho: f64) -> Complex64 {
    g1(r, ctx, rho) - g1(r, ctx, -rho)
}

/// 3D radial kernel in spherical-Bessel form
/// `𝒩 e^{iα(r²+ρ²)} (2/i) 2αrρ j0(2αrρ)`.
pub fn g3_spherical(r: f64, ctx: &PropagatorContext, rho: f64) -> Result<Complex64> {
    check_radial(r, rho)?;
    Ok(g3_spherical_unchecked(r, ctx, rho))
}

#[inline]
pub(crate) fn g3_spherical_unchecked(r: f64, ctx: &PropagatorContext, rho: f64) -> Complex64 {
    let a = ctx.alpha;
    let xi = 2.0 * a * r * rho;
    let amp = 2.0 * xi * spherical_j0(xi);
    ctx.norm * Complex64::from_polar(amp, a * (r * r + rho * rho) - 0.5 * PI)
}

/// Quantum anti-centrifugal potential `V_Q(r) = -(ħ²/2M) / (4r²)`.
pub fn quantum_potential(r: f64, params: &PhysicalParams) -> Result<f64> {
    effective_potential_2d(0, r, params)
}

/// Effective radial potential in two dimensions for angular momentum `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotential {
    pub dimension: u8,
    pub m: i64,
    /// `(ħ²/2M)(m² - 1/4)`
    pub prefactor: f64,
}

impl EffectivePotential {
    pub fn two_dimensional(m: i64, params: &PhysicalParams) -> Self {
        let mf = m as f64;
        Self {
            dimension: 2,
            m,
            prefactor: params.hbar * params.hbar / (2.0 * params.mass) * (mf * mf - 0.25),
        }
    }

    pub fn at(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!(
                "effective potential is singular at r = 0 and undefined for r < 0 (r = {r})"
            )));
        }
        Ok(self.prefactor / (r * r))
    }

    pub fn is_attractive(&self) -> bool {
        self.prefactor < 0.0
    }
}

/// `V_m^(2)(r) = (ħ²/2M)(m² - 1/4)/r²`.
pub fn effective_potential_2d(m: i64, r: f64, params: &PhysicalParams) -> Result<f64> {
    EffectivePotential::two_dimensional(m, params).at(r)
}

/// Spatial dimension of a radial problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dimension {
    Two,
    Three,
}

impl TryFrom<u8> for Dimension {
    type Error = String;
    fn try_from(d: u8) -> std::result::Result<Self, String> {
        match d {
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            other => Err(format!("dimension must be 2 or 3, got {other}")),
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        match d {
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// Uniform radial grid with `points` nodes on `[r_min, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        let g = Self { r_min, r_max, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min >= 0.0) || !(self.r_max > self.r_min) || !self.r_max.is_finite() || self.points < 3 {
            return Err(Error::InvalidInput(format!(
                "radial grid needs 0 <= r_min < r_max and at least 3 points (got [{}, {}] with {})",
                self.r_min, self.r_max, self.points
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.r_max } else { self.r_min + h * i as f64 })
            .collect()
    }
}

/// Samples of a reduced radial wave function on a non-negative grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub dimension: Dimension,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl RadialWavefunction {
    pub fn new(dimension: Dimension, grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 3 {
            return Err(Error::InvalidInput(
                "wave function needs at least three samples and one value per grid point".into(),
            ));
        }
        if !(grid[0] >= 0.0) || grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput(
                "radial grid must be non-negative and strictly increasing".into(),
            ));
        }
        if grid[0] == 0.0 && values[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidInput(
                "reduced radial wave function must vanish at r = 0".into(),
            ));
        }
        Ok(Self {
            dimension,
            grid,
            values,
        })
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|u| u.norm_sqr()).collect()
    }

    /// `∫|u|² dr` by the trapezoid rule.
    pub fn norm_sqr(&self) -> f64 {
        trapezoid(&self.grid, &self.density())
    }

    pub fn r_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn r_max(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    /// L² distance `sqrt(∫|u - w|² dr)` to another state on the same grid.
    pub fn l2_distance(&self, other: &RadialWavefunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::InvalidInput("states live on different grids".into()));
        }
        let diff: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .collect();
        Ok(trapezoid(&self.grid, &diff).sqrt())
    }
}

/// Whether the radial equation keeps the `m = 0` quantum potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialTerm {
    Quantum,
    Omitted,
}

/// Max-norm residual of `u'' + (2M/ħ²)(E - V_Q(r)) u = 0` for
/// `u(r) = sqrt(r) J0(kr)`, `E = ħ²k²/(2M)`, with second-order central
/// differences over the interior nodes of `grid`.
pub fn radial_ode_residual(
    k: f64,
    grid: &RadialGrid,
    params: &PhysicalParams,
    potential: PotentialTerm,
) -> Result<f64> {
    Ok(radial_ode_residuals(k, grid, params, potential)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Pointwise absolute residuals behind [`radial_ode_residual`], one per
/// interior node (`nodes()[1..points-1]`).
pub fn radial_ode_residuals(
    k: f64,
    grid: &RadialGrid,
    params: &PhysicalParams,
    potential: PotentialTerm,
) -> Result<Vec<f64>> {
    grid.validate()?;
    params.validate()?;
    if !(grid.r_min > 0.0) {
        return Err(Error::Domain(format!(
            "residual grid must start at r_min > 0, got {}",
            grid.r_min
        )));
    }
    if grid.points < 100 {
        return Err(Error::InvalidInput(format!(
            "residual grid needs at least 100 points, got {}",
            grid.points
        )));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wave number must be positive, got {k}")));
    }

    let r = grid.nodes();
    let h = grid.spacing();
    let u: Vec<f64> = r.iter().map(|&r| r.sqrt() * bessel_j0(k * r)).collect();
    let scale = 2.0 * params.mass / (params.hbar * params.hbar);
    let energy = params.hbar * params.hbar * k * k / (2.0 * params.mass);

    (1..r.len() - 1)
        .map(|i| {
            let v = match potential {
                PotentialTerm::Quantum => quantum_potential(r[i], params)?,
                PotentialTerm::Omitted => 0.0,
            };
            let second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
            Ok((second + scale * (energy - v) * u[i]).abs())
        })
        .collect()
}

/// Observed convergence factors of the residual under repeated halving of
/// the spacing, starting from `coarse` (which must have `r_min > 0`).
///
/// The grids are nested (`2^j (points - 1) + 1` nodes), and each residual
/// is taken as the max over the interior nodes of the coarsest grid, so
/// every level is measured at the same radii. Second order gives factors
/// near 4.
pub fn residual_halving_ratios(
    k: f64,
    coarse: &RadialGrid,
    halvings: usize,
    params: &PhysicalParams,
    potential: PotentialTerm,
) -> Result<Vec<f64>> {
    let mut norms = Vec::with_capacity(halvings + 1);
    for j in 0..=halvings {
        let stride = 1usize << j;
        let grid = RadialGrid::new(coarse.r_min, coarse.r_max, stride * (coarse.points - 1) + 1)?;
        let res = radial_ode_residuals(k, &grid, params, potential)?;
        // interior node i of the fine grid is res[i - 1]
        let norm = (1..coarse.points - 1)
            .map(|i| res[i * stride - 1])
            .fold(0.0, f64::max);
        norms.push(norm);
    }
    Ok(norms.windows(2).map(|w| w[0] / w[1]).collect())
}
