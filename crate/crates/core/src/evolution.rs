//! Time evolution of rotationally symmetric wave packets.
//!
//! [`propagate_radial`] applies the radial kernels to a sampled reduced wave
//! function. [`propagate_cartesian_2d`] evolves the same initial state with
//! the product of two free 1D propagators on a Cartesian grid and never
//! touches a Bessel function; it is the independent check of the 2D radial
//! kernel. [`diagnostics`] measures how the probability splits between the
//! inside and the outside of the initial ring.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::integrate_window;
use crate::numerics::{gauss_legendre, trapezoid, CubicSpline, QuadratureSpec, OSCILLATION_BUDGET};
use crate::schrodinger::{
    g2_bessel_unchecked, g3_spherical_unchecked, g3_unchecked, Dimension, PropagatorContext,
    RadialGrid, RadialWavefunction,
};

/// Gaussian ring of radius `r0` and radial width `sigma`.
///
/// The reduced wave function is
/// `u(r) = A [exp(-(r-r0)²/(4σ²)) - exp(-(r+r0)²/(4σ²))]`, normalised so that
/// `∫_0^∞ |u|² dr = 1`. The mirror Gaussian (relative size `exp(-r0²/σ²)`,
/// below 1.3e-4 at the minimum ratio and 4e-44 for the default packet)
/// makes `u(0) = 0` hold exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingPacket {
    pub r0: f64,
    pub sigma: f64,
    pub dimension: Dimension,
}

impl RingPacket {
    pub fn new(r0: f64, sigma: f64, dimension: Dimension) -> Result<Self> {
        let p = Self { r0, sigma, dimension };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !(self.r0 > 0.0) || !self.r0.is_finite() {
            return Err(Error::Domain(format!(
                "ring packet needs r0 > 0 and sigma > 0 (r0 = {}, sigma = {})",
                self.r0, self.sigma
            )));
        }
        if !(self.r0 / self.sigma >= 3.0) {
            return Err(Error::Domain(format!(
                "ring packet needs r0/sigma >= 3, got {}",
                self.r0 / self.sigma
            )));
        }
        Ok(())
    }

    fn amplitude_constant(&self) -> f64 {
        let s = self.sigma;
        let overlap = (-self.r0 * self.r0 / (2.0 * s * s)).exp();
        1.0 / (s * (2.0 * PI).sqrt() * (1.0 - overlap)).sqrt()
    }

    /// Normalised reduced wave function `u(r)`.
    pub fn amplitude(&self, r: f64) -> f64 {
        let q = 4.0 * self.sigma * self.sigma;
        let a = r - self.r0;
        let b = r + self.r0;
        self.amplitude_constant() * ((-a * a / q).exp() - (-b * b / q).exp())
    }

    /// The full wave function `Φ(ρ)`: `u/sqrt(ρ)` in 2D, `u/ρ` in 3D.
    pub fn profile(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        match self.dimension {
            Dimension::Two => self.amplitude(rho) / rho.sqrt(),
            Dimension::Three => self.amplitude(rho) / rho,
        }
    }

    /// Width of the amplitude envelope, `sqrt(2) σ`.
    pub fn envelope_width(&self) -> f64 {
        SQRT_2 * self.sigma
    }

    /// Right edge of the support every grid has to cover, `r0 + 10σ`.
    pub fn support_end(&self) -> f64 {
        self.r0 + 10.0 * self.sigma
    }
}

/// Samples a [`RingPacket`] on `grid`, which must cover `[0, r0 + 10σ]`.
pub fn make_ring_packet(r0: f64, sigma: f64, dimension: Dimension, grid: &RadialGrid) -> Result<RadialWavefunction> {
    let packet = RingPacket::new(r0, sigma, dimension)?;
    sample_packet(&packet, grid)
}

pub fn sample_packet(packet: &RingPacket, grid: &RadialGrid) -> Result<RadialWavefunction> {
    grid.validate()?;
    let need = packet.support_end();
    if grid.r_min > 0.0 || grid.r_max < need {
        return Err(Error::GridTooSmall {
            r_min: grid.r_min,
            r_max: grid.r_max,
            need_min: 0.0,
            need_max: need,
        });
    }
    let nodes = grid.nodes();
    let values = nodes
        .iter()
        .map(|&r| Complex64::new(if r == 0.0 { 0.0 } else { packet.amplitude(r) }, 0.0))
        .collect();
    RadialWavefunction::new(packet.dimension, nodes, values)
}

/// Which closed form of the radial kernel to integrate against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKernel {
    /// `g2` in Bessel form.
    Bessel2d,
    /// `g3` as a difference of free propagators.
    Difference3d,
    /// `g3` in spherical-Bessel form.
    Spherical3d,
}

impl RadialKernel {
    pub fn for_dimension(d: Dimension) -> Self {
        match d {
            Dimension::Two => RadialKernel::Bessel2d,
            Dimension::Three => RadialKernel::Difference3d,
        }
    }

    fn dimension(self) -> Dimension {
        match self {
            RadialKernel::Bessel2d => Dimension::Two,
            RadialKernel::Difference3d | RadialKernel::Spherical3d => Dimension::Three,
        }
    }

    #[inline]
    fn eval(self, r: f64, ctx: &PropagatorContext, rho: f64) -> Complex64 {
        match self {
            RadialKernel::Bessel2d => g2_bessel_unchecked(r, ctx, rho),
            RadialKernel::Difference3d => g3_unchecked(r, ctx, rho),
            RadialKernel::Spherical3d => g3_spherical_unchecked(r, ctx, rho),
        }
    }
}

/// `α · width²` for a Gaussian envelope of the given width.
pub fn oscillation_parameter(ctx: &PropagatorContext, width: f64) -> f64 {
    ctx.alpha * width * width
}

fn check_budget(ctx: &PropagatorContext, width: f64) -> Result<()> {
    let parameter = oscillation_parameter(ctx, width);
    if parameter > OSCILLATION_BUDGET {
        return Err(Error::OscillationBudget {
            parameter,
            budget: OSCILLATION_BUDGET,
        });
    }
    Ok(())
}

/// Evolves `v0` by `ctx.t` with the kernel matching its dimension.
pub fn propagate_radial(v0: &RadialWavefunction, ctx: &PropagatorContext, spec: &QuadratureSpec) -> Result<RadialWavefunction> {
    propagate_radial_with(v0, ctx, spec, RadialKernel::for_dimension(v0.dimension))
}

/// `u(r_k) = ∫ g(r_k, t|ρ) v0(ρ) dρ` on the grid of `v0`.
///
/// `v0` is interpolated by a natural cubic spline. The ρ-integral runs over
/// the Gaussian window given by the first two moments of `|v0|²`, clipped to
/// the sampled range. Grid points are independent and are evaluated in
/// parallel; the result does not depend on the number of threads.
pub fn propagate_radial_with(
    v0: &RadialWavefunction,
    ctx: &PropagatorContext,
    spec: &QuadratureSpec,
    kernel: RadialKernel,
) -> Result<RadialWavefunction> {
    spec.validate()?;
    if kernel.dimension() != v0.dimension {
        return Err(Error::InvalidInput(format!(
            "kernel for dimension {} applied to a {}D state",
            kernel.dimension(),
            v0.dimension
        )));
    }
    let moments = Moments::of(v0)?;
    let width = SQRT_2 * moments.rms_width;
    check_budget(ctx, width)?;

    let spline = CubicSpline::new(&v0.grid, &v0.values)?;
    let reach = spec.truncation_sigmas * width;
    let lo = (moments.mean_r - reach).max(v0.r_min());
    let hi = (moments.mean_r + reach).min(v0.r_max());
    let lower_tail = moments.mean_r - reach > v0.r_min();

    let values = v0
        .grid
        .par_iter()
        .map(|&r| {
            if r == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let integrand = |rho: f64| kernel.eval(r, ctx, rho) * spline.eval(rho);
            integrate_window(integrand, lo, hi, lower_tail, width, spec).map(|i| i.value)
        })
        .collect::<Result<Vec<_>>>()?;

    RadialWavefunction::new(v0.dimension, v0.grid.clone(), values)
}

struct Moments {
    norm: f64,
    mean_r: f64,
    rms_width: f64,
}

impl Moments {
    fn of(u: &RadialWavefunction) -> Result<Self> {
        let density = u.density();
        let norm = trapezoid(&u.grid, &density);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidInput("wave function has zero or non-finite norm".into()));
        }
        let first: Vec<f64> = u.grid.iter().zip(&density).map(|(r, d)| r * d).collect();
        let mean_r = trapezoid(&u.grid, &first) / norm;
        let second: Vec<f64> = u
            .grid
            .iter()
            .zip(&density)
            .map(|(r, d)| (r - mean_r) * (r - mean_r) * d)
            .collect();
        let rms_width = (trapezoid(&u.grid, &second) / norm).sqrt();
        Ok(Self { norm, mean_r, rms_width })
    }
}

/// Probability split around the initial ring radius and the first moments
/// of `|u|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadingDiagnostics {
    pub t: f64,
    pub p_inner: f64,
    pub p_outer: f64,
    pub mean_r: f64,
    pub rms_width: f64,
    /// `∫|u|² dr`, the cross-check for `p_inner + p_outer`.
    pub norm: f64,
}

/// Computes [`SpreadingDiagnostics`] for `u` at time `t`.
///
/// `p_inner` integrates `|u|²` from the first node to `r0` and `p_outer`
/// from `r0` to the last node, each by the trapezoid rule; the cell that
/// contains `r0` is split at `r0` with `|u|²` interpolated linearly.
pub fn diagnostics(u: &RadialWavefunction, r0: f64, t: f64) -> Result<SpreadingDiagnostics> {
    if !(r0 > u.r_min() && r0 < u.r_max()) {
        return Err(Error::InvalidInput(format!(
            "ring radius {r0} lies outside the grid [{}, {}]",
            u.r_min(),
            u.r_max()
        )));
    }
    let density = u.density();
    let r = &u.grid;
    let k = r.partition_point(|&x| x <= r0) - 1;
    let frac = (r0 - r[k]) / (r[k + 1] - r[k]);
    let d_split = density[k] + frac * (density[k + 1] - density[k]);

    let p_inner = trapezoid(&r[..=k], &density[..=k]) + 0.5 * (r0 - r[k]) * (density[k] + d_split);
    let p_outer = 0.5 * (r[k + 1] - r0) * (d_split + density[k + 1]) + trapezoid(&r[k + 1..], &density[k + 1..]);

    let m = Moments::of(u)?;
    Ok(SpreadingDiagnostics {
        t,
        p_inner,
        p_outer,
        mean_r: m.mean_r,
        rms_width: m.rms_width,
        norm: m.norm,
    })
}

/// A radially symmetric initial wave function `Φ(ρ)` in the plane, with a
/// Gaussian-type envelope of the given center and width.
pub trait RadialProfile: Sync {
    fn value(&self, rho: f64) -> f64;
    fn envelope_center(&self) -> f64;
    fn envelope_width(&self) -> f64;
}

impl RadialProfile for RingPacket {
    fn value(&self, rho: f64) -> f64 {
        self.profile(rho)
    }
    fn envelope_center(&self) -> f64 {
        self.r0
    }
    fn envelope_width(&self) -> f64 {
        RingPacket::envelope_width(self)
    }
}

/// Tensor grid in the quadrant `x, y >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl CartesianGrid {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        for axis in [&xs, &ys] {
            if axis.is_empty() || !(axis[0] >= 0.0) || axis.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::InvalidInput(
                    "Cartesian axes must be non-empty, non-negative and strictly increasing".into(),
                ));
            }
        }
        Ok(Self { xs, ys })
    }

    /// `points × points` uniform grid on `[0, extent]²`.
    pub fn quarter_plane(extent: f64, points: usize) -> Result<Self> {
        let axis = RadialGrid::new(0.0, extent, points)?.nodes();
        Self::new(axis.clone(), axis)
    }
}

/// Complex field on a [`CartesianGrid`], stored x-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianField {
    pub grid: CartesianGrid,
    pub values: Vec<Complex64>,
}

impl CartesianField {
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[ix * self.grid.ys.len() + iy]
    }

    /// Largest difference between field values at grid points of equal
    /// radius (relative radius mismatch below 1e-12).
    pub fn equal_radius_mismatch(&self) -> f64 {
        let mut pts: Vec<(f64, Complex64)> = Vec::with_capacity(self.values.len());
        for (ix, x) in self.grid.xs.iter().enumerate() {
            for (iy, y) in self.grid.ys.iter().enumerate() {
                pts.push(((x * x + y * y).sqrt(), self.at(ix, iy)));
            }
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut worst: f64 = 0.0;
        let mut start = 0;
        for i in 1..=pts.len() {
            if i == pts.len() || pts[i].0 - pts[start].0 > 1e-12 * pts[start].0.max(1.0) {
                for a in start..i {
                    for b in a + 1..i {
                        worst = worst.max((pts[a].1 - pts[b].1).norm());
                    }
                }
                start = i;
            }
        }
        worst
    }
}

/// Phase advance of the fastest kernel oscillation allowed across one
/// Gauss–Legendre panel of the Cartesian rule.
const PHASE_PER_PANEL: f64 = 10.0;
const NODES_PER_PANEL: usize = 16;

/// Composite 16-point Gauss–Legendre rule on `[0, upper]` whose panels
/// advance the fastest phase by at most 10 radians.
fn oscillatory_rule(upper: f64, max_frequency: f64) -> (Vec<f64>, Vec<f64>) {
    let panels = ((upper * max_frequency / PHASE_PER_PANEL).ceil() as usize).max(1);
    let (gx, gw) = gauss_legendre(NODES_PER_PANEL);
    let half = 0.5 * upper / panels as f64;
    let mut nodes = Vec::with_capacity(panels * NODES_PER_PANEL);
    let mut weights = Vec::with_capacity(panels * NODES_PER_PANEL);
    for p in 0..panels {
        let mid = (2 * p + 1) as f64 * half;
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    (nodes, weights)
}

/// Folded 1D kernel `w_j [e^{iα(x - s_j)²} + e^{iα(x + s_j)²}]` (without 𝒩)
/// as split real/imaginary matrices indexed `[node][x]`.
fn folded_kernel(xs: &[f64], nodes: &[f64], weights: &[f64], alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let nx = xs.len();
    let mut re = vec![0.0; nodes.len() * nx];
    let mut im = vec![0.0; nodes.len() * nx];
    for (j, (&s, &w)) in nodes.iter().zip(weights).enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let k = Complex64::from_polar(w, alpha * (x - s) * (x - s))
                + Complex64::from_polar(w, alpha * (x + s) * (x + s));
            re[j * nx + i] = k.re;
            im[j * nx + i] = k.im;
        }
    }
    (re, im)
}

/// 2D evolution of a radial profile by the product of two free 1D
/// propagators, `Ψ(x,y) = ∫∫ G1(x|x̃) G1(y|ỹ) Φ(sqrt(x̃²+ỹ²)) dx̃ dỹ`.
///
/// `Φ` is even in `x̃` and `ỹ`, so both integrals are folded onto `[0, L]`
/// with `L = center + truncation_sigmas · width`. Each is a composite
/// Gauss–Legendre rule fine enough for the fastest phase of the kernel,
/// `2α(max(x, y) + L)`. The `ỹ`-integral is done first for every `x̃` node,
/// then the `x̃`-integral for every output point.
pub fn propagate_cartesian_2d<P: RadialProfile>(
    profile: &P,
    ctx: &PropagatorContext,
    grid: &CartesianGrid,
    spec: &QuadratureSpec,
) -> Result<CartesianField> {
    spec.validate()?;
    let width = profile.envelope_width();
    if !(width > 0.0) {
        return Err(Error::InvalidInput("profile envelope width must be positive".into()));
    }
    check_budget(ctx, width)?;

    let support = profile.envelope_center() + spec.truncation_sigmas * width;
    let reach = grid.xs.iter().chain(&grid.ys).fold(0.0f64, |m, &v| m.max(v));
    let max_frequency = 2.0 * ctx.alpha * (reach + support);
    let (nodes, weights) = oscillatory_rule(support, max_frequency);
    let (nx, ny) = (grid.xs.len(), grid.ys.len());

    let (ky_re, ky_im) = folded_kernel(&grid.ys, &nodes, &weights, ctx.alpha);
    let (kx_re, kx_im) = folded_kernel(&grid.xs, &nodes, &weights, ctx.alpha);

    // partial[j][iy] = Σ_l Φ(sqrt(s_j² + s_l²)) Ky[l][iy]
    let support_sq = support * support;
    let partial: Vec<(Vec<f64>, Vec<f64>)> = nodes
        .par_iter()
        .map(|&sx| {
            let mut acc_re = vec![0.0; ny];
            let mut acc_im = vec![0.0; ny];
            for (l, &sy) in nodes.iter().enumerate() {
                let rho_sq = sx * sx + sy * sy;
                if rho_sq > support_sq {
                    break;
                }
                let phi = profile.value(rho_sq.sqrt());
                if phi == 0.0 {
                    continue;
                }
                let row_re = &ky_re[l * ny..(l + 1) * ny];
                let row_im = &ky_im[l * ny..(l + 1) * ny];
                for iy in 0..ny {
                    acc_re[iy] += phi * row_re[iy];
                    acc_im[iy] += phi * row_im[iy];
                }
            }
            (acc_re, acc_im)
        })
        .collect();

    let norm_sq = ctx.norm * ctx.norm;
    let values: Vec<Complex64> = (0..nx)
        .into_par_iter()
        .flat_map_iter(|ix| {
            let mut out = vec![Complex64::new(0.0, 0.0); ny];
            for (j, (p_re, p_im)) in partial.iter().enumerate() {
                let k = Complex64::new(kx_re[j * nx + ix], kx_im[j * nx + ix]);
                for iy in 0..ny {
                    out[iy] += k * Complex64::new(p_re[iy], p_im[iy]);
                }
            }
            out.into_iter().map(move |v| v * norm_sq)
        })
        .collect();

    Ok(CartesianField {
        grid: grid.clone(),
        values,
    })
}

/// L² distance between `sqrt(r) Ψ` from a Cartesian field and a 2D radial
/// state `u`, in the radial measure `∫|·|² dr = (1/2π) ∫|Ψ|² dA`, over the
/// square covered by the grid (mirrored into all four quadrants).
pub fn cartesian_radial_discrepancy(field: &CartesianField, u: &RadialWavefunction) -> Result<f64> {
    if u.dimension != Dimension::Two {
        return Err(Error::InvalidInput("Cartesian comparison needs a 2D radial state".into()));
    }
    let spline = CubicSpline::new(&u.grid, &u.values)?;
    let wx = trapezoid_weights(&field.grid.xs);
    let wy = trapezoid_weights(&field.grid.ys);
    let mut sum = 0.0;
    for (ix, &x) in field.grid.xs.iter().enumerate() {
        for (iy, &y) in field.grid.ys.iter().enumerate() {
            let r = (x * x + y * y).sqrt();
            if r > u.r_max() {
                return Err(Error::GridTooSmall {
                    r_min: u.r_min(),
                    r_max: u.r_max(),
                    need_min: 0.0,
                    need_max: r,
                });
            }
            let radial = if r > 0.0 { spline.eval(r) / r.sqrt() } else { Complex64::new(0.0, 0.0) };
            sum += wx[ix] * wy[iy] * (field.at(ix, iy) - radial).norm_sqr();
        }
    }
    Ok((4.0 * sum / (2.0 * PI)).sqrt())
}

fn trapezoid_weights(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = xs[i + 1] - xs[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}
