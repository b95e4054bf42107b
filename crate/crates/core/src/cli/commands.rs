use std::path::PathBuf;

use rayon::prelude::*;

use super::config::{GridSpec, RunConfig};
use super::output::{Cell, Table};
use super::Failure;
use crate::dalembert::{classify, g2_ret, g2_ret_spectral, g3_ret_smeared, FrontRegion, FRONT_EXCLUSION};
use crate::error::Result;
use crate::evolution::{
    cartesian_radial_discrepancy, diagnostics, propagate_cartesian_2d, propagate_radial, sample_packet, RingPacket,
};
use crate::schrodinger::{
    g2_bessel, g2_hankel, g2_short_time, g3, g3_spherical, make_context, Dimension, RadialGrid, RadialWavefunction,
};

/// Radial spacing of the companion run used to check Cartesian output.
const COMPANION_SPACING: f64 = 0.01;

fn diagnostics_table() -> Table {
    Table::new(&["t", "p_inner", "p_outer", "mean_r", "rms_width", "norm"])
}

fn push_diagnostics(table: &mut Table, u: &RadialWavefunction, r0: f64, t: f64) -> Result<()> {
    let d = diagnostics(u, r0, t)?;
    table.push(vec![
        d.t.into(),
        d.p_inner.into(),
        d.p_outer.into(),
        d.mean_r.into(),
        d.rms_width.into(),
        d.norm.into(),
    ]);
    Ok(())
}

/// One state file per time plus `diagnostics_{d}d`. Each time is propagated
/// from the initial packet directly.
pub fn run_evolve(cfg: &RunConfig) -> std::result::Result<Vec<PathBuf>, Failure> {
    cfg.validate_common()?;
    cfg.validate_evolution_times()?;
    if let GridSpec::Cartesian { .. } = cfg.grid {
        return run_evolve_cartesian(cfg);
    }
    let dim = cfg.dimension;
    let spec = cfg.packet();
    let packet = RingPacket::new(spec.r0, spec.sigma, dim)?;
    let u0 = sample_packet(&packet, &cfg.grid.radial()?)?;
    let dir = &cfg.output_path;

    let mut written = Vec::new();
    let mut diag = diagnostics_table();
    for (i, &t) in cfg.times.iter().enumerate() {
        let ctx = make_context(cfg.params, t)?;
        let u = propagate_radial(&u0, &ctx, &cfg.quadrature)?;
        let mut table = Table::new(&["r", "re_u", "im_u", "abs2_u"]);
        for (r, v) in u.grid.iter().zip(&u.values) {
            table.push(vec![(*r).into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
        }
        written.push(table.write(dir, &format!("evolve_{dim}d_t{i:03}"), cfg.format)?);
        push_diagnostics(&mut diag, &u, packet.r0, t)?;
    }
    written.push(diag.write(dir, &format!("diagnostics_{dim}d"), cfg.format)?);
    Ok(written)
}

/// 2D evolution on the Cartesian grid. A radial run covering the grid's
/// diagonal supplies the diagnostics and the oracle comparison.
fn run_evolve_cartesian(cfg: &RunConfig) -> std::result::Result<Vec<PathBuf>, Failure> {
    if cfg.dimension != Dimension::Two {
        return Err(Failure::Config("a Cartesian grid needs dimension = 2".into()));
    }
    let grid = cfg.grid.cartesian()?;
    let spec = cfg.packet();
    let packet = RingPacket::new(spec.r0, spec.sigma, Dimension::Two)?;
    let x_max = grid.xs.last().copied().unwrap_or(0.0);
    let y_max = grid.ys.last().copied().unwrap_or(0.0);
    let r_max = x_max.hypot(y_max).max(packet.support_end());
    let points = (r_max / COMPANION_SPACING).ceil() as usize + 1;
    let u0 = sample_packet(&packet, &RadialGrid::new(0.0, r_max, points)?)?;
    let dir = &cfg.output_path;

    let mut written = Vec::new();
    let mut diag = diagnostics_table();
    let mut check = Table::new(&["t", "l2_discrepancy", "equal_radius_mismatch"]);
    for (i, &t) in cfg.times.iter().enumerate() {
        let ctx = make_context(cfg.params, t)?;
        let field = propagate_cartesian_2d(&packet, &ctx, &grid, &cfg.quadrature)?;
        let mut table = Table::new(&["x", "y", "re_psi", "im_psi", "abs2_psi"]);
        for (ix, &x) in grid.xs.iter().enumerate() {
            for (iy, &y) in grid.ys.iter().enumerate() {
                let v = field.at(ix, iy);
                table.push(vec![x.into(), y.into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
            }
        }
        written.push(table.write(dir, &format!("evolve_cartesian_t{i:03}"), cfg.format)?);

        let u = propagate_radial(&u0, &ctx, &cfg.quadrature)?;
        push_diagnostics(&mut diag, &u, packet.r0, t)?;
        check.push(vec![
            t.into(),
            cartesian_radial_discrepancy(&field, &u)?.into(),
            field.equal_radius_mismatch().into(),
        ]);
    }
    written.push(diag.write(dir, "diagnostics_2d", cfg.format)?);
    written.push(check.write(dir, "cartesian_check", cfg.format)?);
    Ok(written)
}

/// Kernel values `g(r, t | ρ)` for every grid radius `r` and time `t`.
pub fn run_green(cfg: &RunConfig) -> std::result::Result<Vec<PathBuf>, Failure> {
    cfg.validate_common()?;
    cfg.validate_evolution_times()?;
    let radii = cfg.grid.radial()?.nodes();
    let rho = cfg.green.rho;
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Failure::Config(format!("green.rho must be finite and > 0, got {rho}")));
    }

    let table = match cfg.dimension {
        Dimension::Two => {
            let mut table = Table::new(&[
                "t",
                "r",
                "rho",
                "xi",
                "re_g2_bessel",
                "im_g2_bessel",
                "re_g2_hankel",
                "im_g2_hankel",
                "re_g2_short_time",
                "im_g2_short_time",
            ]);
            for &t in &cfg.times {
                let ctx = make_context(cfg.params, t)?;
                let rows = radii
                    .par_iter()
                    .map(|&r| -> Result<Vec<Cell>> {
                        let bessel = g2_bessel(r, &ctx, rho)?;
                        let (hankel, short) = if r > 0.0 {
                            let h = g2_hankel(r, &ctx, rho, &cfg.quadrature)?;
                            let s = g2_short_time(r, &ctx, rho)?.value;
                            (Some(h), Some(s))
                        } else {
                            (None, None)
                        };
                        Ok(vec![
                            t.into(),
                            r.into(),
                            rho.into(),
                            (2.0 * ctx.alpha * r * rho).into(),
                            bessel.re.into(),
                            bessel.im.into(),
                            hankel.map(|h| h.re).into(),
                            hankel.map(|h| h.im).into(),
                            short.map(|s| s.re).into(),
                            short.map(|s| s.im).into(),
                        ])
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.into_iter().for_each(|row| table.push(row));
            }
            table
        }
        Dimension::Three => {
            let mut table = Table::new(&["t", "r", "rho", "re_g3", "im_g3", "re_g3_spherical", "im_g3_spherical"]);
            for &t in &cfg.times {
                let ctx = make_context(cfg.params, t)?;
                for &r in &radii {
                    let a = g3(r, &ctx, rho)?;
                    let b = g3_spherical(r, &ctx, rho)?;
                    table.push(vec![
                        t.into(),
                        r.into(),
                        rho.into(),
                        a.re.into(),
                        a.im.into(),
                        b.re.into(),
                        b.im.into(),
                    ]);
                }
            }
            table
        }
    };
    Ok(vec![table.write(&cfg.output_path, &format!("green_{}d", cfg.dimension), cfg.format)?])
}

/// The 2D retarded Green's function in closed and spectral form over a
/// radius sweep, and the 3D one smeared against fixed test functions.
pub fn run_dalembert(cfg: &RunConfig) -> std::result::Result<Vec<PathBuf>, Failure> {
    cfg.validate_common()?;
    if cfg.times.is_empty() {
        return Err(Failure::Config("times must not be empty".into()));
    }
    let section = &cfg.dalembert;
    section.extrapolation.validate()?;
    if !(section.gaussian_width > 0.0) {
        return Err(Failure::Config("dalembert.gaussian_width must be > 0".into()));
    }
    let radii = section.radii()?;
    let c = cfg.params.c;

    let mut g2 = Table::new(&["t", "r", "g2_closed", "g2_spectral", "region"]);
    for &t in &cfg.times {
        let rows = radii
            .par_iter()
            .map(|&r| -> Result<Vec<Cell>> {
                let region = classify(t, r, c);
                let closed = match region {
                    FrontRegion::OnFront => None,
                    _ => Some(g2_ret(t, r, c)?.value),
                };
                let spectral = if t <= 0.0 {
                    Some(0.0)
                } else if (r - c * t).abs() <= FRONT_EXCLUSION * c * t {
                    None
                } else {
                    Some(g2_ret_spectral(t, r, c, &section.extrapolation, &cfg.quadrature)?)
                };
                Ok(vec![t.into(), r.into(), closed.into(), spectral.into(), region.as_str().into()])
            })
            .collect::<Result<Vec<_>>>()?;
        rows.into_iter().for_each(|row| g2.push(row));
    }

    let (mu, w) = (section.gaussian_center, section.gaussian_width);
    let mut g3 = Table::new(&["t", "f_name", "value"]);
    for &t in &cfg.times {
        let smeared = [
            ("one", g3_ret_smeared(t, |_| 1.0, c)),
            ("inverse_r", g3_ret_smeared(t, |r| 1.0 / r, c)),
            ("gaussian", g3_ret_smeared(t, |r| (-(r - mu) * (r - mu) / (2.0 * w * w)).exp(), c)),
        ];
        for (name, value) in smeared {
            g3.push(vec![t.into(), name.into(), value.into()]);
        }
    }

    let dir = &cfg.output_path;
    Ok(vec![
        g2.write(dir, "dalembert_2d", cfg.format)?,
        g3.write(dir, "dalembert_3d_smeared", cfg.format)?,
    ])
}
