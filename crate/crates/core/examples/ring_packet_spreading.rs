//! A Gaussian ring spreads slightly more toward the center in 2D than in 3D:
//! the m = 0 quantum potential pulls inward in the plane and is absent for
//! the 3D s-wave.

use radialprop::evolution::{diagnostics, make_ring_packet, propagate_radial};
use radialprop::numerics::QuadratureSpec;
use radialprop::schrodinger::{make_context, Dimension, PhysicalParams, RadialGrid};

fn main() -> radialprop::Result<()> {
    let grid = RadialGrid::new(0.0, 20.0, 2048)?;
    let spec = QuadratureSpec::default();
    println!("{:>3} {:>6} {:>14} {:>12} {:>12} {:>10}", "dim", "t", "p_inner-1/2", "mean_r", "rms_width", "norm-1");
    for dim in [Dimension::Two, Dimension::Three] {
        let u0 = make_ring_packet(10.0, 1.0, dim, &grid)?;
        for t in [0.25, 0.5, 1.0] {
            let u = propagate_radial(&u0, &make_context(PhysicalParams::default(), t)?, &spec)?;
            let d = diagnostics(&u, 10.0, t)?;
            println!(
                "{dim:>3} {t:>6.2} {:>14.4e} {:>12.8} {:>12.8} {:>10.1e}",
                d.p_inner - 0.5,
                d.mean_r,
                d.rms_width,
                d.norm - 1.0
            );
        }
    }
    Ok(())
}
