//! Evolves the default ring packet twice: with the 2D radial Bessel kernel
//! and with a product of two free 1D propagators on a Cartesian grid, which
//! involves no Bessel function, and compares the results.

use std::time::Instant;

use radialprop::evolution::{
    cartesian_radial_discrepancy, make_ring_packet, propagate_cartesian_2d, propagate_radial, CartesianGrid, RingPacket,
};
use radialprop::numerics::QuadratureSpec;
use radialprop::schrodinger::{make_context, Dimension, PhysicalParams, RadialGrid};

fn main() -> radialprop::Result<()> {
    let packet = RingPacket::new(10.0, 1.0, Dimension::Two)?;
    let grid = CartesianGrid::quarter_plane(20.0, 128)?;
    // the grid's corner sits at r = 20 sqrt(2)
    let u0 = make_ring_packet(10.0, 1.0, Dimension::Two, &RadialGrid::new(0.0, 30.0, 3001)?)?;
    let spec = QuadratureSpec::default();
    for t in [0.25, 0.5] {
        let ctx = make_context(PhysicalParams::default(), t)?;
        let clock = Instant::now();
        let field = propagate_cartesian_2d(&packet, &ctx, &grid, &spec)?;
        let cart = clock.elapsed();
        let u = propagate_radial(&u0, &ctx, &spec)?;
        println!(
            "t = {t}: L2 discrepancy {:.3e}, equal-radius mismatch {:.3e}, Cartesian {:.2?}, total {:.2?}",
            cartesian_radial_discrepancy(&field, &u)?,
            field.equal_radius_mismatch(),
            cart,
            clock.elapsed()
        );
    }
    Ok(())
}
