//! u(r) = sqrt(r) J0(kr) solves the reduced radial equation only when the
//! quantum potential −ħ²/(8Mr²) is kept.

use radialprop::schrodinger::{radial_ode_residual, residual_halving_ratios, PhysicalParams, PotentialTerm, RadialGrid};

fn main() -> radialprop::Result<()> {
    let p = PhysicalParams::default();
    println!("{:>6} {:>14} {:>14}", "points", "with V_Q", "without V_Q");
    for n in [500, 1000, 2000, 4000, 8000] {
        let grid = RadialGrid::new(0.5, 20.0, n)?;
        println!(
            "{n:>6} {:>14.4e} {:>14.4e}",
            radial_ode_residual(1.0, &grid, &p, PotentialTerm::Quantum)?,
            radial_ode_residual(1.0, &grid, &p, PotentialTerm::Omitted)?
        );
    }
    let coarse = RadialGrid::new(0.5, 20.0, 501)?;
    println!(
        "factor per halving at fixed radii: {:?}",
        residual_halving_ratios(1.0, &coarse, 3, &p, PotentialTerm::Quantum)?
    );
    Ok(())
}
