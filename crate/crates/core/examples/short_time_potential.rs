//! For large ξ = 2αrρ the correction 𝓗 behaves like 1 + i/(8ξ), which is
//! the phase exp(−i V_Q t/ħ) of the attractive quantum potential
//! V_Q = −ħ²/(8Mr²) evaluated at the geometric mean radius.

use radialprop::numerics::QuadratureSpec;
use radialprop::schrodinger::{effective_potential_2d, quantum_potential, PhysicalParams};
use radialprop::special::{script_h, script_h_first_order};

fn main() -> radialprop::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>8} {:>26} {:>26}", "xi", "H(xi) - 1", "xi^2 |H - (1 + i/8xi)|");
    for xi in [10.0, 1e2, 1e3, 1e4] {
        let h = script_h(xi, &spec)?;
        let scaled = (h - script_h_first_order(xi)).norm() * xi * xi;
        println!("{xi:>8.0} {:>12.4e}{:+.4e}i {scaled:>26.8}", h.re - 1.0, h.im);
    }
    println!("9/128 = {}", 9.0 / 128.0);

    let p = PhysicalParams::default();
    println!("\n{:>6} {:>14} {:>14} {:>14}", "r", "V_Q", "V_eff m=0", "V_eff m=1");
    for r in [0.5, 1.0, 2.0, 5.0] {
        println!(
            "{r:>6.1} {:>14.6} {:>14.6} {:>14.6}",
            quantum_potential(r, &p)?,
            effective_potential_2d(0, r, &p)?,
            effective_potential_2d(1, r, &p)?
        );
    }
    Ok(())
}
