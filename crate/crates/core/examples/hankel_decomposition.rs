//! The 2D radial kernel as a sum of an outgoing and an incoming free 1D
//! propagator, each multiplied by the slowly varying correction 𝓗(ξ).

use radialprop::numerics::QuadratureSpec;
use radialprop::schrodinger::{g2_bessel, g2_hankel_terms, make_context, PhysicalParams};
use radialprop::special::script_h;

fn main() -> radialprop::Result<()> {
    let ctx = make_context(PhysicalParams::default(), 0.5)?;
    let spec = QuadratureSpec::default().with_tolerance(1e-13);
    let rho = 2.0;
    println!("{:>8} {:>10} {:>24} {:>12} {:>12} {:>10}", "r", "xi", "H(xi)", "|direct|", "|mirror|", "rel diff");
    for r in [0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let xi = 2.0 * ctx.alpha * r * rho;
        let h = script_h(xi, &spec)?;
        let (direct, mirror) = g2_hankel_terms(r, &ctx, rho, &spec)?;
        let bessel = g2_bessel(r, &ctx, rho)?;
        let rel = (direct + mirror - bessel).norm() / bessel.norm();
        println!(
            "{r:>8.2} {xi:>10.3} {:>11.8}{:+.8}i {:>12.6} {:>12.6} {rel:>10.1e}",
            h.re,
            h.im,
            direct.norm(),
            mirror.norm()
        );
    }
    Ok(())
}
