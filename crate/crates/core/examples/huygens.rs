//! A pulse in 2D leaves a wake behind its front; in 3D it does not.

use std::f64::consts::PI;

use radialprop::dalembert::{g2_ret, g2_ret_spectral, g3_ret_smeared, interior_samples, wake_tail_metric};
use radialprop::numerics::{ExtrapolationSpec, QuadratureSpec};
use radialprop::schrodinger::Dimension;

fn main() -> radialprop::Result<()> {
    let (t, c) = (2.0, 1.0);
    let (eps, spec) = (ExtrapolationSpec::default(), QuadratureSpec::default());
    println!("{:>6} {:>14} {:>14} {:>12}", "r/ct", "closed", "spectral", "region");
    for s in [0.0, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5] {
        let r = s * c * t;
        let closed = g2_ret(t, r, c)?;
        let spectral = g2_ret_spectral(t, r, c, &eps, &spec)?;
        println!("{s:>6.2} {:>14.10} {spectral:>14.10} {:>12}", closed.value, closed.region.as_str());
    }

    for t in [1.0, 2.0, 4.0] {
        let r = interior_samples(t, c, 2001);
        println!(
            "t = {t}: 2D wake {:.10} (arcsin(0.95)/2pi = {:.10}), 3D wake {}",
            wake_tail_metric(t, c, &r, Dimension::Two)?,
            0.95f64.asin() / (2.0 * PI),
            wake_tail_metric(t, c, &r, Dimension::Three)?
        );
    }
    println!("3D shell against f = 1: {}", g3_ret_smeared(t, |_| 1.0, c));
    Ok(())
}
