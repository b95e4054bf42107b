//! Zeros of J0 crowd together toward π spacing from below, while the zeros
//! of the spherical j0 = sin(x)/x sit exactly at kπ.

use std::f64::consts::PI;

use radialprop::special::{find_j0_zeros, find_spherical_j0_zeros};

fn main() {
    let j = find_j0_zeros(20);
    let s = find_spherical_j0_zeros(20);
    println!("{:>3} {:>20} {:>12} {:>20}", "k", "J0 zero", "spacing", "j0 zero - k pi");
    for k in 0..20 {
        let gap = if k > 0 { format!("{:.9}", j[k] - j[k - 1]) } else { "-".into() };
        println!("{:>3} {:>20.15} {:>12} {:>20.3e}", k + 1, j[k], gap, s[k] - (k + 1) as f64 * PI);
    }
    println!("pi = {PI:.9}");
}
