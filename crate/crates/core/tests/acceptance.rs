//! Acceptance criteria 1–10. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.
//! Wall-clock budgets are part of each criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use radialprop::dalembert::{g2_ret, g2_ret_spectral, interior_samples, wake_tail_metric};
use radialprop::evolution::{
    cartesian_radial_discrepancy, diagnostics, make_ring_packet, propagate_cartesian_2d, propagate_radial,
    CartesianGrid, RingPacket,
};
use radialprop::numerics::{ExtrapolationSpec, QuadratureSpec};
use radialprop::schrodinger::{
    g2_bessel, g2_hankel, g3, g3_spherical, make_context, radial_ode_residual, residual_halving_ratios, Dimension,
    PhysicalParams, PotentialTerm, RadialGrid, RadialWavefunction,
};
use radialprop::special::{find_j0_zeros, find_spherical_j0_zeros, script_h, script_h_first_order, J0_ZERO_TABLE};
use radialprop::Result;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn unit() -> PhysicalParams {
    PhysicalParams::default()
}

fn default_packet(dim: Dimension) -> Result<RadialWavefunction> {
    make_ring_packet(10.0, 1.0, dim, &RadialGrid::new(0.0, 20.0, 2048)?)
}

fn evolve(u: &RadialWavefunction, t: f64) -> Result<RadialWavefunction> {
    propagate_radial(u, &make_context(unit(), t)?, &QuadratureSpec::default())
}

fn hankel_recombination() -> Result<Verdict> {
    let ctx = make_context(unit(), 0.5)?;
    let spec = QuadratureSpec::default().with_tolerance(1e-13);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let xi = 10f64.powf(-1.0 + 3.0 * i as f64 / 49.0);
        let r = (xi / 2.0).sqrt(); // α = 1, r = ρ
        let b = g2_bessel(r, &ctx, r)?;
        worst = worst.max((b - g2_hankel(r, &ctx, r, &spec)?).norm() / b.norm());
    }
    verdict(worst < 1e-8, format!("max relative |g2_bessel - g2_hankel| = {worst:.2e} (< 1e-8)"))
}

fn g3_identity() -> Result<Verdict> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20261015);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (r, rho): (f64, f64) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
        let alpha: f64 = rng.gen_range(0.1..2.0);
        let ctx = make_context(unit(), 1.0 / (2.0 * alpha))?;
        worst = worst.max((g3(r, &ctx, rho)? - g3_spherical(r, &ctx, rho)?).norm());
    }
    verdict(worst < 1e-12, format!("max |difference - spherical| over 1000 triples = {worst:.2e} (< 1e-12)"))
}

fn short_time_law() -> Result<Verdict> {
    let spec = QuadratureSpec::default();
    let mut scaled = Vec::new();
    for xi in [1e1, 1e2, 1e3, 1e4] {
        scaled.push((script_h(xi, &spec)? - script_h_first_order(xi)).norm() * xi * xi);
    }
    let max = scaled.iter().copied().fold(0.0, f64::max);
    let min = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = (max - min) / max;
    verdict(
        scaled.iter().all(|v| v.is_finite() && *v > 0.0) && spread < 0.5,
        format!("xi^2 |H - (1 + i/8xi)| = {scaled:.6?}, spread {:.1}% (< 50%)", 100.0 * spread),
    )
}

fn radial_ode() -> Result<Verdict> {
    let p = unit();
    let coarse = RadialGrid::new(0.5, 20.0, 501)?;
    let factors = residual_halving_ratios(1.0, &coarse, 3, &p, PotentialTerm::Quantum)?;
    let all_nodes: Vec<f64> = [500, 1000, 2000, 4000]
        .iter()
        .map(|&n| radial_ode_residual(1.0, &RadialGrid::new(0.5, 20.0, n)?, &p, PotentialTerm::Quantum))
        .collect::<Result<_>>()?;
    let all_node_ratios: Vec<f64> = all_nodes.windows(2).map(|w| w[0] / w[1]).collect();
    let at_4000 = all_nodes[3];
    let stalled = [1000, 2000, 4000]
        .iter()
        .map(|&n| radial_ode_residual(1.0, &RadialGrid::new(0.5, 20.0, n)?, &p, PotentialTerm::Omitted))
        .collect::<Result<Vec<f64>>>()?;
    let floor = stalled.iter().copied().fold(f64::INFINITY, f64::min);
    let pass = factors.iter().all(|q| (3.5..=4.5).contains(q)) && at_4000 < 1e-4 && floor > 1e-2;
    verdict(
        pass,
        format!(
            "factor per halving at fixed radii {factors:.4?} (all-node max-norm {all_node_ratios:.3?}); \
             residual at 4000 points {at_4000:.2e} (< 1e-4); without V_Q >= {floor:.3} (> 1e-2)"
        ),
    )
}

fn cartesian_oracle() -> Result<Verdict> {
    let packet = RingPacket::new(10.0, 1.0, Dimension::Two)?;
    let grid = CartesianGrid::quarter_plane(20.0, 128)?;
    let u0 = make_ring_packet(10.0, 1.0, Dimension::Two, &RadialGrid::new(0.0, 30.0, 3001)?)?;
    let spec = QuadratureSpec::default();
    let mut parts = Vec::new();
    let mut worst: f64 = 0.0;
    for t in [0.25, 0.5] {
        let ctx = make_context(unit(), t)?;
        let field = propagate_cartesian_2d(&packet, &ctx, &grid, &spec)?;
        let d = cartesian_radial_discrepancy(&field, &propagate_radial(&u0, &ctx, &spec)?)?;
        worst = worst.max(d);
        parts.push(format!("t={t}: {d:.2e}"));
    }
    verdict(worst < 1e-6, format!("L2 discrepancy on 128x128 quarter plane {} (< 1e-6)", parts.join(", ")))
}

fn unitarity_semigroup() -> Result<Verdict> {
    let mut drift: f64 = 0.0;
    let mut semigroup: f64 = 0.0;
    for dim in [Dimension::Two, Dimension::Three] {
        let u0 = default_packet(dim)?;
        let half = evolve(&u0, 0.25)?;
        let twice = evolve(&half, 0.25)?;
        let once = evolve(&u0, 0.5)?;
        for (a, b) in [(&u0, &half), (&half, &twice), (&u0, &once)] {
            drift = drift.max((b.norm_sqr() - a.norm_sqr()).abs());
        }
        semigroup = semigroup.max(twice.l2_distance(&once)?);
    }
    verdict(
        drift < 1e-6 && semigroup < 1e-5,
        format!("norm drift per hop {drift:.2e} (< 1e-6); |U(.25)U(.25) - U(.5)| {semigroup:.2e} (< 1e-5), 2D and 3D"),
    )
}

fn anti_centrifugal() -> Result<Verdict> {
    let two = diagnostics(&evolve(&default_packet(Dimension::Two)?, 0.5)?, 10.0, 0.5)?.p_inner - 0.5;
    let three = diagnostics(&evolve(&default_packet(Dimension::Three)?, 0.5)?, 10.0, 0.5)?.p_inner - 0.5;
    verdict(
        two > 10.0 * 1e-6 && three.abs() < two / 10.0,
        format!("2D p_inner - 1/2 = {two:.3e} (> 1e-5); 3D |p_inner - 1/2| = {:.1e} (< {:.1e})", three.abs(), two / 10.0),
    )
}

fn zero_bunching() -> Result<Verdict> {
    let zeros = find_j0_zeros(20);
    let accuracy = zeros.iter().zip(&J0_ZERO_TABLE).map(|(z, r)| (z - r).abs()).fold(0.0, f64::max);
    let gaps: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = gaps.windows(2).all(|w| w[1] > w[0]);
    let below_pi = gaps.iter().all(|g| *g < PI);
    let spherical = find_spherical_j0_zeros(20)
        .iter()
        .enumerate()
        .map(|(k, z)| (z - (k + 1) as f64 * PI).abs())
        .fold(0.0, f64::max);
    verdict(
        accuracy < 1e-9 && increasing && below_pi && spherical < 1e-12,
        format!(
            "J0 zeros max error {accuracy:.1e} (< 1e-9); spacings increasing: {increasing}, all < pi: {below_pi} \
             ({:.6} .. {:.6}); j0 zeros vs k pi {spherical:.1e} (< 1e-12)",
            gaps[0],
            gaps[gaps.len() - 1]
        ),
    )
}

fn dalembert_oracle() -> Result<Verdict> {
    let (eps, spec) = (ExtrapolationSpec::default(), QuadratureSpec::default());
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.25, 0.5, 0.75] {
        let exact = g2_ret(2.0, 2.0 * s, 1.0)?.value;
        worst = worst.max((g2_ret_spectral(2.0, 2.0 * s, 1.0, &eps, &spec)? - exact).abs() / exact);
    }
    let mut outside: f64 = 0.0;
    for k in 1..=1000 {
        let r = 2.0 * (1.0 + 1e-3 * k as f64);
        outside = outside.max(g2_ret(2.0, r, 1.0)?.value.abs());
        outside = outside.max(g2_ret(-0.5 * k as f64 / 1000.0, 0.001 * k as f64, 1.0)?.value.abs());
    }
    verdict(
        worst < 1e-4 && outside == 0.0,
        format!("spectral vs closed form max relative {worst:.2e} (< 1e-4); max |g2| outside the cone {outside:e} (== 0)"),
    )
}

fn huygens() -> Result<Verdict> {
    let target = 0.95f64.asin() / (2.0 * PI);
    let samples = interior_samples(2.0, 1.0, 2001);
    let two = wake_tail_metric(2.0, 1.0, &samples, Dimension::Two)?;
    let three = wake_tail_metric(2.0, 1.0, &samples, Dimension::Three)?;
    verdict(
        two > 0.0 && three == 0.0 && (two - target).abs() < 1e-6,
        format!("2D wake {two:.10} vs arcsin(0.95)/2pi {target:.10} (diff {:.1e} < 1e-6); 3D wake {three}", (two - target).abs()),
    )
}

/// Name, runtime budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Result<Verdict>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Hankel recombination", 10, hankel_recombination),
        ("3D form identity", 1, g3_identity),
        ("short-time law", 5, short_time_law),
        ("radial ODE residual", 5, radial_ode),
        ("Cartesian-oracle equivalence", 300, cartesian_oracle),
        ("unitarity and semigroup", 120, unitarity_semigroup),
        ("anti-centrifugal asymmetry", 120, anti_centrifugal),
        ("zero bunching", 1, zero_bunching),
        ("d'Alembert 2D oracle", 30, dalembert_oracle),
        ("Huygens contrast", 1, huygens),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = run();
        let elapsed = clock.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (pass, detail) = match outcome {
            Ok(v) => (v.pass && in_time, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {:>2} [{name}]: {detail}; runtime {elapsed:.2?} (budget {budget} s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
