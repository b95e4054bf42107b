use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible value of `alpha * width^2` for Fresnel-type kernels
/// integrated against a Gaussian envelope of the given width.
pub const OSCILLATION_BUDGET: f64 = 50.0;

/// Tolerances and limits for every numerical integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Where Gaussian envelopes are cut, in units of the envelope width.
    pub truncation_sigmas: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 10_000,
            truncation_sigmas: 10.0,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        abs_tol: f64,
        rel_tol: f64,
        max_subdivisions: usize,
        truncation_sigmas: f64,
    ) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
            truncation_sigmas,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same spec with both tolerances replaced.
    pub fn with_tolerance(self, tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidInput(format!(
                "quadrature tolerances must be positive (abs_tol = {}, rel_tol = {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidInput(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if !(self.truncation_sigmas >= 6.0) {
            return Err(Error::InvalidInput(format!(
                "truncation_sigmas must be >= 6, got {}",
                self.truncation_sigmas
            )));
        }
        Ok(())
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Value of a definite integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // Max-heap on the error; ties broken by position so the order of
    // refinement is fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> Segment
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = fc.norm() * WGK[7];

    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let abs_half = half.abs();
    let value = kronrod * half;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut error = ((kronrod - gauss) * half).norm();

    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }

    Segment { a, b, value, error }
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// The interval with the largest error estimate is halved until the summed
/// estimate drops below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    integrate_adaptive_panels(f, &[a, b], spec)
}

/// Like [`integrate_adaptive`], but starts from the panels delimited by
/// `breakpoints` (strictly increasing, at least two entries).
pub fn integrate_adaptive_panels<F>(
    f: F,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if breakpoints.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two breakpoints".into(),
        ));
    }
    if breakpoints
        .windows(2)
        .any(|w| !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite())
    {
        return Err(Error::InvalidInput(
            "integration limits must be finite and strictly increasing".into(),
        ));
    }
    if breakpoints.len() - 1 > spec.max_subdivisions {
        return Err(Error::SubdivisionLimit {
            limit: spec.max_subdivisions,
            error_estimate: f64::INFINITY,
        });
    }

    let mut heap: BinaryHeap<Segment> = breakpoints
        .windows(2)
        .map(|w| gauss_kronrod_15(&f, w[0], w[1]))
        .collect();

    loop {
        let (value, error) = totals(&heap);
        if error <= spec.target(value) {
            return Ok(Integral { value, error });
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::SubdivisionLimit {
                limit: spec.max_subdivisions,
                error_estimate: error,
            });
        }

        // Refine a batch of the worst segments before re-summing; the
        // batch is small relative to the heap so refinement stays greedy.
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            if heap.len() >= spec.max_subdivisions {
                break;
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // Interval exhausted at machine precision.
                let error_estimate = totals(&heap).1 + worst.error;
                return Err(Error::SubdivisionLimit {
                    limit: spec.max_subdivisions,
                    error_estimate,
                });
            }
            heap.push(gauss_kronrod_15(&f, worst.a, mid));
            heap.push(gauss_kronrod_15(&f, mid, worst.b));
        }
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (Complex64, f64) {
    // Sum in position order so the result does not depend on heap layout.
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    segs.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), s| {
        (v + s.value, e + s.error)
    })
}

/// Integrates `f` over `[max(0, center - T*width), center + T*width]`, where
/// `T = spec.truncation_sigmas`.
///
/// `f` must already contain an envelope that decays at least like
/// `exp(-((x - center) / width)^2 / 2)`. The returned error adds a tail
/// estimate `(|f(lo)| + |f(hi)|) * width / T` (Mills-ratio bound on the
/// discarded Gaussian tails) to the quadrature estimate; the lower tail is
/// omitted when the window is clipped at zero.
pub fn integrate_gaussian_envelope<F>(
    f: F,
    center: f64,
    width: f64,
    spec: &QuadratureSpec,
) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(width > 0.0) || !width.is_finite() || !center.is_finite() {
        return Err(Error::InvalidInput(format!(
            "envelope needs finite center and positive width (center = {center}, width = {width})"
        )));
    }
    let reach = spec.truncation_sigmas * width;
    let lo = (center - reach).max(0.0);
    let hi = center + reach;
    if !(hi > lo) {
        return Err(Error::InvalidInput(
            "envelope window lies entirely below zero".into(),
        ));
    }
    integrate_window(f, lo, hi, center - reach > 0.0, width, spec)
}

pub(crate) fn integrate_window<F>(
    f: F,
    lo: f64,
    hi: f64,
    lower_tail: bool,
    width: f64,
    spec: &QuadratureSpec,
) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    // One starting panel per envelope width.
    let panels = (((hi - lo) / width).ceil() as usize).clamp(1, spec.max_subdivisions);
    let step = (hi - lo) / panels as f64;
    let mut breaks: Vec<f64> = (0..panels).map(|i| lo + step * i as f64).collect();
    breaks.push(hi);

    let mut integral = integrate_adaptive_panels(&f, &breaks, spec)?;
    let mut tail = f(hi).norm();
    if lower_tail {
        tail += f(lo).norm();
    }
    integral.error += tail * width / spec.truncation_sigmas;
    Ok(integral)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}
