use num_complex::Complex64;

use crate::error::{Error, Result};

/// Composite trapezoid rule on an arbitrary increasing grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Natural cubic spline through complex samples. Evaluates to zero outside
/// the sampled range.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<Complex64>,
    // second derivatives at the knots
    m: Vec<Complex64>,
    uniform_step: Option<f64>,
}

impl CubicSpline {
    pub fn new(xs: &[f64], ys: &[Complex64]) -> Result<Self> {
        let n = xs.len();
        if n < 3 || ys.len() != n {
            return Err(Error::InvalidInput(
                "spline needs at least three samples and matching lengths".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("spline knots must be strictly increasing".into()));
        }

        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        // Thomas algorithm for the interior second derivatives; m[0] = m[n-1] = 0.
        let zero = Complex64::new(0.0, 0.0);
        let mut diag = vec![0.0; n];
        let mut rhs = vec![zero; n];
        let mut m = vec![zero; n];
        for i in 1..n - 1 {
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            rhs[i] = ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]) * 6.0;
        }
        for i in 2..n - 1 {
            let w = h[i - 1] / diag[i - 1];
            diag[i] -= w * h[i - 1];
            rhs[i] = rhs[i] - rhs[i - 1] * w;
        }
        for i in (1..n - 1).rev() {
            m[i] = (rhs[i] - m[i + 1] * h[i]) / diag[i];
        }

        let step = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        let uniform = h.iter().all(|&hi| (hi - step).abs() <= 1e-9 * step);

        Ok(Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            m,
            uniform_step: uniform.then_some(step),
        })
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    fn interval(&self, x: f64) -> usize {
        let last = self.xs.len() - 2;
        match self.uniform_step {
            Some(step) => {
                let i = ((x - self.xs[0]) / step) as usize;
                let i = i.min(last);
                // guard against rounding at knot boundaries
                if x < self.xs[i] && i > 0 {
                    i - 1
                } else if x > self.xs[i + 1] && i < last {
                    i + 1
                } else {
                    i
                }
            }
            None => self.xs.partition_point(|&k| k <= x).saturating_sub(1).min(last),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if !(x >= self.x_min() && x <= self.x_max()) {
            return Complex64::new(0.0, 0.0);
        }
        let i = self.interval(x);
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        self.ys[i] * a
            + self.ys[i + 1] * b
            + (self.m[i] * (a * a * a - a) + self.m[i + 1] * (b * b * b - b)) * (h * h / 6.0)
    }
}
