use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regulator values (decreasing towards zero) and the polynomial order used
/// to extrapolate a regularised quantity to vanishing regulator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtrapolationSpec {
    pub regulator_sequence: Vec<f64>,
    pub order: usize,
}

impl ExtrapolationSpec {
    pub fn new(regulator_sequence: Vec<f64>, order: usize) -> Result<Self> {
        let spec = Self {
            regulator_sequence,
            order,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(Error::InvalidInput("extrapolation order must be >= 1".into()));
        }
        check_decreasing(self.regulator_sequence.iter().copied())
    }
}

impl Default for ExtrapolationSpec {
    /// `{0.1, 0.05, 0.025, 0.0125}`, second order.
    fn default() -> Self {
        Self {
            regulator_sequence: vec![0.1, 0.05, 0.025, 0.0125],
            order: 2,
        }
    }
}

fn check_decreasing(eps: impl Iterator<Item = f64>) -> Result<()> {
    let mut prev = f64::INFINITY;
    for e in eps {
        if !(e > 0.0) || !(e < prev) {
            return Err(Error::InvalidInput(
                "regulators must be positive and strictly decreasing".into(),
            ));
        }
        prev = e;
    }
    Ok(())
}

/// Polynomial extrapolation to zero regulator.
///
/// `values` holds `(eps, f(eps))` pairs ordered by decreasing `eps`. The
/// `order + 1` samples with the smallest regulators are interpolated by a
/// polynomial of degree `order` (Neville's scheme), which is evaluated at
/// `eps = 0`.
pub fn richardson_extrapolate(
    values: &[(f64, Complex64)],
    spec: &ExtrapolationSpec,
) -> Result<Complex64> {
    let needed = spec.order + 1;
    if values.len() < needed {
        return Err(Error::InsufficientSamples {
            order: spec.order,
            needed,
            got: values.len(),
        });
    }
    check_decreasing(values.iter().map(|v| v.0))?;

    let tail = &values[values.len() - needed..];
    let xs: Vec<f64> = tail.iter().map(|v| v.0).collect();
    let mut p: Vec<Complex64> = tail.iter().map(|v| v.1).collect();
    for k in 1..needed {
        for i in 0..needed - k {
            let (xi, xk) = (xs[i], xs[i + k]);
            p[i] = (p[i] * (-xk) - p[i + 1] * (-xi)) / (xi - xk);
        }
    }
    Ok(p[0])
}
