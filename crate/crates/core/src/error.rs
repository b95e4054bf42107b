use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("adaptive quadrature hit its limit of {limit} subdivisions (error estimate {error_estimate:e})")]
    SubdivisionLimit { limit: usize, error_estimate: f64 },

    #[error("function values at the bracket ends do not change sign")]
    NoSignChange,

    #[error("extrapolation of order {order} needs {needed} samples, got {got}")]
    InsufficientSamples { order: usize, needed: usize, got: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("oscillation parameter {parameter:.3} exceeds the quadrature budget {budget}")]
    OscillationBudget { parameter: f64, budget: f64 },

    #[error("grid [{r_min}, {r_max}] does not cover the required support [{need_min}, {need_max}]")]
    GridTooSmall {
        r_min: f64,
        r_max: f64,
        need_min: f64,
        need_max: f64,
    },

    #[error("point lies on the light cone r = ct, where the Green's function diverges")]
    OnLightCone,

    #[error("r = {r} is within the {margin}% exclusion zone around the front ct = {front}")]
    TooCloseToFront { r: f64, front: f64, margin: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
