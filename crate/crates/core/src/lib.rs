// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dalembert;
pub mod error;
pub mod evolution;
pub mod numerics;
pub mod schrodinger;
pub mod special;

pub use error::{Error, Result};
