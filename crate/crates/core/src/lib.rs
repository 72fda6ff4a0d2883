//! Explicit subsolutions, waiting-time bounds and a radial finite-volume
//! solver for the relativistic and the speed-limited porous medium equations.

// `!(x > 0.0)` is used on purpose so that NaN is rejected along with the rest.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod model;
pub mod numerics;
pub mod solver;
pub mod subsolutions;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Equation, ModelKind};
