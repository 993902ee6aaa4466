//! Wave front set detection with wave packet transforms.

// `!(a >= b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod detector;
pub mod error;
mod fit;
pub mod grid;
pub mod hamflow;
pub mod propagator;
pub mod signal;
pub mod window;
pub mod window_dynamics;
pub mod wpt;

pub use error::{Result, WfError};
