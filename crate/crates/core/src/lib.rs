//! Explicit descent on hyperelliptic Jacobians over function fields of finite fields.

pub mod error;
pub mod cli_reports;
pub mod curves_places;
pub mod descent_maps;
pub mod elliptic_ff;
pub mod exact_algebra;
pub mod mumford_jacobian;
pub mod rank_bounds;

pub use error::{Error, Result};
