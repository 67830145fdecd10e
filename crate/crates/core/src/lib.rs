//! Energy data-trading duopoly: an enterprise sells data directly (price `p1`)
//! and wholesale through a trading platform, which resells it (price `p2`) and
//! invests in business value `s`.
//!
//! The crate is `no_std` with `alloc` and holds every numerical piece:
//!
//! * [`model`]: one-shot game, closed-form Nash equilibrium and regime tests.
//! * [`dynamics`]: the bounded-rationality map, its eight fixed points, the
//!   Jacobian, Jury stability and the hybrid-controlled map.
//! * [`analysis`]: orbits, attractor detection, Lyapunov exponents, parameter
//!   scans, basins of attraction and control-threshold search.
//!
//! File formats, configuration and parallel execution live in the
//! `datagame-cli` crate.
#![no_std]
// NaN must fail range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod dynamics;
mod error;
pub mod model;

pub use error::Error;

/// Width of the numerical band around strict inequalities (regime thresholds,
/// Jury margins) inside which results are reported as boundary cases.
pub const BOUNDARY_BAND: f64 = 1e-9;
