//! Long-run behavior of the game map and of any other smooth discrete map.
//!
//! Everything here is written against [`DiscreteMap`], so the engine can be
//! checked on maps with known answers (the logistic map) before it is trusted
//! on the game. Grid computations take a [`GridRunner`]: cell results are pure
//! functions of the cell index and class ids are handed out afterwards in one
//! sequential row-major pass, so the output does not depend on how the cells
//! were scheduled.

mod attractor;
mod basin;
mod control;
mod lyapunov;
mod orbit;
mod raster;
mod region;
mod scan;

use alloc::vec::Vec;

use crate::dynamics::{self, AdjustmentRates, ControlParam};
use crate::model::{ModelParams, StrategyState};
use crate::Error;

pub use attractor::{detect_attractor, AttractorClass, AttractorKind};
pub use basin::{basin_raster, basin_volume, BasinVolume};
pub use control::{find_control_threshold, stability_boundary, ControlThreshold};
pub use lyapunov::largest_lyapunov;
pub use orbit::{simulate_orbit, OrbitResult};
pub use raster::{Axis, CatalogEntry, Raster, DIVERGENT_ID, UNRESOLVED_ID};
pub use region::{stability_region_3d, Voxel};
pub use scan::{
    bifurcation_scan_1d, scan_2d, BifurcationPoint, InitialPolicy, ScanMode, ScanRaster, Sweep,
    SweepParam,
};

/// A differentiable map on `R^N`.
pub trait DiscreteMap<const N: usize> {
    fn step(&self, x: &[f64; N]) -> [f64; N];

    /// Exact derivative of [`DiscreteMap::step`], row-major.
    fn jacobian(&self, x: &[f64; N]) -> [[f64; N]; N];

    fn dimension(&self) -> usize {
        N
    }
}

/// The game map, optionally under hybrid control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameMap {
    pub params: ModelParams,
    pub rates: AdjustmentRates,
    pub control: Option<ControlParam>,
}

impl GameMap {
    pub fn new(params: ModelParams, rates: AdjustmentRates) -> Self {
        Self {
            params,
            rates,
            control: None,
        }
    }

    pub fn controlled(params: ModelParams, rates: AdjustmentRates, control: ControlParam) -> Self {
        Self {
            params,
            rates,
            control: Some(control),
        }
    }
}

impl DiscreteMap<3> for GameMap {
    fn step(&self, x: &[f64; 3]) -> [f64; 3] {
        let x = StrategyState::from_array(*x);
        match self.control {
            None => dynamics::step(&self.params, &self.rates, &x),
            Some(c) => dynamics::controlled_step(&self.params, &self.rates, c, &x),
        }
        .to_array()
    }

    fn jacobian(&self, x: &[f64; 3]) -> [[f64; 3]; 3] {
        let x = StrategyState::from_array(*x);
        match self.control {
            None => dynamics::jacobian(&self.params, &self.rates, &x),
            Some(c) => {
                // kappa J + (1 - kappa) I
                let k = c.kappa();
                let mut j = dynamics::jacobian(&self.params, &self.rates, &x);
                for (i, row) in j.iter_mut().enumerate() {
                    for (l, v) in row.iter_mut().enumerate() {
                        *v = k * *v + if i == l { 1.0 - k } else { 0.0 };
                    }
                }
                j
            }
        }
    }
}

/// `x -> mu x (1 - x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticMap {
    pub mu: f64,
}

impl DiscreteMap<1> for LogisticMap {
    fn step(&self, x: &[f64; 1]) -> [f64; 1] {
        [self.mu * x[0] * (1.0 - x[0])]
    }

    fn jacobian(&self, x: &[f64; 1]) -> [[f64; 1]; 1] {
        [[self.mu * (1.0 - 2.0 * x[0])]]
    }
}

/// Orbit lengths and tolerances shared by the scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSettings {
    pub n_transient: usize,
    pub n_keep: usize,
    /// Any |component| above this (or non-finite) marks the orbit divergent.
    pub divergence_bound: f64,
    /// Sup-norm revisit distance accepted as periodic.
    pub cycle_tol: f64,
    pub max_period: usize,
    /// Orbits without a detected period are chaotic above this exponent.
    pub lle_threshold: f64,
    pub lle_steps: usize,
    /// Sup-norm distance under which two attractors' points are identified.
    pub match_tol: f64,
}

impl OrbitSettings {
    /// Defaults for one-parameter scans (200 kept samples).
    pub const SCAN_1D: OrbitSettings = OrbitSettings {
        n_transient: 5_000,
        n_keep: 200,
        divergence_bound: 1e6,
        cycle_tol: 1e-5,
        max_period: 32,
        lle_threshold: 0.005,
        lle_steps: 20_000,
        match_tol: 1e-3,
    };

    /// Defaults for rasters (64 kept samples).
    pub const RASTER: OrbitSettings = OrbitSettings {
        n_keep: 64,
        ..Self::SCAN_1D
    };

    pub fn validate(&self) -> Result<(), Error> {
        if self.n_keep == 0 {
            return Err(Error::InvalidSetting("n_keep must be at least 1"));
        }
        if !(self.divergence_bound > 0.0) {
            return Err(Error::InvalidSetting("divergence_bound must be positive"));
        }
        if !(self.cycle_tol > 0.0) || !(self.match_tol > 0.0) {
            return Err(Error::InvalidSetting("tolerances must be positive"));
        }
        if self.max_period == 0 {
            return Err(Error::InvalidSetting("max_period must be at least 1"));
        }
        if self.lle_steps < 1000 {
            return Err(Error::InvalidSetting("lle_steps must be at least 1000"));
        }
        Ok(())
    }
}

impl Default for OrbitSettings {
    fn default() -> Self {
        Self::RASTER
    }
}

/// Evaluates `f(0..n)` and returns the results in index order.
pub trait GridRunner {
    fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

/// Single-threaded runner.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl GridRunner for Sequential {
    fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..n).map(f).collect()
    }
}

pub(crate) fn sup_dist<const N: usize>(x: &[f64; N], y: &[f64; N]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
