use alloc::vec::Vec;

use super::DiscreteMap;
use crate::Error;

/// Post-transient part of an orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult<const N: usize> {
    /// Kept samples; truncated at divergence.
    pub samples: Vec<[f64; N]>,
    pub diverged: bool,
    /// Number of map applications after which the bound was exceeded.
    pub diverged_at: Option<usize>,
    /// Last finite state reached.
    pub final_state: [f64; N],
}

fn escaped<const N: usize>(x: &[f64; N], bound: f64) -> bool {
    x.iter().any(|v| !(v.abs() <= bound))
}

/// Iterates `map` from `x0`, drops `n_transient` states and keeps the next
/// `n_keep`.
pub fn simulate_orbit<const N: usize, M: DiscreteMap<N> + ?Sized>(
    map: &M,
    x0: &[f64; N],
    n_transient: usize,
    n_keep: usize,
    divergence_bound: f64,
) -> Result<OrbitResult<N>, Error> {
    if n_keep == 0 {
        return Err(Error::InvalidSetting("n_keep must be at least 1"));
    }
    if !(divergence_bound > 0.0) {
        return Err(Error::InvalidSetting("divergence_bound must be positive"));
    }
    let mut samples = Vec::with_capacity(n_keep);
    if escaped(x0, divergence_bound) {
        return Ok(OrbitResult {
            samples,
            diverged: true,
            diverged_at: Some(0),
            final_state: *x0,
        });
    }
    let mut x = *x0;
    for t in 1..=n_transient + n_keep {
        let next = map.step(&x);
        if escaped(&next, divergence_bound) {
            return Ok(OrbitResult {
                samples,
                diverged: true,
                diverged_at: Some(t),
                final_state: x,
            });
        }
        x = next;
        if t > n_transient {
            samples.push(x);
        }
    }
    Ok(OrbitResult {
        samples,
        diverged: false,
        diverged_at: None,
        final_state: x,
    })
}
