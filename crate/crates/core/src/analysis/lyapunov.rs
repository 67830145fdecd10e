use super::DiscreteMap;
use crate::Error;

/// Largest Lyapunov exponent by tangent-vector propagation (Benettin).
///
/// After `n_transient` steps a unit tangent vector is pushed through the
/// Jacobian along the orbit and renormalized every step; the result is the
/// mean log stretch over `n_sum` steps. A divergent orbit returns
/// `f64::INFINITY`; a tangent vector mapped exactly to zero (superstable
/// point) returns `f64::NEG_INFINITY`.
pub fn largest_lyapunov<const N: usize, M: DiscreteMap<N> + ?Sized>(
    map: &M,
    x0: &[f64; N],
    n_transient: usize,
    n_sum: usize,
    divergence_bound: f64,
) -> Result<f64, Error> {
    if n_sum < 1000 {
        return Err(Error::InvalidSetting("n_sum must be at least 1000"));
    }
    let escaped = |x: &[f64; N]| x.iter().any(|v| !(v.abs() <= divergence_bound));
    let mut x = *x0;
    for _ in 0..n_transient {
        x = map.step(&x);
        if escaped(&x) {
            return Ok(f64::INFINITY);
        }
    }
    let mut v = [1.0 / libm::sqrt(N as f64); N];
    let mut sum = 0.0;
    for _ in 0..n_sum {
        let j = map.jacobian(&x);
        let mut w = [0.0; N];
        for (wi, row) in w.iter_mut().zip(&j) {
            *wi = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let norm = libm::sqrt(w.iter().map(|c| c * c).sum());
        if norm == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        if !norm.is_finite() {
            return Ok(f64::INFINITY);
        }
        sum += libm::log(norm);
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        x = map.step(&x);
        if escaped(&x) {
            return Ok(f64::INFINITY);
        }
    }
    Ok(sum / n_sum as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{GameMap, LogisticMap};
    use crate::dynamics::{char_coeffs, jacobian, spectral_radius, AdjustmentRates};
    use crate::model::{equilibrium_closed_form, ModelParams};

    #[test]
    fn logistic_oracles() {
        let l = largest_lyapunov(&LogisticMap { mu: 4.0 }, &[0.1234], 1000, 100_000, 1e6).unwrap();
        assert!((l - core::f64::consts::LN_2).abs() < 0.01, "{l}");
        let l = largest_lyapunov(&LogisticMap { mu: 3.2 }, &[0.1234], 1000, 20_000, 1e6).unwrap();
        assert!(l < 0.0);
        // Stable fixed point 1 - 1/mu with multiplier 2 - mu.
        let l = largest_lyapunov(&LogisticMap { mu: 2.5 }, &[0.3], 1000, 5_000, 1e6).unwrap();
        assert!((l - libm::log(0.5)).abs() < 1e-9, "{l}");
    }

    #[test]
    fn stable_game_matches_spectral_radius() {
        let p = ModelParams::BASELINE;
        let rates = AdjustmentRates::new(0.1, 0.1, 0.1);
        let l = largest_lyapunov(&GameMap::new(p, rates), &[1.0, 1.0, 1.0], 5_000, 20_000, 1e6)
            .unwrap();
        let e8 = equilibrium_closed_form(&p).unwrap();
        let rho = spectral_radius(&char_coeffs(&jacobian(&p, &rates, &e8)));
        assert!(l < 0.0);
        assert!((l - libm::log(rho)).abs() < 0.01, "{l} vs {}", libm::log(rho));
    }

    #[test]
    fn identity_map_has_zero_exponent() {
        let map = GameMap::new(ModelParams::BASELINE, AdjustmentRates::new(0.0, 0.0, 0.0));
        let l = largest_lyapunov(&map, &[1.0, 2.0, 3.0], 10, 1000, 1e6).unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn divergence_and_short_sums() {
        let map = LogisticMap { mu: 5.0 };
        assert_eq!(largest_lyapunov(&map, &[0.3], 0, 1000, 1e6).unwrap(), f64::INFINITY);
        assert!(largest_lyapunov(&map, &[0.3], 0, 999, 1e6).is_err());
    }
}
