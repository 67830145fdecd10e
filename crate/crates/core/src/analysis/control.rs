use super::SweepParam;
use crate::dynamics::{char_coeffs, jacobian, jury_stable, spectral_radius, AdjustmentRates};
use crate::model::{equilibrium_closed_form, ModelParams, StrategyState};
use crate::Error;

/// Result of [`find_control_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlThreshold {
    /// Supremum of gains below which the controlled equilibrium is stable.
    pub kappa_star: f64,
    /// The uncontrolled equilibrium is already stable; `kappa_star` is 1.
    pub already_stable: bool,
}

const COARSE_STEPS: usize = 1000;
const BISECTIONS: usize = 60;

fn e8_stable(params: &ModelParams, rates: &AdjustmentRates, e8: &StrategyState) -> bool {
    jury_stable(&char_coeffs(&jacobian(params, rates, e8)))
}

/// Largest control gain that keeps the interior equilibrium Jury-stable.
///
/// The controlled map equals the plain map with every rate scaled by the
/// gain, so the search runs on `rates * kappa`: a coarse upward scan finds
/// the first unstable gain and bisection refines the crossing.
pub fn find_control_threshold(
    params: &ModelParams,
    rates: &AdjustmentRates,
) -> Result<ControlThreshold, Error> {
    let e8 = equilibrium_closed_form(params)?;
    if e8_stable(params, rates, &e8) {
        return Ok(ControlThreshold {
            kappa_star: 1.0,
            already_stable: true,
        });
    }
    let stable_at = |k: f64| e8_stable(params, &rates.scaled(k), &e8);
    let first = 1.0 / COARSE_STEPS as f64;
    if !stable_at(first) {
        return Err(Error::Precondition(
            "equilibrium is unstable even for the smallest control gain",
        ));
    }
    let mut lo = first;
    let mut hi = 1.0;
    for i in 2..=COARSE_STEPS {
        let k = i as f64 / COARSE_STEPS as f64;
        if !stable_at(k) {
            hi = k;
            break;
        }
        lo = k;
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if stable_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ControlThreshold {
        kappa_star: 0.5 * (lo + hi),
        already_stable: false,
    })
}

/// Value of one rate (or of the control gain) in `[lo, hi]` where the
/// spectral radius of the interior equilibrium's Jacobian crosses 1, found by
/// bisection on the eigenvalues. Requires `lo` inside and `hi` outside the
/// unit circle.
pub fn stability_boundary(
    params: &ModelParams,
    rates: &AdjustmentRates,
    param: SweepParam,
    lo: f64,
    hi: f64,
) -> Result<f64, Error> {
    let e8 = equilibrium_closed_form(params)?;
    let radius = |v: f64| {
        let r = match param {
            SweepParam::Alpha1 => AdjustmentRates { alpha1: v, ..*rates },
            SweepParam::Alpha2 => AdjustmentRates { alpha2: v, ..*rates },
            SweepParam::Alpha3 => AdjustmentRates { alpha3: v, ..*rates },
            SweepParam::Kappa => rates.scaled(v),
        };
        spectral_radius(&char_coeffs(&jacobian(params, &r, &e8)))
    };
    if !(radius(lo) < 1.0 && radius(hi) > 1.0) {
        return Err(Error::Precondition(
            "bracket must go from spectral radius below 1 to above 1",
        ));
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if radius(mid) < 1.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: ModelParams = ModelParams::BASELINE;

    #[test]
    fn stable_rates_need_no_control() {
        let t = find_control_threshold(&BASE, &AdjustmentRates::new(0.1, 0.1, 0.1)).unwrap();
        assert_eq!(t.kappa_star, 1.0);
        assert!(t.already_stable);
    }

    #[test]
    fn threshold_scales_inversely_with_rates() {
        let rates = AdjustmentRates::new(0.58, 0.3, 0.3);
        let t = find_control_threshold(&BASE, &rates).unwrap();
        assert!(!t.already_stable);
        assert!(t.kappa_star > 0.0 && t.kappa_star < 1.0);
        let t2 = find_control_threshold(&BASE, &rates.scaled(2.0)).unwrap();
        assert!((t2.kappa_star - 0.5 * t.kappa_star).abs() < 1e-6);
    }

    #[test]
    fn boundary_matches_jury() {
        let rates = AdjustmentRates::new(0.1, 0.3, 0.3);
        let b = stability_boundary(&BASE, &rates, SweepParam::Alpha1, 0.05, 0.6).unwrap();
        let e8 = equilibrium_closed_form(&BASE).unwrap();
        let at = |v: f64| e8_stable(&BASE, &AdjustmentRates { alpha1: v, ..rates }, &e8);
        assert!(at(b - 1e-7));
        assert!(!at(b + 1e-7));
        assert!(stability_boundary(&BASE, &rates, SweepParam::Alpha1, 0.6, 0.7).is_err());
    }
}
