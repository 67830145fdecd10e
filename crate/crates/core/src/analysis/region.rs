use alloc::vec::Vec;

use super::Axis;
use crate::dynamics::{classify_state, AdjustmentRates, Stability};
use crate::model::{equilibrium_closed_form, ModelParams};
use crate::Error;

/// One voxel of the stability region of the interior equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Voxel {
    pub rates: AdjustmentRates,
    pub stability: Stability,
}

impl Voxel {
    pub fn is_stable(&self) -> bool {
        self.stability == Stability::Stable
    }
}

/// Jury classification of the interior equilibrium at every voxel center of
/// the `(alpha1, alpha2, alpha3)` box. Order: `alpha1` fastest, then
/// `alpha2`, then `alpha3`.
pub fn stability_region_3d(
    params: &ModelParams,
    alpha1: &Axis,
    alpha2: &Axis,
    alpha3: &Axis,
) -> Result<Vec<Voxel>, Error> {
    if !(alpha1.lo >= 0.0 && alpha2.lo >= 0.0 && alpha3.lo >= 0.0) {
        return Err(Error::InvalidSetting("rate ranges must be positive"));
    }
    let e8 = equilibrium_closed_form(params)?;
    let mut out = Vec::with_capacity(alpha1.n * alpha2.n * alpha3.n);
    for k in 0..alpha3.n {
        for j in 0..alpha2.n {
            for i in 0..alpha1.n {
                let rates = AdjustmentRates::new(alpha1.value(i), alpha2.value(j), alpha3.value(k));
                out.push(Voxel {
                    rates,
                    stability: classify_state(params, &rates, &e8),
                });
            }
        }
    }
    Ok(out)
}
