//! One-shot pricing game between the data-owning enterprise and the trading
//! platform.
//!
//! Demand is linear in both prices and in the platform's business value `s`.
//! The pre-processing cost of the data is normalized to zero and has no
//! parameter.

use crate::{Error, BOUNDARY_BAND};

/// Static game parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Potential market size.
    pub a: f64,
    /// Cross-price elasticity between the two channels.
    pub b: f64,
    /// Consumer sensitivity to the platform's business value.
    pub theta: f64,
    /// Quadratic investment-cost coefficient of the platform.
    pub eta: f64,
    /// Wholesale price per unit of data paid by the platform.
    pub r: f64,
}

impl ModelParams {
    /// The reference parameter set used throughout the numerical experiments.
    pub const BASELINE: ModelParams = ModelParams {
        a: 2.0,
        b: 0.4,
        theta: 0.2,
        eta: 0.5,
        r: 0.6,
    };

    /// Checks the admissible ranges `a > 0`, `0 < b <= 1`, `0 < theta < 1`,
    /// `eta > 0`, `r > 0`. NaN fails every check.
    pub fn validate(&self) -> Result<(), Error> {
        let check = |ok: bool, field, bound, value| {
            if ok {
                Ok(())
            } else {
                Err(Error::OutOfRange { field, bound, value })
            }
        };
        check(self.a > 0.0, "a", "a > 0", self.a)?;
        check(self.b > 0.0 && self.b <= 1.0, "b", "0 < b <= 1", self.b)?;
        check(
            self.theta > 0.0 && self.theta < 1.0,
            "theta",
            "0 < theta < 1",
            self.theta,
        )?;
        check(self.eta > 0.0, "eta", "eta > 0", self.eta)?;
        check(self.r > 0.0, "r", "r > 0", self.r)
    }

    /// `3 b eta - 2 theta^2`, the denominator of the interior equilibrium.
    pub fn equilibrium_denominator(&self) -> f64 {
        3.0 * self.b * self.eta - 2.0 * self.theta * self.theta
    }

    /// `2 b eta - theta^2`, the determinant of the platform's profit Hessian.
    pub fn hessian_determinant(&self) -> f64 {
        2.0 * self.b * self.eta - self.theta * self.theta
    }

    fn checked_denominator(&self) -> Result<f64, Error> {
        let d = self.equilibrium_denominator();
        if d.abs() <= BOUNDARY_BAND || !d.is_finite() {
            return Err(Error::SingularDenominator {
                expr: "3*b*eta - 2*theta^2",
                value: d,
            });
        }
        Ok(d)
    }
}

/// A point `(p1, p2, s)` in decision space. Negative coordinates are allowed so
/// that boundary equilibria with negative business value can be represented.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StrategyState {
    /// Direct-sale price set by the enterprise.
    pub p1: f64,
    /// Resale price set by the platform.
    pub p2: f64,
    /// Business value per unit of data chosen by the platform.
    pub s: f64,
}

impl StrategyState {
    pub const fn new(p1: f64, p2: f64, s: f64) -> Self {
        Self { p1, p2, s }
    }

    /// All coordinates non-negative.
    pub fn is_admissible(&self) -> bool {
        self.p1 >= 0.0 && self.p2 >= 0.0 && self.s >= 0.0
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.p1, self.p2, self.s]
    }

    pub const fn from_array(x: [f64; 3]) -> Self {
        Self::new(x[0], x[1], x[2])
    }
}

impl From<[f64; 3]> for StrategyState {
    fn from(x: [f64; 3]) -> Self {
        Self::from_array(x)
    }
}

impl From<StrategyState> for [f64; 3] {
    fn from(x: StrategyState) -> Self {
        x.to_array()
    }
}

/// Demands and profits at a given strategy profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketOutcome {
    pub d1: f64,
    pub d2: f64,
    /// Enterprise profit.
    pub pi1: f64,
    /// Platform profit.
    pub pi2: f64,
}

/// Ordering of the two equilibrium prices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PriceOrdering {
    P1Greater,
    P2Greater,
    Equal,
}

/// Ordering of the two equilibrium profits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfitOrdering {
    Pi1Greater,
    Pi2Greater,
    Equal,
}

/// Channel demands `(d1, d2)`. Either may be negative.
pub fn demand(params: &ModelParams, x: &StrategyState) -> (f64, f64) {
    let d1 = params.a - params.b * (x.p1 - x.p2);
    let d2 = params.a - params.b * (x.p2 - x.p1) + params.theta * x.s;
    (d1, d2)
}

/// Enterprise profit `d1 p1 + d2 r` and platform profit
/// `d2 (p2 - r) - eta s^2 / 2`.
pub fn profits(params: &ModelParams, x: &StrategyState) -> MarketOutcome {
    let (d1, d2) = demand(params, x);
    MarketOutcome {
        d1,
        d2,
        pi1: d1 * x.p1 + d2 * params.r,
        pi2: d2 * (x.p2 - params.r) - 0.5 * params.eta * x.s * x.s,
    }
}

/// Interior Nash equilibrium of the simultaneous game.
pub fn equilibrium_closed_form(params: &ModelParams) -> Result<StrategyState, Error> {
    let ModelParams { a, b, theta, eta, r } = *params;
    let d = params.checked_denominator()?;
    Ok(StrategyState {
        p1: r + 0.5 * a * (1.0 / b + 3.0 * eta / d),
        p2: r + 3.0 * a * eta / d,
        s: 3.0 * a * theta / d,
    })
}

/// Closed-form equilibrium profits `(pi1, pi2)`.
pub fn equilibrium_profits(params: &ModelParams) -> Result<(f64, f64), Error> {
    let ModelParams { a, b, theta, eta, r } = *params;
    let d = params.checked_denominator()?;
    let t2 = theta * theta;
    let gap = t2 - 3.0 * b * eta;
    let pi1 = a * (b * r * d * (6.0 * b * eta - t2) + a * gap * gap) / (b * d * d);
    let pi2 = 9.0 * a * a * eta * (2.0 * b * eta - t2) / (2.0 * d * d);
    Ok((pi1, pi2))
}

/// Second-order condition: the platform Hessian `[[-2b, theta], [theta, -eta]]`
/// is negative definite, i.e. `eta > theta^2 / (2b)`.
pub fn concavity_holds(params: &ModelParams) -> bool {
    params.b > 0.0 && params.hessian_determinant() > 0.0
}

/// Sign of `p1 - p2` at the equilibrium via the `eta` threshold `2 theta^2 / (3b)`.
pub fn price_regime(params: &ModelParams) -> Result<PriceOrdering, Error> {
    if !concavity_holds(params) {
        return Err(Error::Precondition("concavity requires eta > theta^2/(2b)"));
    }
    let d = params.checked_denominator()?;
    // p1 - p2 = -a theta^2 / (b d); only a vanishing theta makes them equal.
    if params.a * params.theta * params.theta <= BOUNDARY_BAND {
        return Ok(PriceOrdering::Equal);
    }
    Ok(if d < 0.0 {
        PriceOrdering::P1Greater
    } else {
        PriceOrdering::P2Greater
    })
}

/// Wholesale price at which the two equilibrium profits coincide:
/// `a theta^2 / (12 b^2 eta - 2 b theta^2)`.
pub fn wholesale_threshold(params: &ModelParams) -> Result<f64, Error> {
    let ModelParams { a, b, theta, eta, .. } = *params;
    let den = 12.0 * b * b * eta - 2.0 * b * theta * theta;
    if !(den > 0.0) {
        return Err(Error::SingularDenominator {
            expr: "12*b^2*eta - 2*b*theta^2",
            value: den,
        });
    }
    Ok(a * theta * theta / den)
}

/// Sign of `pi1 - pi2` at the equilibrium from the four-region case split on
/// `eta` against `2 theta^2 / (3b)` and `r` against [`wholesale_threshold`].
pub fn profit_regime(params: &ModelParams) -> Result<ProfitOrdering, Error> {
    if !concavity_holds(params) {
        return Err(Error::Precondition("concavity requires eta > theta^2/(2b)"));
    }
    let d = params.checked_denominator()?;
    let r_hat = wholesale_threshold(params)?;
    let r = params.r;
    if (r - r_hat).abs() <= BOUNDARY_BAND * r_hat.abs().max(1.0) {
        return Ok(ProfitOrdering::Equal);
    }
    let low_eta = d < 0.0;
    let low_r = r < r_hat;
    Ok(if low_eta == low_r {
        ProfitOrdering::Pi1Greater
    } else {
        ProfitOrdering::Pi2Greater
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const BASE: ModelParams = ModelParams::BASELINE;

    #[test]
    fn demand_examples() {
        let (d1, d2) = demand(&BASE, &StrategyState::new(1.0, 1.0, 1.0));
        assert_abs_diff_eq!(d1, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d2, 2.2, epsilon = 1e-15);

        let (d1, d2) = demand(&BASE, &StrategyState::new(3.7, 3.7, 0.0));
        assert_eq!((d1, d2), (BASE.a, BASE.a));

        let e = equilibrium_closed_form(&BASE).unwrap();
        let (d1, d2) = demand(&BASE, &e);
        assert_abs_diff_eq!(d1, 2.153846, epsilon = 1e-6);
        assert_abs_diff_eq!(d2, 2.307692, epsilon = 1e-6);
        // First-order conditions give d1 = b (p1 - r) and d2 = b (p2 - r).
        assert_abs_diff_eq!(d1, BASE.b * (e.p1 - BASE.r), epsilon = 1e-12);
        assert_abs_diff_eq!(d2, BASE.b * 3.0 * 2.0 * 0.5 / 0.52, epsilon = 1e-12);
    }

    #[test]
    fn profit_examples() {
        let o = profits(&BASE, &StrategyState::new(1.0, 1.0, 1.0));
        assert_abs_diff_eq!(o.pi1, 3.32, epsilon = 1e-12);
        assert_abs_diff_eq!(o.pi2, 0.63, epsilon = 1e-12);

        let o = profits(&BASE, &StrategyState::default());
        assert_abs_diff_eq!(o.pi1, BASE.a * BASE.r, epsilon = 1e-15);
        assert_abs_diff_eq!(o.pi2, -BASE.a * BASE.r, epsilon = 1e-15);
    }

    #[test]
    fn baseline_equilibrium() {
        let e = equilibrium_closed_form(&BASE).unwrap();
        assert_abs_diff_eq!(e.p1, 5.984615, epsilon = 1e-6);
        assert_abs_diff_eq!(e.p2, 6.369231, epsilon = 1e-6);
        assert_abs_diff_eq!(e.s, 2.307692, epsilon = 1e-6);

        let (pi1, pi2) = equilibrium_profits(&BASE).unwrap();
        assert_abs_diff_eq!(pi1, 14.27455, epsilon = 1e-5);
        assert_abs_diff_eq!(pi2, 11.98225, epsilon = 1e-5);
        let o = profits(&BASE, &e);
        assert_abs_diff_eq!(o.pi1, pi1, epsilon = 1e-9);
        assert_abs_diff_eq!(o.pi2, pi2, epsilon = 1e-9);
    }

    #[test]
    fn zero_theta_limit() {
        let p = ModelParams { theta: 0.0, ..BASE };
        let e = equilibrium_closed_form(&p).unwrap();
        assert_eq!(e.s, 0.0);
        assert_abs_diff_eq!(e.p2, p.r + p.a / p.b, epsilon = 1e-12);
        let (pi1, pi2) = equilibrium_profits(&p).unwrap();
        let o = profits(&p, &e);
        assert_abs_diff_eq!(o.pi1, pi1, epsilon = 1e-10);
        assert_abs_diff_eq!(o.pi2, pi2, epsilon = 1e-10);
        assert_abs_diff_eq!(pi2, p.a * p.a / p.b, epsilon = 1e-10);
    }

    #[test]
    fn singular_denominator() {
        let p = ModelParams {
            eta: 0.2 * 0.2 * 2.0 / (3.0 * 0.4),
            ..BASE
        };
        assert!(matches!(
            equilibrium_closed_form(&p),
            Err(Error::SingularDenominator { .. })
        ));
        assert!(equilibrium_profits(&p).is_err());
        assert!(price_regime(&p).is_err());
    }

    #[test]
    fn concavity_cases() {
        assert!(concavity_holds(&BASE));
        let boundary = ModelParams {
            b: 0.5,
            theta: 0.5,
            eta: 0.25,
            ..BASE
        };
        assert_eq!(boundary.hessian_determinant(), 0.0);
        assert!(!concavity_holds(&boundary));
        let p = ModelParams {
            b: 0.5,
            theta: 0.9,
            eta: 0.1,
            ..BASE
        };
        assert!(!concavity_holds(&p));
        assert!(matches!(price_regime(&p), Err(Error::Precondition(_))));
        assert!(matches!(profit_regime(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn price_regimes() {
        assert_eq!(price_regime(&BASE).unwrap(), PriceOrdering::P2Greater);
        let p = ModelParams {
            theta: 0.6,
            eta: 0.5,
            ..BASE
        };
        assert_eq!(price_regime(&p).unwrap(), PriceOrdering::P1Greater);
        let e = equilibrium_closed_form(&p).unwrap();
        assert!(e.p1 > e.p2);
    }

    #[test]
    fn threshold_and_profit_regimes() {
        let r_hat = wholesale_threshold(&BASE).unwrap();
        assert_abs_diff_eq!(r_hat, 0.08 / 0.928, epsilon = 1e-15);
        assert_abs_diff_eq!(r_hat, 0.0862069, epsilon = 1e-6);

        let doubled = ModelParams { a: 4.0, ..BASE };
        assert_abs_diff_eq!(wholesale_threshold(&doubled).unwrap(), 2.0 * r_hat, epsilon = 1e-15);
        let huge_eta = ModelParams { eta: 1e12, ..BASE };
        assert!(wholesale_threshold(&huge_eta).unwrap() < 1e-12);

        assert_eq!(profit_regime(&BASE).unwrap(), ProfitOrdering::Pi1Greater);
        let low_r = ModelParams { r: 0.05, ..BASE };
        assert_eq!(profit_regime(&low_r).unwrap(), ProfitOrdering::Pi2Greater);
        let (pi1, pi2) = equilibrium_profits(&low_r).unwrap();
        assert!(pi1 < pi2);

        let at = ModelParams { r: r_hat, ..BASE };
        assert_eq!(profit_regime(&at).unwrap(), ProfitOrdering::Equal);
        let (pi1, pi2) = equilibrium_profits(&at).unwrap();
        assert_abs_diff_eq!(pi1, pi2, epsilon = 1e-9);
    }

    #[test]
    fn validate_ranges() {
        assert!(BASE.validate().is_ok());
        let err = ModelParams { b: 1.5, ..BASE }.validate().unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRange {
                field: "b",
                bound: "0 < b <= 1",
                value: 1.5
            }
        );
        assert!(ModelParams { b: 1.0, ..BASE }.validate().is_ok());
        assert!(ModelParams { theta: 1.0, ..BASE }.validate().is_err());
        assert!(ModelParams { r: f64::NAN, ..BASE }.validate().is_err());
    }
}
