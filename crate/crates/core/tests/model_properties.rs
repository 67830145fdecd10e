use datagame_core::model::{
    equilibrium_closed_form, equilibrium_profits, price_regime, profit_regime, profits,
    wholesale_threshold, ModelParams, PriceOrdering, ProfitOrdering, StrategyState,
};
use proptest::prelude::*;

/// Parameters inside the admissible box with `eta > theta^2 / (2b)`, kept a
/// little away from the `3 b eta = 2 theta^2` singularity.
fn concave_params() -> impl Strategy<Value = ModelParams> {
    (0.1f64..5.0, 0.05f64..=1.0, 0.01f64..0.99, 0.0f64..1.0, 0.01f64..3.0).prop_filter_map(
        "away from singular denominator",
        |(a, b, theta, u, r)| {
            let lo = theta * theta / (2.0 * b);
            // eta spans (lo, lo + 3], covering both price regimes
            let eta = lo + 1e-3 + 3.0 * u;
            let p = ModelParams { a, b, theta, eta, r };
            (p.equilibrium_denominator().abs() > 1e-4).then_some(p)
        },
    )
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closed_form_profits_match_direct_evaluation(p in concave_params()) {
        let e = equilibrium_closed_form(&p).unwrap();
        let direct = profits(&p, &e);
        let (pi1, pi2) = equilibrium_profits(&p).unwrap();
        prop_assert!(rel_close(direct.pi1, pi1, 1e-9), "{} vs {}", direct.pi1, pi1);
        prop_assert!(rel_close(direct.pi2, pi2, 1e-9), "{} vs {}", direct.pi2, pi2);
    }

    #[test]
    fn equilibrium_is_stationary(p in concave_params()) {
        let e = equilibrium_closed_form(&p).unwrap();
        let h = 1e-6;
        let central = |f: &dyn Fn(f64) -> f64| (f(h) - f(-h)) / (2.0 * h);
        let d1 = central(&|t| profits(&p, &StrategyState { p1: e.p1 + t, ..e }).pi1);
        let d2 = central(&|t| profits(&p, &StrategyState { p2: e.p2 + t, ..e }).pi2);
        let d3 = central(&|t| profits(&p, &StrategyState { s: e.s + t, ..e }).pi2);
        // finite-difference noise grows with the magnitude of the profits
        let scale = profits(&p, &e).pi1.abs().max(profits(&p, &e).pi2.abs()).max(1.0);
        for d in [d1, d2, d3] {
            prop_assert!(d.abs() < 1e-5 * scale, "gradient {d} at scale {scale}");
        }
    }

    #[test]
    fn price_gap_identity(p in concave_params()) {
        let e = equilibrium_closed_form(&p).unwrap();
        let gap = -p.a * p.theta * p.theta / (p.b * p.equilibrium_denominator());
        prop_assert!(((e.p1 - e.p2) - gap).abs() <= 1e-12 * gap.abs().max(e.p1.abs()).max(1.0));
    }

    #[test]
    fn regimes_agree_with_direct_signs(p in concave_params()) {
        let e = equilibrium_closed_form(&p).unwrap();
        let diff = e.p1 - e.p2;
        if diff.abs() > 1e-9 {
            let expected = if diff > 0.0 { PriceOrdering::P1Greater } else { PriceOrdering::P2Greater };
            prop_assert_eq!(price_regime(&p).unwrap(), expected);
        }
        let (pi1, pi2) = equilibrium_profits(&p).unwrap();
        let r_hat = wholesale_threshold(&p).unwrap();
        if (pi1 - pi2).abs() > 1e-9 && (p.r - r_hat).abs() > 1e-9 {
            let expected = if pi1 > pi2 { ProfitOrdering::Pi1Greater } else { ProfitOrdering::Pi2Greater };
            prop_assert_eq!(profit_regime(&p).unwrap(), expected);
        }
    }

    #[test]
    fn threshold_is_root_of_profit_gap(p in concave_params()) {
        let r_hat = wholesale_threshold(&p).unwrap();
        let at = ModelParams { r: r_hat, ..p };
        let (pi1, pi2) = equilibrium_profits(&at).unwrap();
        prop_assert!(rel_close(pi1, pi2, 1e-9), "{pi1} vs {pi2}");
    }
}

/// Independent check of the threshold: bisection on `r` of the profit gap
/// computed directly from the demand functions at the closed-form equilibrium.
#[test]
fn baseline_threshold_by_bisection() {
    let gap = |r: f64| {
        let p = ModelParams { r, ..ModelParams::BASELINE };
        let o = profits(&p, &equilibrium_closed_form(&p).unwrap());
        o.pi1 - o.pi2
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    let r_hat = wholesale_threshold(&ModelParams::BASELINE).unwrap();
    assert!((0.5 * (lo + hi) - r_hat).abs() < 1e-12);
}
