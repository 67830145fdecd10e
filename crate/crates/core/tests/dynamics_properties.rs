use datagame_core::dynamics::{
    char_coeffs, controlled_step, fixed_points, jacobian, jury_margins, jury_stable,
    spectral_radius, step, AdjustmentRates, ControlParam, CubicCoeffs, Mat3,
};
use datagame_core::model::{equilibrium_closed_form, ModelParams, StrategyState};
use nalgebra::{Complex, Matrix3};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ModelParams> {
    (0.1f64..5.0, 0.05f64..=1.0, 0.01f64..0.99, 0.01f64..5.0, 0.01f64..3.0)
        .prop_map(|(a, b, theta, eta, r)| ModelParams { a, b, theta, eta, r })
        .prop_filter("non-singular fixed points", |p| {
            p.hessian_determinant().abs() > 1e-4 && p.equilibrium_denominator().abs() > 1e-4
        })
}

fn rates() -> impl Strategy<Value = AdjustmentRates> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0).prop_map(|(a, b, c)| AdjustmentRates::new(a, b, c))
}

fn sup(x: &StrategyState, y: &StrategyState) -> f64 {
    (x.p1 - y.p1).abs().max((x.p2 - y.p2).abs()).max((x.s - y.s).abs())
}

fn eigenvalues(j: &Mat3) -> Vec<Complex<f64>> {
    let m = Matrix3::from_fn(|r, c| j[r][c]);
    m.complex_eigenvalues().iter().copied().collect()
}

fn companion(c: &CubicCoeffs) -> Mat3 {
    [[-c.a2, -c.a1, -c.a0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn all_fixed_points_are_fixed(p in params(), r in rates()) {
        for e in fixed_points(&p).unwrap() {
            let y = step(&p, &r, &e.state);
            // round-off in the update grows with the square of the coordinates
            let scale = e.state.p1.abs().max(e.state.p2.abs()).max(e.state.s.abs()).max(1.0);
            prop_assert!(sup(&y, &e.state) < 1e-10 * scale * scale, "{} residual {}", e.label, sup(&y, &e.state));
        }
    }

    #[test]
    fn interior_point_matches_statics(p in params()) {
        let e8 = fixed_points(&p).unwrap()[7].state;
        prop_assert!(sup(&e8, &equilibrium_closed_form(&p).unwrap()) < 1e-12);
    }

    #[test]
    fn controlled_orbit_equals_scaled_rates(
        r in (0.01f64..0.2, 0.01f64..0.2, 0.01f64..0.2),
        k in 0.05f64..=1.0,
    ) {
        let p = ModelParams::BASELINE;
        let rates = AdjustmentRates::new(r.0, r.1, r.2);
        let c = ControlParam::new(k).unwrap();
        let mut x = StrategyState::new(1.0, 1.0, 1.0);
        let mut y = x;
        for _ in 0..1000 {
            x = controlled_step(&p, &rates, c, &x);
            y = step(&p, &rates.scaled(k), &y);
            prop_assert!(sup(&x, &y) < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobian_matches_central_differences(
        p in params(),
        r in rates(),
        x in (0.0f64..10.0, 0.0f64..10.0, 0.0f64..5.0),
    ) {
        let x = [x.0, x.1, x.2];
        let j = jacobian(&p, &r, &x.into());
        let h = 1e-6;
        for col in 0..3 {
            let (mut xp, mut xm) = (x, x);
            xp[col] += h;
            xm[col] -= h;
            let fp = step(&p, &r, &xp.into()).to_array();
            let fm = step(&p, &r, &xm.into()).to_array();
            for row in 0..3 {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                prop_assert!((j[row][col] - fd).abs() < 1e-5 * j[row][col].abs().max(1.0));
            }
        }
    }

    #[test]
    fn char_poly_vanishes_at_eigenvalues(entries in prop::array::uniform9(-2.0f64..2.0)) {
        let j = [
            [entries[0], entries[1], entries[2]],
            [entries[3], entries[4], entries[5]],
            [entries[6], entries[7], entries[8]],
        ];
        let c = char_coeffs(&j);
        for l in eigenvalues(&j) {
            let v = ((l + c.a2) * l + c.a1) * l + c.a0;
            prop_assert!(v.norm() < 1e-8, "P({l}) = {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn jury_agrees_with_eigen_oracle(a2 in -3.0f64..3.0, a1 in -3.0f64..3.0, a0 in -1.5f64..1.5) {
        let c = CubicCoeffs { a2, a1, a0 };
        let rho = eigenvalues(&companion(&c)).iter().map(|l| l.norm()).fold(0.0, f64::max);
        let near_boundary = (rho - 1.0).abs() < 1e-9
            || jury_margins(&c).iter().any(|m| m.abs() < 1e-9);
        if !near_boundary {
            prop_assert_eq!(jury_stable(&c), rho < 1.0, "rho = {}", rho);
        }
        // the in-crate cubic solver against the same oracle
        if (rho - 1.0).abs() > 1e-6 {
            prop_assert_eq!(spectral_radius(&c) < 1.0, rho < 1.0);
        }
    }
}
