//! Repeated game under bounded rationality.
//!
//! Each player moves its own decision variable proportionally to the current
//! value of that variable times its marginal profit:
//!
//! ```text
//! p1' = p1 + alpha1 p1 dpi1/dp1
//! p2' = p2 + alpha2 p2 dpi2/dp2
//! s'  = s  + alpha3 s  dpi2/ds
//! ```
//!
//! The map is iterated unclamped; negative states are handled by the callers.

use crate::model::{equilibrium_closed_form, ModelParams, StrategyState};
use crate::{Error, BOUNDARY_BAND};

/// Row-major 3x3 matrix.
pub type Mat3 = [[f64; 3]; 3];

/// Per-period adjustment speeds of `p1`, `p2` and `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustmentRates {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl AdjustmentRates {
    pub const fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        Self {
            alpha1,
            alpha2,
            alpha3,
        }
    }

    /// All three rates multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.alpha1 * k, self.alpha2 * k, self.alpha3 * k)
    }

    pub fn validate(&self) -> Result<(), Error> {
        for (field, bound, value) in [
            ("alpha1", "alpha1 > 0", self.alpha1),
            ("alpha2", "alpha2 > 0", self.alpha2),
            ("alpha3", "alpha3 > 0", self.alpha3),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::OutOfRange { field, bound, value });
            }
        }
        Ok(())
    }
}

/// Gain of the hybrid controller, `0 < kappa <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlParam(f64);

impl ControlParam {
    pub fn new(kappa: f64) -> Result<Self, Error> {
        if kappa > 0.0 && kappa <= 1.0 {
            Ok(Self(kappa))
        } else {
            Err(Error::OutOfRange {
                field: "kappa",
                bound: "0 < kappa <= 1",
                value: kappa,
            })
        }
    }

    pub fn kappa(self) -> f64 {
        self.0
    }
}

/// Local stability verdict for a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    Unstable,
    /// Some Jury expression lies within [`BOUNDARY_BAND`] of zero.
    Marginal,
    NotEvaluated,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Marginal => "marginal",
            Stability::NotEvaluated => "not-evaluated",
        }
    }
}

/// One of the eight fixed points of the map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumRecord {
    /// `"E1"` .. `"E8"`.
    pub label: &'static str,
    pub state: StrategyState,
    pub admissible: bool,
    pub stability: Stability,
}

/// Monic characteristic polynomial `l^3 + a2 l^2 + a1 l + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoeffs {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.a2) * x + self.a1) * x + self.a0
    }
}

/// Complex number, used only for eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

/// Marginal profits `(dpi1/dp1, dpi2/dp2, dpi2/ds)`.
pub fn gradients(params: &ModelParams, x: &StrategyState) -> [f64; 3] {
    let ModelParams { a, b, theta, eta, r } = *params;
    [
        a - 2.0 * b * x.p1 + b * x.p2 + b * r,
        a + b * (x.p1 - 2.0 * x.p2) + theta * x.s + b * r,
        theta * (x.p2 - r) - eta * x.s,
    ]
}

/// One period of the bounded-rationality map.
pub fn step(params: &ModelParams, rates: &AdjustmentRates, x: &StrategyState) -> StrategyState {
    let g = gradients(params, x);
    StrategyState {
        p1: x.p1 + rates.alpha1 * x.p1 * g[0],
        p2: x.p2 + rates.alpha2 * x.p2 * g[1],
        s: x.s + rates.alpha3 * x.s * g[2],
    }
}

/// Hybrid control: `kappa * step(x) + (1 - kappa) * x`.
pub fn controlled_step(
    params: &ModelParams,
    rates: &AdjustmentRates,
    control: ControlParam,
    x: &StrategyState,
) -> StrategyState {
    let k = control.kappa();
    let y = step(params, rates, x);
    StrategyState {
        p1: k * y.p1 + (1.0 - k) * x.p1,
        p2: k * y.p2 + (1.0 - k) * x.p2,
        s: k * y.s + (1.0 - k) * x.s,
    }
}

/// Analytic Jacobian of [`step`].
pub fn jacobian(params: &ModelParams, rates: &AdjustmentRates, x: &StrategyState) -> Mat3 {
    let ModelParams { a, b, theta, eta, r } = *params;
    let AdjustmentRates {
        alpha1,
        alpha2,
        alpha3,
    } = *rates;
    let StrategyState { p1, p2, s } = *x;
    [
        [1.0 + alpha1 * (a + b * (p2 - 4.0 * p1 + r)), b * p1 * alpha1, 0.0],
        [
            b * p2 * alpha2,
            1.0 + alpha2 * (a + b * (p1 - 4.0 * p2 + r) + s * theta),
            p2 * alpha2 * theta,
        ],
        [0.0, s * alpha3 * theta, 1.0 - alpha3 * (2.0 * s * eta - (p2 - r) * theta)],
    ]
}

/// The eight fixed points `E1..E8`, all with [`Stability::NotEvaluated`].
pub fn fixed_points(params: &ModelParams) -> Result<[EquilibriumRecord; 8], Error> {
    let ModelParams { a, b, theta, eta, r } = *params;
    let nonzero = |label, expr, value: f64| {
        if value.abs() <= BOUNDARY_BAND || !value.is_finite() {
            Err(Error::SingularFixedPoint { label, expr, value })
        } else {
            Ok(value)
        }
    };
    let b_ = nonzero("E3", "b", b)?;
    let eta_ = nonzero("E2", "eta", eta)?;
    let hess = nonzero("E4", "2*b*eta - theta^2", params.hessian_determinant())?;
    nonzero("E8", "3*b*eta - 2*theta^2", params.equilibrium_denominator())?;

    let half_monopoly = (a + b * r) / (2.0 * b_);
    let neg_s = -r * theta / eta_;
    let states = [
        ("E1", StrategyState::new(0.0, 0.0, 0.0)),
        ("E2", StrategyState::new(0.0, 0.0, neg_s)),
        ("E3", StrategyState::new(0.0, half_monopoly, 0.0)),
        (
            "E4",
            StrategyState::new(
                0.0,
                r + (a - b * r) * eta / hess,
                (a - b * r) * theta / hess,
            ),
        ),
        ("E5", StrategyState::new(a / b + r, a / b + r, 0.0)),
        ("E6", StrategyState::new(half_monopoly, 0.0, 0.0)),
        ("E7", StrategyState::new(half_monopoly, 0.0, neg_s)),
        ("E8", equilibrium_closed_form(params)?),
    ];
    Ok(states.map(|(label, state)| EquilibriumRecord {
        label,
        state,
        admissible: state.is_admissible(),
        stability: Stability::NotEvaluated,
    }))
}

/// Characteristic polynomial coefficients of a 3x3 matrix.
pub fn char_coeffs(j: &Mat3) -> CubicCoeffs {
    let trace = j[0][0] + j[1][1] + j[2][2];
    let minors = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2]
        - j[0][2] * j[2][0]
        + j[1][1] * j[2][2]
        - j[1][2] * j[2][1];
    let det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
        - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    CubicCoeffs {
        a2: -trace,
        a1: minors,
        a0: -det,
    }
}

/// The four Jury expressions; the cubic is Schur stable iff all are positive.
pub fn jury_margins(c: &CubicCoeffs) -> [f64; 4] {
    let CubicCoeffs { a2, a1, a0 } = *c;
    [
        1.0 + a2 + a1 + a0,
        1.0 - a2 + a1 - a0,
        1.0 - a0.abs(),
        (1.0 - a0 * a0).abs() - (a1 - a0 * a2).abs(),
    ]
}

/// Jury criterion for a cubic: every root strictly inside the unit circle.
pub fn jury_stable(c: &CubicCoeffs) -> bool {
    jury_margins(c).iter().all(|&m| m > 0.0)
}

/// Jury verdict for `E` with a [`BOUNDARY_BAND`] marginal band.
pub fn classify_equilibrium(
    params: &ModelParams,
    rates: &AdjustmentRates,
    e: &EquilibriumRecord,
) -> Stability {
    classify_state(params, rates, &e.state)
}

pub(crate) fn classify_state(
    params: &ModelParams,
    rates: &AdjustmentRates,
    x: &StrategyState,
) -> Stability {
    let margins = jury_margins(&char_coeffs(&jacobian(params, rates, x)));
    if margins.iter().any(|m| !m.is_finite()) {
        Stability::Unstable
    } else if margins.iter().any(|m| m.abs() <= BOUNDARY_BAND) {
        Stability::Marginal
    } else if margins.iter().all(|&m| m > 0.0) {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

/// Fixed points with their stability filled in.
pub fn classified_fixed_points(
    params: &ModelParams,
    rates: &AdjustmentRates,
) -> Result<[EquilibriumRecord; 8], Error> {
    let mut records = fixed_points(params)?;
    for rec in records.iter_mut() {
        rec.stability = classify_equilibrium(params, rates, rec);
    }
    Ok(records)
}

/// Roots of the monic cubic. A real root is bracketed within the Cauchy bound
/// and bisected, then the remaining quadratic is solved directly.
pub fn cubic_roots(c: &CubicCoeffs) -> [Eigenvalue; 3] {
    let bound = 1.0 + c.a2.abs().max(c.a1.abs()).max(c.a0.abs());
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if c.eval(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    // Newton polish; keep the bracketed value if it makes things worse.
    for _ in 0..3 {
        let d = (3.0 * x + 2.0 * c.a2) * x + c.a1;
        if d == 0.0 {
            break;
        }
        let next = x - c.eval(x) / d;
        if c.eval(next).abs() < c.eval(x).abs() {
            x = next;
        } else {
            break;
        }
    }
    let q1 = c.a2 + x;
    let q0 = c.a1 + x * q1;
    let half = -0.5 * q1;
    let disc = half * half - q0;
    let (r1, r2) = if disc >= 0.0 {
        let root = libm::sqrt(disc);
        let big = if half >= 0.0 { half + root } else { half - root };
        let small = if big != 0.0 { q0 / big } else { 0.0 };
        (
            Eigenvalue { re: big, im: 0.0 },
            Eigenvalue { re: small, im: 0.0 },
        )
    } else {
        let im = libm::sqrt(-disc);
        (Eigenvalue { re: half, im }, Eigenvalue { re: half, im: -im })
    };
    [Eigenvalue { re: x, im: 0.0 }, r1, r2]
}

/// Largest eigenvalue modulus of the cubic's roots.
pub fn spectral_radius(c: &CubicCoeffs) -> f64 {
    cubic_roots(c)
        .iter()
        .map(Eigenvalue::modulus)
        .fold(0.0, f64::max)
}
