use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{sup_dist, OrbitResult, OrbitSettings};

/// Long-run behavior of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttractorKind {
    FixedPoint,
    /// Periodic orbit of minimal period `k >= 2`.
    Cycle(usize),
    Chaotic,
    Divergent,
    /// No period up to the maximum and no positive exponent.
    Unresolved,
}

impl AttractorKind {
    /// Period for fixed points and cycles.
    pub fn period(self) -> Option<usize> {
        match self {
            AttractorKind::FixedPoint => Some(1),
            AttractorKind::Cycle(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_periodic(self) -> bool {
        self.period().is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            AttractorKind::FixedPoint => "fixed-point",
            AttractorKind::Cycle(_) => "cycle",
            AttractorKind::Chaotic => "chaotic",
            AttractorKind::Divergent => "divergent",
            AttractorKind::Unresolved => "unresolved",
        }
    }
}

impl core::fmt::Display for AttractorKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AttractorKind::Cycle(k) => write!(f, "cycle-{k}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Classified attractor with representative points.
///
/// Periodic attractors keep one point per phase, rotated so that the
/// lexicographically smallest point comes first. Chaotic and unresolved
/// attractors keep the bounding box of the kept samples.
#[derive(Debug, Clone, PartialEq)]
pub struct AttractorClass<const N: usize> {
    pub kind: AttractorKind,
    pub points: Vec<[f64; N]>,
    pub bounds: Option<([f64; N], [f64; N])>,
    pub lle: Option<f64>,
}

impl<const N: usize> AttractorClass<N> {
    pub fn divergent(lle: Option<f64>) -> Self {
        Self {
            kind: AttractorKind::Divergent,
            points: Vec::new(),
            bounds: None,
            lle,
        }
    }

    /// Whether `self` and `other` are the same attractor: equal kinds and,
    /// for periodic orbits, point sets within `tol` of each other in both
    /// directions. Chaotic sets match when their bounding boxes overlap
    /// (with `tol` slack).
    pub fn same_attractor(&self, other: &Self, tol: f64) -> bool {
        if self.kind != other.kind {
            return false;
        }
        match self.kind {
            AttractorKind::FixedPoint | AttractorKind::Cycle(_) => {
                covers(&self.points, &other.points, tol) && covers(&other.points, &self.points, tol)
            }
            AttractorKind::Chaotic => match (&self.bounds, &other.bounds) {
                (Some((lo_a, hi_a)), Some((lo_b, hi_b))) => {
                    (0..N).all(|i| lo_a[i] <= hi_b[i] + tol && lo_b[i] <= hi_a[i] + tol)
                }
                _ => false,
            },
            AttractorKind::Divergent | AttractorKind::Unresolved => true,
        }
    }
}

fn covers<const N: usize>(a: &[[f64; N]], b: &[[f64; N]], tol: f64) -> bool {
    a.iter().all(|x| b.iter().any(|y| sup_dist(x, y) < tol))
}

fn lex_cmp<const N: usize>(x: &[f64; N], y: &[f64; N]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn bounding_box<const N: usize>(samples: &[[f64; N]]) -> Option<([f64; N], [f64; N])> {
    let first = samples.first()?;
    let (mut lo, mut hi) = (*first, *first);
    for x in samples {
        for i in 0..N {
            lo[i] = lo[i].min(x[i]);
            hi[i] = hi[i].max(x[i]);
        }
    }
    Some((lo, hi))
}

/// Smallest `k <= max_period` such that the kept samples repeat with lag `k`
/// to within `cycle_tol`; at least two full periods must be present.
fn detect_period<const N: usize>(samples: &[[f64; N]], cycle_tol: f64, max_period: usize) -> Option<usize> {
    (1..=max_period)
        .take_while(|&k| 2 * k <= samples.len())
        .find(|&k| {
            samples
                .iter()
                .zip(&samples[k..])
                .all(|(x, y)| sup_dist(x, y) < cycle_tol)
        })
}

/// Classifies an orbit: divergent, periodic by revisit distance, otherwise
/// chaotic when `lle` exceeds the threshold, otherwise unresolved.
pub fn detect_attractor<const N: usize>(
    orbit: &OrbitResult<N>,
    settings: &OrbitSettings,
    lle: Option<f64>,
) -> AttractorClass<N> {
    if orbit.diverged || orbit.samples.is_empty() {
        return AttractorClass::divergent(lle);
    }
    let samples = &orbit.samples;
    if let Some(k) = detect_period(samples, settings.cycle_tol, settings.max_period) {
        let tail = &samples[samples.len() - k..];
        let start = (0..k)
            .min_by(|&i, &j| lex_cmp(&tail[i], &tail[j]))
            .unwrap_or(0);
        let points = tail[start..].iter().chain(&tail[..start]).copied().collect();
        return AttractorClass {
            kind: if k == 1 {
                AttractorKind::FixedPoint
            } else {
                AttractorKind::Cycle(k)
            },
            points,
            bounds: None,
            lle,
        };
    }
    let kind = match lle {
        Some(l) if l > settings.lle_threshold => AttractorKind::Chaotic,
        _ => AttractorKind::Unresolved,
    };
    AttractorClass {
        kind,
        points: Vec::new(),
        bounds: bounding_box(samples),
        lle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn orbit<const N: usize>(samples: Vec<[f64; N]>) -> OrbitResult<N> {
        let final_state = *samples.last().unwrap();
        OrbitResult {
            samples,
            diverged: false,
            diverged_at: None,
            final_state,
        }
    }

    const S: OrbitSettings = OrbitSettings::RASTER;

    #[test]
    fn constant_tail_is_fixed_point() {
        let e8 = [5.984615384615385, 6.369230769230769, 2.307692307692308];
        let c = detect_attractor(&orbit(vec![e8; 64]), &S, None);
        assert_eq!(c.kind, AttractorKind::FixedPoint);
        assert_eq!(c.points, vec![e8]);
    }

    #[test]
    fn alternating_tail_is_two_cycle() {
        let samples = (0..64).map(|t| [if t % 2 == 0 { 1.0 } else { 1.5 }]).collect();
        let c = detect_attractor(&orbit(samples), &OrbitSettings { cycle_tol: 1e-6, ..S }, None);
        assert_eq!(c.kind, AttractorKind::Cycle(2));
        assert_eq!(c.points, vec![[1.0], [1.5]]);
    }

    #[test]
    fn cycle_points_are_rotation_invariant() {
        let cyc = [[0.3], [0.9], [0.1], [0.5]];
        let a: Vec<_> = (0..64).map(|t| cyc[t % 4]).collect();
        let b: Vec<_> = (0..64).map(|t| cyc[(t + 1) % 4]).collect();
        let ca = detect_attractor(&orbit(a), &S, None);
        let cb = detect_attractor(&orbit(b), &S, None);
        assert_eq!(ca.kind, AttractorKind::Cycle(4));
        assert_eq!(ca.points, cb.points);
        assert_eq!(ca.points[0], [0.1]);
        assert!(ca.same_attractor(&cb, 1e-3));
    }

    #[test]
    fn aperiodic_tail_uses_exponent() {
        let mut x = 0.2;
        let samples: Vec<[f64; 1]> = (0..64)
            .map(|_| {
                x = 4.0 * x * (1.0 - x);
                [x]
            })
            .collect();
        let o = orbit(samples);
        assert_eq!(
            detect_attractor(&o, &S, Some(core::f64::consts::LN_2)).kind,
            AttractorKind::Chaotic
        );
        assert_eq!(detect_attractor(&o, &S, Some(0.001)).kind, AttractorKind::Unresolved);
        assert_eq!(detect_attractor(&o, &S, None).kind, AttractorKind::Unresolved);
    }

    #[test]
    fn divergent_orbit() {
        let o = OrbitResult::<2> {
            samples: vec![],
            diverged: true,
            diverged_at: Some(7),
            final_state: [1e5, 1e5],
        };
        assert_eq!(detect_attractor(&o, &S, None).kind, AttractorKind::Divergent);
    }

    #[test]
    fn matching_respects_kind_and_distance() {
        let a = AttractorClass::<1> {
            kind: AttractorKind::Cycle(2),
            points: vec![[1.0], [2.0]],
            bounds: None,
            lle: None,
        };
        let near = AttractorClass {
            points: vec![[1.0005], [2.0002]],
            ..a.clone()
        };
        let far = AttractorClass {
            points: vec![[1.01], [2.0]],
            ..a.clone()
        };
        assert!(a.same_attractor(&near, 1e-3));
        assert!(!a.same_attractor(&far, 1e-3));
        let fp = AttractorClass {
            kind: AttractorKind::FixedPoint,
            points: vec![[1.0]],
            ..a.clone()
        };
        assert!(!a.same_attractor(&fp, 1.0));
    }
}
