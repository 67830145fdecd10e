use alloc::vec::Vec;

use super::raster::assign_ids;
use super::{
    detect_attractor, largest_lyapunov, simulate_orbit, AttractorClass, Axis, GameMap,
    GridRunner, OrbitSettings, Raster,
};
use crate::dynamics::ControlParam;
use crate::Error;

/// Parameter varied by a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    Alpha1,
    Alpha2,
    Alpha3,
    /// Hybrid-control gain applied to the template rates.
    Kappa,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha1 => "alpha1",
            SweepParam::Alpha2 => "alpha2",
            SweepParam::Alpha3 => "alpha3",
            SweepParam::Kappa => "kappa",
        }
    }

    /// The game map with this parameter set to `value`.
    pub fn apply(self, base: &GameMap, value: f64) -> Result<GameMap, Error> {
        let mut map = *base;
        match self {
            SweepParam::Alpha1 => map.rates.alpha1 = value,
            SweepParam::Alpha2 => map.rates.alpha2 = value,
            SweepParam::Alpha3 => map.rates.alpha3 = value,
            SweepParam::Kappa => map.control = Some(ControlParam::new(value)?),
        }
        Ok(map)
    }
}

impl core::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "alpha1" => Ok(SweepParam::Alpha1),
            "alpha2" => Ok(SweepParam::Alpha2),
            "alpha3" => Ok(SweepParam::Alpha3),
            "kappa" => Ok(SweepParam::Kappa),
            _ => Err(Error::InvalidSetting(
                "sweep parameter must be alpha1, alpha2, alpha3 or kappa",
            )),
        }
    }
}

/// Evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
}

impl Sweep {
    pub fn new(param: SweepParam, lo: f64, hi: f64, n_points: usize) -> Result<Self, Error> {
        if n_points < 2 {
            return Err(Error::InvalidSetting("a sweep needs at least two points"));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSetting("sweep range must satisfy lo < hi"));
        }
        Ok(Self {
            param,
            lo,
            hi,
            n_points,
        })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n_points - 1) as f64
        }
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n_points - 1) as f64
    }
}

/// Initial condition used at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InitialPolicy {
    /// The same `x0` everywhere.
    #[default]
    Fixed,
    /// Start from the previous point's final state (`x0` after divergence).
    Follow,
}

/// One point of a one-parameter bifurcation diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationPoint {
    pub value: f64,
    pub class: AttractorClass<3>,
    /// Kept post-transient states.
    pub samples: Vec<[f64; 3]>,
    pub lle: Option<f64>,
    pub final_state: [f64; 3],
}

/// Raster payload selector for [`scan_2d`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanMode {
    Period,
    Lle,
}

/// Output of [`scan_2d`].
#[derive(Debug, Clone, PartialEq)]
pub enum ScanRaster {
    /// Class ids; catalog entries are one per attractor kind.
    Period(Raster<u32, 3>),
    Lle(Raster<f64, 3>),
}

fn lle_of(map: &GameMap, x0: &[f64; 3], s: &OrbitSettings) -> Result<f64, Error> {
    largest_lyapunov(map, x0, s.n_transient, s.lle_steps, s.divergence_bound)
}

/// Simulates and classifies one parameter point. The exponent is computed
/// when requested and whenever no period is found.
fn evaluate(
    map: &GameMap,
    x0: &[f64; 3],
    settings: &OrbitSettings,
    want_lle: bool,
) -> Result<BifurcationPoint, Error> {
    let orbit = simulate_orbit(
        map,
        x0,
        settings.n_transient,
        settings.n_keep,
        settings.divergence_bound,
    )?;
    let mut class = detect_attractor(&orbit, settings, None);
    let lle = if want_lle || class.kind == super::AttractorKind::Unresolved {
        let l = lle_of(map, x0, settings)?;
        class = detect_attractor(&orbit, settings, Some(l));
        Some(l)
    } else {
        None
    };
    Ok(BifurcationPoint {
        value: 0.0,
        class,
        samples: orbit.samples,
        lle,
        final_state: orbit.final_state,
    })
}

/// One-parameter bifurcation diagram of the game map.
///
/// `base` supplies the parameters, template rates and optional control;
/// `sweep` overrides one of them. With [`InitialPolicy::Follow`] the points
/// are evaluated in order and `runner` is not used.
#[allow(clippy::too_many_arguments)]
pub fn bifurcation_scan_1d<R: GridRunner + ?Sized>(
    base: &GameMap,
    sweep: &Sweep,
    x0: &[f64; 3],
    policy: InitialPolicy,
    settings: &OrbitSettings,
    with_lle: bool,
    runner: &R,
) -> Result<Vec<BifurcationPoint>, Error> {
    settings.validate()?;
    let run = |i: usize, start: &[f64; 3]| -> Result<BifurcationPoint, Error> {
        let value = sweep.value(i);
        let map = sweep.param.apply(base, value)?;
        let mut point = evaluate(&map, start, settings, with_lle)?;
        point.value = value;
        Ok(point)
    };
    match policy {
        InitialPolicy::Fixed => runner
            .map_indexed(sweep.n_points, |i| run(i, x0))
            .into_iter()
            .collect(),
        InitialPolicy::Follow => {
            let mut out = Vec::with_capacity(sweep.n_points);
            let mut start = *x0;
            for i in 0..sweep.n_points {
                let point = run(i, &start)?;
                start = if point.class.kind == super::AttractorKind::Divergent {
                    *x0
                } else {
                    point.final_state
                };
                out.push(point);
            }
            Ok(out)
        }
    }
}

/// Two-parameter scan over cell centers of `x` and `y`; axis names must be
/// sweep parameters (`alpha1`, `alpha2`, `alpha3`, `kappa`).
pub fn scan_2d<R: GridRunner + ?Sized>(
    base: &GameMap,
    x: &Axis,
    y: &Axis,
    mode: ScanMode,
    x0: &[f64; 3],
    settings: &OrbitSettings,
    runner: &R,
) -> Result<ScanRaster, Error> {
    settings.validate()?;
    let px: SweepParam = x.name.parse()?;
    let py: SweepParam = y.name.parse()?;
    if px == py {
        return Err(Error::InvalidSetting("scan axes must be different parameters"));
    }
    let cell_map = |c: usize| -> Result<GameMap, Error> {
        let m = px.apply(base, x.value(c % x.n))?;
        py.apply(&m, y.value(c / x.n))
    };
    let n = x.n * y.n;
    match mode {
        ScanMode::Lle => {
            let cells = runner
                .map_indexed(n, |c| lle_of(&cell_map(c)?, x0, settings))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ScanRaster::Lle(Raster {
                x: x.clone(),
                y: y.clone(),
                cells,
                catalog: Vec::new(),
            }))
        }
        ScanMode::Period => {
            let classes = runner
                .map_indexed(n, |c| Ok(evaluate(&cell_map(c)?, x0, settings, false)?.class))
                .into_iter()
                .collect::<Result<Vec<_>, Error>>()?;
            let (cells, catalog) = assign_ids(classes, |a, b| a.kind == b.kind);
            Ok(ScanRaster::Period(Raster {
                x: x.clone(),
                y: y.clone(),
                cells,
                catalog,
            }))
        }
    }
}
