use alloc::vec::Vec;

use super::raster::assign_ids;
use super::{
    detect_attractor, largest_lyapunov, simulate_orbit, AttractorClass, AttractorKind, Axis,
    CatalogEntry, DiscreteMap, GridRunner, OrbitSettings, Raster,
};
use crate::Error;

fn classify_start<M: DiscreteMap<3> + Sync>(
    map: &M,
    x0: &[f64; 3],
    settings: &OrbitSettings,
) -> Result<AttractorClass<3>, Error> {
    let orbit = simulate_orbit(
        map,
        x0,
        settings.n_transient,
        settings.n_keep,
        settings.divergence_bound,
    )?;
    let class = detect_attractor(&orbit, settings, None);
    if class.kind != AttractorKind::Unresolved {
        return Ok(class);
    }
    let lle = largest_lyapunov(
        map,
        x0,
        settings.n_transient,
        settings.lle_steps,
        settings.divergence_bound,
    )?;
    Ok(detect_attractor(&orbit, settings, Some(lle)))
}

/// Basins of attraction over initial `(p1, p2)` cell centers with `s(0) = s0`.
///
/// Attractors reached from different cells are identified when their
/// representative points agree within `settings.match_tol`, so the catalog
/// lists each coexisting attractor once.
pub fn basin_raster<M, R>(
    map: &M,
    p1: &Axis,
    p2: &Axis,
    s0: f64,
    settings: &OrbitSettings,
    runner: &R,
) -> Result<Raster<u32, 3>, Error>
where
    M: DiscreteMap<3> + Sync,
    R: GridRunner + ?Sized,
{
    let s = Axis::new("s", s0, s0 + 1.0, 1)?;
    let vol = basin_volume_inner(map, p1, p2, &s, Some(s0), settings, runner)?;
    Ok(Raster {
        x: vol.x,
        y: vol.y,
        cells: vol.cells,
        catalog: vol.catalog,
    })
}

/// Basins over a stack of `s(0)` slices sharing one catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct BasinVolume {
    pub x: Axis,
    pub y: Axis,
    pub z: Axis,
    /// Index `(k * y.n + j) * x.n + i`.
    pub cells: Vec<u32>,
    pub catalog: Vec<CatalogEntry<3>>,
}

impl BasinVolume {
    /// Slice `k` as a raster with the shared catalog.
    pub fn slice(&self, k: usize) -> Raster<u32, 3> {
        let len = self.x.n * self.y.n;
        Raster {
            x: self.x.clone(),
            y: self.y.clone(),
            cells: self.cells[k * len..(k + 1) * len].to_vec(),
            catalog: self.catalog.clone(),
        }
    }
}

/// Three-dimensional basins over cell centers of `(p1, p2, s)`.
pub fn basin_volume<M, R>(
    map: &M,
    p1: &Axis,
    p2: &Axis,
    s: &Axis,
    settings: &OrbitSettings,
    runner: &R,
) -> Result<BasinVolume, Error>
where
    M: DiscreteMap<3> + Sync,
    R: GridRunner + ?Sized,
{
    basin_volume_inner(map, p1, p2, s, None, settings, runner)
}

fn basin_volume_inner<M, R>(
    map: &M,
    p1: &Axis,
    p2: &Axis,
    s: &Axis,
    fixed_s: Option<f64>,
    settings: &OrbitSettings,
    runner: &R,
) -> Result<BasinVolume, Error>
where
    M: DiscreteMap<3> + Sync,
    R: GridRunner + ?Sized,
{
    settings.validate()?;
    if !(s.lo >= 0.0) || fixed_s.is_some_and(|v| !(v >= 0.0)) {
        return Err(Error::InvalidSetting("initial business value must be non-negative"));
    }
    let plane = p1.n * p2.n;
    let classes = runner
        .map_indexed(plane * s.n, |c| {
            let (k, rest) = (c / plane, c % plane);
            let x0 = [
                p1.value(rest % p1.n),
                p2.value(rest / p1.n),
                fixed_s.unwrap_or_else(|| s.value(k)),
            ];
            classify_start(map, &x0, settings)
        })
        .into_iter()
        .collect::<Result<Vec<_>, Error>>()?;
    let tol = settings.match_tol;
    let (cells, catalog) = assign_ids(classes, |a, b| a.same_attractor(b, tol));
    Ok(BasinVolume {
        x: p1.clone(),
        y: p2.clone(),
        z: s.clone(),
        cells,
        catalog,
    })
}
