use alloc::string::String;
use alloc::vec::Vec;

use super::AttractorClass;
use crate::Error;

/// Class id of divergent cells.
pub const DIVERGENT_ID: u32 = 0;
/// Class id of cells with neither a period nor a positive exponent.
pub const UNRESOLVED_ID: u32 = 1;

/// A uniformly divided interval; samples sit at cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidSetting("axis needs at least one cell"));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSetting("axis range must satisfy lo < hi"));
        }
        Ok(Self {
            name: name.into(),
            lo,
            hi,
            n,
        })
    }

    /// Center of cell `i`.
    pub fn value(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * (self.hi - self.lo) / self.n as f64
    }
}

/// A distinct attractor found in a raster.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry<const N: usize> {
    pub id: u32,
    pub class: AttractorClass<N>,
    /// Number of cells carrying this id.
    pub cells: usize,
}

/// Row-major grid: cell `(i, j)` lives at `j * x.n + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster<T, const N: usize> {
    pub x: Axis,
    pub y: Axis,
    pub cells: Vec<T>,
    /// Empty for float payloads.
    pub catalog: Vec<CatalogEntry<N>>,
}

impl<T: Copy, const N: usize> Raster<T, N> {
    pub fn get(&self, i: usize, j: usize) -> T {
        self.cells[j * self.x.n + i]
    }
}

impl<const N: usize> Raster<u32, N> {
    pub fn entry(&self, id: u32) -> Option<&CatalogEntry<N>> {
        self.catalog.iter().find(|e| e.id == id)
    }

    /// Catalog entries other than the reserved divergent/unresolved ones.
    pub fn attractors(&self) -> impl Iterator<Item = &CatalogEntry<N>> {
        self.catalog.iter().filter(|e| e.id > UNRESOLVED_ID)
    }
}

/// Sequential id assignment in cell order. `same` decides whether a cell's
/// class matches an existing catalog entry; the first match wins.
pub(crate) fn assign_ids<const N: usize>(
    classes: Vec<AttractorClass<N>>,
    same: impl Fn(&AttractorClass<N>, &AttractorClass<N>) -> bool,
) -> (Vec<u32>, Vec<CatalogEntry<N>>) {
    use super::AttractorKind::*;
    let mut catalog: Vec<CatalogEntry<N>> = Vec::new();
    let mut reserved: [Option<CatalogEntry<N>>; 2] = [None, None];
    let mut ids = Vec::with_capacity(classes.len());
    for class in classes {
        let slot = match class.kind {
            Divergent => Some(DIVERGENT_ID),
            Unresolved => Some(UNRESOLVED_ID),
            _ => None,
        };
        let id = if let Some(id) = slot {
            let e = reserved[id as usize].get_or_insert_with(|| CatalogEntry {
                id,
                class: AttractorClass {
                    points: Vec::new(),
                    bounds: None,
                    lle: None,
                    ..class
                },
                cells: 0,
            });
            e.cells += 1;
            id
        } else if let Some(e) = catalog.iter_mut().find(|e| same(&e.class, &class)) {
            e.cells += 1;
            e.id
        } else {
            let id = catalog.len() as u32 + UNRESOLVED_ID + 1;
            catalog.push(CatalogEntry {
                id,
                class,
                cells: 1,
            });
            id
        };
        ids.push(id);
    }
    let mut all: Vec<_> = reserved.into_iter().flatten().collect();
    all.extend(catalog);
    (ids, all)
}
