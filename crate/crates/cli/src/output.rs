//! Text outputs: CSV tables, plain PGM images and key-value sidecars.
//!
//! Floats use Rust's shortest round-trip formatting, so values parse back
//! exactly and identical runs produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use datagame_core::analysis::{
    AttractorKind, BifurcationPoint, CatalogEntry, Raster, SweepParam, Voxel,
};
use datagame_core::dynamics::EquilibriumRecord;

use crate::CliError;

const COORDS: [&str; 3] = ["p1", "p2", "s"];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per kept sample and coordinate; divergent points get a single row
/// with empty coordinate and value.
pub fn bif1d_csv(param: SweepParam, points: &[BifurcationPoint]) -> String {
    let mut out = format!("{},coordinate,value,class,lle\n", param.name());
    for p in points {
        let lle = opt(p.lle);
        if p.samples.is_empty() || p.class.kind == AttractorKind::Divergent {
            writeln!(out, "{},,,{},{}", p.value, p.class.kind, lle).unwrap();
            continue;
        }
        for x in &p.samples {
            for (name, v) in COORDS.iter().zip(x) {
                writeln!(out, "{},{},{},{},{}", p.value, name, v, p.class.kind, lle).unwrap();
            }
        }
    }
    out
}

/// Payload of a raster cell as CSV text.
pub trait CellText: Copy {
    const PAYLOAD: &'static str;
    fn text(self) -> String;
}

impl CellText for u32 {
    const PAYLOAD: &'static str = "class-id";
    fn text(self) -> String {
        self.to_string()
    }
}

impl CellText for f64 {
    const PAYLOAD: &'static str = "lle";
    fn text(self) -> String {
        self.to_string()
    }
}

/// Metadata rows (`# key=value`), a header, then one row per cell in
/// row-major order.
pub fn raster_csv<T: CellText, const N: usize>(kind: &str, r: &Raster<T, N>) -> String {
    let mut out = String::new();
    writeln!(out, "# raster={kind}").unwrap();
    for (tag, a) in [("x", &r.x), ("y", &r.y)] {
        writeln!(out, "# {tag}={} lo={} hi={} n={}", a.name, a.lo, a.hi, a.n).unwrap();
    }
    writeln!(out, "# payload={}", T::PAYLOAD).unwrap();
    writeln!(out, "# cells=cell-centers row-major").unwrap();
    writeln!(out, "i,j,{},{},value", r.x.name, r.y.name).unwrap();
    for j in 0..r.y.n {
        for i in 0..r.x.n {
            let v = r.get(i, j).text();
            writeln!(out, "{i},{j},{},{},{v}", r.x.value(i), r.y.value(j)).unwrap();
        }
    }
    out
}

fn pgm(width: usize, height: usize, maxval: u32, pixel: impl Fn(usize, usize) -> u32) -> String {
    let mut out = format!("P2\n{width} {height}\n{maxval}\n");
    // top image row is the largest y
    for j in (0..height).rev() {
        let row: Vec<String> = (0..width).map(|i| pixel(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Indexed image: the gray level of a cell is its class id.
pub fn class_pgm<const N: usize>(r: &Raster<u32, N>) -> String {
    let maxval = r.catalog.iter().map(|e| e.id).max().unwrap_or(0).max(1);
    pgm(r.x.n, r.y.n, maxval, |i, j| r.get(i, j))
}

/// Finite exponents scaled to 1..=255 between the raster's extremes;
/// divergent (non-finite) cells are 0.
pub fn lle_pgm<const N: usize>(r: &Raster<f64, N>) -> String {
    let finite = r.cells.iter().copied().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    pgm(r.x.n, r.y.n, 255, |i, j| {
        let v = r.get(i, j);
        if v.is_finite() {
            1 + (254.0 * (v - lo) / span).round() as u32
        } else {
            0
        }
    })
}

fn point_text<const N: usize>(x: &[f64; N]) -> String {
    x.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
}

/// Human-readable catalog with a stable key order.
pub fn catalog_sidecar<const N: usize>(kind: &str, x: &str, y: &str, catalog: &[CatalogEntry<N>]) -> String {
    let mut out = String::new();
    writeln!(out, "raster = {kind}").unwrap();
    writeln!(out, "x = {x}").unwrap();
    writeln!(out, "y = {y}").unwrap();
    writeln!(out, "classes = {}", catalog.len()).unwrap();
    for e in catalog {
        let c = &e.class;
        let key = format!("class.{}", e.id);
        writeln!(out, "{key}.kind = {}", c.kind.name()).unwrap();
        if let Some(k) = c.kind.period() {
            writeln!(out, "{key}.period = {k}").unwrap();
        }
        writeln!(out, "{key}.cells = {}", e.cells).unwrap();
        if let Some(l) = c.lle {
            writeln!(out, "{key}.lle = {l}").unwrap();
        }
        for (n, p) in c.points.iter().enumerate() {
            writeln!(out, "{key}.point.{n} = {}", point_text(p)).unwrap();
        }
        if let Some((lo, hi)) = &c.bounds {
            writeln!(out, "{key}.bounds.lo = {}", point_text(lo)).unwrap();
            writeln!(out, "{key}.bounds.hi = {}", point_text(hi)).unwrap();
        }
    }
    out
}

pub fn fixed_points_csv(records: &[EquilibriumRecord]) -> String {
    let mut out = String::from("label,p1,p2,s,admissible,stability\n");
    for e in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            e.label,
            e.state.p1,
            e.state.p2,
            e.state.s,
            e.admissible,
            e.stability.as_str()
        )
        .unwrap();
    }
    out
}

pub fn region_csv(voxels: &[Voxel]) -> String {
    let mut out = String::from("alpha1,alpha2,alpha3,stable,stability\n");
    for v in voxels {
        writeln!(
            out,
            "{},{},{},{},{}",
            v.rates.alpha1,
            v.rates.alpha2,
            v.rates.alpha3,
            u8::from(v.is_stable()),
            v.stability.as_str()
        )
        .unwrap();
    }
    out
}

pub fn orbit_csv(start: usize, states: &[[f64; 3]]) -> String {
    let mut out = String::from("t,p1,p2,s\n");
    for (t, x) in states.iter().enumerate() {
        writeln!(out, "{},{},{},{}", start + t, x[0], x[1], x[2]).unwrap();
    }
    out
}

/// Writes named files into `dir`, creating it when needed.
pub fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| CliError::Io(path.clone(), e))?;
            Ok(path)
        })
        .collect()
}
