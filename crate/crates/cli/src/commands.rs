//! One function per subcommand. Each returns a stdout report and the files to
//! write; nothing here touches the filesystem.

use std::fmt::Write as _;

use datagame_core::analysis::{
    basin_raster, basin_volume, bifurcation_scan_1d, detect_attractor, find_control_threshold,
    largest_lyapunov, scan_2d, simulate_orbit, stability_region_3d, AttractorKind, Axis, GameMap,
    ScanRaster, Sweep,
};
use datagame_core::dynamics::classified_fixed_points;
use datagame_core::model::{
    concavity_holds, equilibrium_closed_form, equilibrium_profits, price_regime, profit_regime,
    wholesale_threshold, PriceOrdering, ProfitOrdering,
};

use crate::config::RunConfig;
use crate::output;
use crate::runner::Parallel;
use crate::CliError;

/// Kept samples when `orbit.n_keep` is unset.
pub const KEEP_1D: usize = 200;
pub const KEEP_RASTER: usize = 64;

#[derive(Debug, Default)]
pub struct Outcome {
    pub report: String,
    /// `(file name, contents)` relative to the output directory.
    pub files: Vec<(String, String)>,
}

fn core<T>(r: Result<T, datagame_core::Error>) -> Result<T, CliError> {
    r.map_err(CliError::from_core)
}

fn game_map(c: &RunConfig) -> Result<GameMap, CliError> {
    Ok(match c.control()? {
        Some(k) => GameMap::controlled(c.params(), c.rates(), k),
        None => GameMap::new(c.params(), c.rates()),
    })
}

fn pool(c: &RunConfig) -> Result<Parallel, CliError> {
    Parallel::new(c.output.workers).map_err(|e| CliError::Config(format!("output.workers: {e}")))
}

fn axis(name: &str, lo: f64, hi: f64, n: usize) -> Result<Axis, CliError> {
    core(Axis::new(name, lo, hi, n))
}

pub fn equilibrium(c: &RunConfig) -> Result<Outcome, CliError> {
    let p = c.params();
    let e = core(equilibrium_closed_form(&p))?;
    let (pi1, pi2) = core(equilibrium_profits(&p))?;
    let d1 = p.b * (e.p1 - p.r);
    let d2 = p.b * (e.p2 - p.r);
    let mut r = String::new();
    writeln!(r, "parameters: a = {}, b = {}, theta = {}, eta = {}, r = {}", p.a, p.b, p.theta, p.eta, p.r).unwrap();
    writeln!(r, "3*b*eta - 2*theta^2 = {}", p.equilibrium_denominator()).unwrap();
    writeln!(r, "p1 = {}", e.p1).unwrap();
    writeln!(r, "p2 = {}", e.p2).unwrap();
    writeln!(r, "s = {}", e.s).unwrap();
    writeln!(r, "d1 = {d1}").unwrap();
    writeln!(r, "d2 = {d2}").unwrap();
    writeln!(r, "π1 = {pi1}").unwrap();
    writeln!(r, "π2 = {pi2}").unwrap();
    let concave = concavity_holds(&p);
    writeln!(
        r,
        "concavity (2*b*eta - theta^2 = {} > 0): {}",
        p.hessian_determinant(),
        if concave { "holds" } else { "fails" }
    )
    .unwrap();
    if concave {
        let prices = match core(price_regime(&p))? {
            PriceOrdering::P1Greater => "p1 > p2",
            PriceOrdering::P2Greater => "p1 < p2",
            PriceOrdering::Equal => "p1 = p2",
        };
        let profits = match core(profit_regime(&p))? {
            ProfitOrdering::Pi1Greater => "π1 > π2",
            ProfitOrdering::Pi2Greater => "π1 < π2",
            ProfitOrdering::Equal => "π1 = π2",
        };
        writeln!(r, "price regime: {prices}").unwrap();
        writeln!(r, "wholesale threshold r_hat = {}", core(wholesale_threshold(&p))?).unwrap();
        writeln!(r, "profit regime: {profits}").unwrap();
    } else {
        writeln!(r, "price regime: n/a").unwrap();
        writeln!(r, "profit regime: n/a").unwrap();
    }
    Ok(Outcome { report: r, files: Vec::new() })
}

pub fn fixed_points(c: &RunConfig) -> Result<Outcome, CliError> {
    let records = core(classified_fixed_points(&c.params(), &c.rates()))?;
    let mut r = String::new();
    writeln!(r, "{:<4}{:>24}{:>24}{:>24}  {:<11}stability", "", "p1", "p2", "s", "admissible").unwrap();
    for e in &records {
        writeln!(
            r,
            "{:<4}{:>24}{:>24}{:>24}  {:<11}{}",
            e.label,
            e.state.p1,
            e.state.p2,
            e.state.s,
            if e.admissible { "yes" } else { "no" },
            e.stability.as_str()
        )
        .unwrap();
    }
    Ok(Outcome {
        report: r,
        files: vec![("fixed_points.csv".into(), output::fixed_points_csv(&records))],
    })
}

pub fn orbit(c: &RunConfig) -> Result<Outcome, CliError> {
    let map = game_map(c)?;
    let s = c.orbit_settings(KEEP_1D);
    let orbit = core(simulate_orbit(&map, &c.orbit.x0, s.n_transient, s.n_keep, s.divergence_bound))?;
    let class = detect_attractor(&orbit, &s, None);
    let mut r = format!("attractor: {}\n", class.kind);
    if let Some(t) = orbit.diverged_at {
        writeln!(r, "diverged after {t} steps").unwrap();
    }
    Ok(Outcome {
        report: r,
        files: vec![("orbit.csv".into(), output::orbit_csv(s.n_transient + 1, &orbit.samples))],
    })
}

pub fn bif1d(c: &RunConfig) -> Result<Outcome, CliError> {
    let b = &c.bif1d;
    let param = RunConfig::sweep_param(&b.param, "bif1d.param")?;
    let sweep = core(Sweep::new(param, b.lo, b.hi, b.n_points))?;
    let points = core(bifurcation_scan_1d(
        &game_map(c)?,
        &sweep,
        &c.orbit.x0,
        c.policy()?,
        &c.orbit_settings(KEEP_1D),
        b.lle,
        &pool(c)?,
    ))?;
    let mut r = String::from("class changes:\n");
    let mut last: Option<AttractorKind> = None;
    for p in &points {
        if last != Some(p.class.kind) {
            writeln!(r, "  {} = {}: {}", param.name(), p.value, p.class.kind).unwrap();
            last = Some(p.class.kind);
        }
    }
    Ok(Outcome {
        report: r,
        files: vec![("bif1d.csv".into(), output::bif1d_csv(param, &points))],
    })
}

pub fn scan2d(c: &RunConfig) -> Result<Outcome, CliError> {
    let s = &c.scan2d;
    RunConfig::sweep_param(&s.x_param, "scan2d.x_param")?;
    RunConfig::sweep_param(&s.y_param, "scan2d.y_param")?;
    let x = axis(&s.x_param, s.x_lo, s.x_hi, s.nx)?;
    let y = axis(&s.y_param, s.y_lo, s.y_hi, s.ny)?;
    let raster = core(scan_2d(
        &game_map(c)?,
        &x,
        &y,
        c.scan_mode()?,
        &c.orbit.x0,
        &c.orbit_settings(KEEP_RASTER),
        &pool(c)?,
    ))?;
    let mut out = Outcome::default();
    match raster {
        ScanRaster::Period(r) => {
            for e in &r.catalog {
                writeln!(out.report, "class {}: {} ({} cells)", e.id, e.class.kind, e.cells).unwrap();
            }
            out.files = vec![
                ("scan2d.csv".into(), output::raster_csv("period", &r)),
                ("scan2d.pgm".into(), output::class_pgm(&r)),
                ("scan2d.catalog.txt".into(), output::catalog_sidecar("period", &x.name, &y.name, &r.catalog)),
            ];
        }
        ScanRaster::Lle(r) => {
            let positive = r.cells.iter().filter(|&&l| l > 0.0 && l.is_finite()).count();
            let divergent = r.cells.iter().filter(|l| l.is_infinite() && **l > 0.0).count();
            writeln!(out.report, "cells with positive exponent: {positive}").unwrap();
            writeln!(out.report, "divergent cells: {divergent}").unwrap();
            out.files = vec![
                ("scan2d.csv".into(), output::raster_csv("lle", &r)),
                ("scan2d.pgm".into(), output::lle_pgm(&r)),
            ];
        }
    }
    Ok(out)
}

pub fn basin(c: &RunConfig) -> Result<Outcome, CliError> {
    let b = &c.basin;
    let p1 = axis("p1", b.p1_lo, b.p1_hi, b.nx)?;
    let p2 = axis("p2", b.p2_lo, b.p2_hi, b.ny)?;
    let map = game_map(c)?;
    let settings = c.orbit_settings(KEEP_RASTER);
    let runner = pool(c)?;
    let mut out = Outcome::default();
    let catalog = if b.s_slices <= 1 {
        let r = core(basin_raster(&map, &p1, &p2, b.s0, &settings, &runner))?;
        out.files.push(("basin.csv".into(), output::raster_csv("basin", &r)));
        out.files.push(("basin.pgm".into(), output::class_pgm(&r)));
        r.catalog
    } else {
        let s = axis("s", b.s_lo, b.s_hi, b.s_slices)?;
        let vol = core(basin_volume(&map, &p1, &p2, &s, &settings, &runner))?;
        for k in 0..s.n {
            let r = vol.slice(k);
            let kind = format!("basin s={}", s.value(k));
            out.files.push((format!("basin_s{k}.csv"), output::raster_csv(&kind, &r)));
            out.files.push((format!("basin_s{k}.pgm"), output::class_pgm(&r)));
        }
        vol.catalog
    };
    for e in &catalog {
        writeln!(out.report, "class {}: {} ({} cells)", e.id, e.class.kind, e.cells).unwrap();
    }
    out.files.push(("basin.catalog.txt".into(), output::catalog_sidecar("basin", "p1", "p2", &catalog)));
    Ok(out)
}

pub fn stable_region(c: &RunConfig) -> Result<Outcome, CliError> {
    let g = &c.region;
    let a1 = axis("alpha1", g.lo[0], g.hi[0], g.n[0])?;
    let a2 = axis("alpha2", g.lo[1], g.hi[1], g.n[1])?;
    let a3 = axis("alpha3", g.lo[2], g.hi[2], g.n[2])?;
    let voxels = core(stability_region_3d(&c.params(), &a1, &a2, &a3))?;
    let stable = voxels.iter().filter(|v| v.is_stable()).count();
    Ok(Outcome {
        report: format!("stable voxels: {stable} of {}\n", voxels.len()),
        files: vec![("stable_region.csv".into(), output::region_csv(&voxels))],
    })
}

pub fn lle(c: &RunConfig) -> Result<Outcome, CliError> {
    let s = c.orbit_settings(KEEP_1D);
    let l = core(largest_lyapunov(&game_map(c)?, &c.orbit.x0, s.n_transient, s.lle_steps, s.divergence_bound))?;
    Ok(Outcome {
        report: format!("lle = {l}\n"),
        files: Vec::new(),
    })
}

pub fn control_threshold(c: &RunConfig) -> Result<Outcome, CliError> {
    let t = core(find_control_threshold(&c.params(), &c.rates()))?;
    let mut r = format!("kappa* = {}\n", t.kappa_star);
    if t.already_stable {
        r.push_str("equilibrium is stable without control\n");
    } else {
        r.push_str("equilibrium is stable for kappa < kappa*\n");
    }
    Ok(Outcome { report: r, files: Vec::new() })
}
