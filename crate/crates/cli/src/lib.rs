//! Command-line front end for `datagame-core`.
//!
//! [`run`] parses arguments, overlays flags on an optional TOML config,
//! validates the result and dispatches to one subcommand. Tabular and raster
//! results are written under the output directory; short reports go to
//! stdout.

pub mod commands;
pub mod config;
pub mod output;
pub mod runner;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use datagame_core::Error as CoreError;

pub use config::RunConfig;
pub use output::write_outputs;
pub use runner::Parallel;

/// Failure of one CLI invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flag, config file or parameter range.
    #[error("{0}")]
    Config(String),
    /// The parameters make a closed form or a fixed point undefined.
    #[error("{0}")]
    Singular(CoreError),
    #[error("{path}: {source}", path = .0.display(), source = .1)]
    Io(PathBuf, std::io::Error),
}

impl CliError {
    pub fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::SingularDenominator { .. }
            | CoreError::SingularFixedPoint { .. }
            | CoreError::Precondition(_) => CliError::Singular(e),
            CoreError::OutOfRange { .. } | CoreError::InvalidSetting(_) => {
                CliError::Config(e.to_string())
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Singular(_) => 2,
            CliError::Config(_) | CliError::Io(..) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "datagame", version, about = "Price and data-investment dynamics of an energy data trading duopoly")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML config file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print the effective config as TOML and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<String>,
    /// Worker threads for grid scans (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    alpha1: Option<f64>,
    #[arg(long, global = true)]
    alpha2: Option<f64>,
    #[arg(long, global = true)]
    alpha3: Option<f64>,
    /// Hybrid control gain in (0, 1].
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Initial state `p1,p2,s`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    x0: Option<Vec<f64>>,
    #[arg(long, global = true)]
    transient: Option<usize>,
    #[arg(long, global = true)]
    keep: Option<usize>,
    #[arg(long, global = true)]
    lle_steps: Option<usize>,
    /// `fixed` or `follow`.
    #[arg(long, global = true)]
    policy: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form equilibrium, profits and regime report.
    Equilibrium,
    /// The eight fixed points of the adjustment map with their stability.
    FixedPoints,
    /// Post-transient orbit from `x0`.
    Orbit,
    /// One-parameter bifurcation diagram.
    Bif1d {
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Skip the exponent where a period is found.
        #[arg(long)]
        no_lle: bool,
    },
    /// Two-parameter period or exponent raster.
    Scan2d {
        #[arg(long)]
        x_param: Option<String>,
        #[arg(long)]
        x_lo: Option<f64>,
        #[arg(long)]
        x_hi: Option<f64>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        y_param: Option<String>,
        #[arg(long)]
        y_lo: Option<f64>,
        #[arg(long)]
        y_hi: Option<f64>,
        #[arg(long)]
        ny: Option<usize>,
        /// `period` or `lle`.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Basins of attraction over initial prices.
    Basin {
        #[arg(long)]
        p1_lo: Option<f64>,
        #[arg(long)]
        p1_hi: Option<f64>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        p2_lo: Option<f64>,
        #[arg(long)]
        p2_hi: Option<f64>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<f64>,
        #[arg(long)]
        s_slices: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        s_lo: Option<f64>,
        #[arg(long)]
        s_hi: Option<f64>,
    },
    /// Jury stability of the interior equilibrium over a box of rates.
    StableRegion {
        #[arg(long, value_delimiter = ',')]
        lo: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        hi: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
    },
    /// Largest Lyapunov exponent of the orbit from `x0`.
    Lle,
    /// Largest control gain that stabilizes the interior equilibrium.
    ControlThreshold,
}

fn triple<T: Copy>(v: &[T], flag: &str) -> Result<[T; 3], CliError> {
    v.try_into()
        .map_err(|_| CliError::Config(format!("--{flag} takes exactly three comma-separated values")))
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl GlobalArgs {
    fn apply(&self, c: &mut RunConfig) -> Result<(), CliError> {
        set(&mut c.seed, self.seed);
        set(&mut c.output.dir, self.out.clone());
        set(&mut c.output.workers, self.workers);
        set(&mut c.model.a, self.a);
        set(&mut c.model.b, self.b);
        set(&mut c.model.theta, self.theta);
        set(&mut c.model.eta, self.eta);
        set(&mut c.model.r, self.r);
        set(&mut c.rates.alpha1, self.alpha1);
        set(&mut c.rates.alpha2, self.alpha2);
        set(&mut c.rates.alpha3, self.alpha3);
        if self.kappa.is_some() {
            c.kappa = self.kappa;
        }
        if let Some(x0) = &self.x0 {
            c.orbit.x0 = triple(x0, "x0")?;
        }
        set(&mut c.orbit.n_transient, self.transient);
        if self.keep.is_some() {
            c.orbit.n_keep = self.keep;
        }
        set(&mut c.orbit.lle_steps, self.lle_steps);
        set(&mut c.orbit.policy, self.policy.clone());
        Ok(())
    }
}

impl Command {
    fn apply(&self, c: &mut RunConfig) -> Result<(), CliError> {
        match self {
            Command::Bif1d { param, lo, hi, points, no_lle } => {
                let s = &mut c.bif1d;
                set(&mut s.param, param.clone());
                set(&mut s.lo, *lo);
                set(&mut s.hi, *hi);
                set(&mut s.n_points, *points);
                if *no_lle {
                    s.lle = false;
                }
            }
            Command::Scan2d { x_param, x_lo, x_hi, nx, y_param, y_lo, y_hi, ny, mode } => {
                let s = &mut c.scan2d;
                set(&mut s.x_param, x_param.clone());
                set(&mut s.x_lo, *x_lo);
                set(&mut s.x_hi, *x_hi);
                set(&mut s.nx, *nx);
                set(&mut s.y_param, y_param.clone());
                set(&mut s.y_lo, *y_lo);
                set(&mut s.y_hi, *y_hi);
                set(&mut s.ny, *ny);
                set(&mut s.mode, mode.clone());
            }
            Command::Basin { p1_lo, p1_hi, nx, p2_lo, p2_hi, ny, s0, s_slices, s_lo, s_hi } => {
                let s = &mut c.basin;
                set(&mut s.p1_lo, *p1_lo);
                set(&mut s.p1_hi, *p1_hi);
                set(&mut s.nx, *nx);
                set(&mut s.p2_lo, *p2_lo);
                set(&mut s.p2_hi, *p2_hi);
                set(&mut s.ny, *ny);
                set(&mut s.s0, *s0);
                set(&mut s.s_slices, *s_slices);
                set(&mut s.s_lo, *s_lo);
                set(&mut s.s_hi, *s_hi);
            }
            Command::StableRegion { lo, hi, n } => {
                let s = &mut c.region;
                if let Some(v) = lo {
                    s.lo = triple(v, "lo")?;
                }
                if let Some(v) = hi {
                    s.hi = triple(v, "hi")?;
                }
                if let Some(v) = n {
                    s.n = triple(v, "n")?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
            RunConfig::from_toml(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    cli.global.apply(&mut config)?;
    cli.command.apply(&mut config)?;
    Ok(config)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(cli)?;
    let stdout_err = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    if cli.global.dump_config {
        return out.write_all(config.to_toml().as_bytes()).map_err(stdout_err);
    }
    config.validate()?;
    let outcome = match cli.command {
        Command::Equilibrium => commands::equilibrium(&config)?,
        Command::FixedPoints => commands::fixed_points(&config)?,
        Command::Orbit => commands::orbit(&config)?,
        Command::Bif1d { .. } => commands::bif1d(&config)?,
        Command::Scan2d { .. } => commands::scan2d(&config)?,
        Command::Basin { .. } => commands::basin(&config)?,
        Command::StableRegion { .. } => commands::stable_region(&config)?,
        Command::Lle => commands::lle(&config)?,
        Command::ControlThreshold => commands::control_threshold(&config)?,
    };
    let mut report = outcome.report;
    if !outcome.files.is_empty() {
        for path in write_outputs(config.output.dir.as_ref(), &outcome.files)? {
            report.push_str(&format!("wrote {}\n", path.display()));
        }
    }
    out.write_all(report.as_bytes()).map_err(stdout_err)
}

/// Runs one invocation (`argv[0]` is the program name) and returns the
/// process exit code: 0 on success, 1 for usage, config and I/O errors, 2
/// when the parameters are singular.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("datagame").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_and_help() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"), "{err}");
        let (code, _, err) = call(&[]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"));
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("bif1d") && out.contains("control-threshold"));
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["equilibrium", "--b", "1.5"]);
        assert_eq!(code, 1);
        assert!(err.contains("b = 1.5") && err.contains("0 < b <= 1"), "{err}");
        // 3 b eta = 2 theta^2 makes the interior equilibrium undefined.
        let theta = 0.3f64.sqrt().to_string();
        let (code, _, err) = call(&["equilibrium", "--theta", &theta]);
        assert_eq!(code, 2, "{err}");
        assert!(err.contains("singular"));
        let (code, _, err) = call(&["orbit", "--x0", "1,2"]);
        assert_eq!(code, 1);
        assert!(err.contains("--x0"));
    }

    #[test]
    fn flags_override_config_in_dump() {
        let (code, out, _) = call(&["--dump-config", "bif1d", "--alpha2", "0.25", "--points", "11", "--x0", "-1,2,3"]);
        assert_eq!(code, 0);
        let c = RunConfig::from_toml(&out).unwrap();
        assert_eq!(c.rates.alpha2, 0.25);
        assert_eq!(c.bif1d.n_points, 11);
        assert_eq!(c.orbit.x0, [-1.0, 2.0, 3.0]);
    }
}
