//! Run configuration: a TOML file overlaid with command-line flags.

use datagame_core::analysis::{InitialPolicy, OrbitSettings, ScanMode, SweepParam};
use datagame_core::dynamics::{AdjustmentRates, ControlParam};
use datagame_core::model::ModelParams;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    pub eta: f64,
    pub r: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::BASELINE;
        Self {
            a: p.a,
            b: p.b,
            theta: p.theta,
            eta: p.eta,
            r: p.r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesSection {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl Default for RatesSection {
    fn default() -> Self {
        Self {
            alpha1: 0.1,
            alpha2: 0.1,
            alpha3: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitSection {
    pub x0: [f64; 3],
    pub n_transient: usize,
    /// Kept samples; unset means 200 for 1D scans and 64 for rasters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_keep: Option<usize>,
    pub divergence_bound: f64,
    pub cycle_tol: f64,
    pub max_period: usize,
    pub lle_threshold: f64,
    pub lle_steps: usize,
    pub match_tol: f64,
    /// `fixed` or `follow`.
    pub policy: String,
}

impl Default for OrbitSection {
    fn default() -> Self {
        let s = OrbitSettings::SCAN_1D;
        Self {
            x0: [1.0, 1.0, 1.0],
            n_transient: s.n_transient,
            n_keep: None,
            divergence_bound: s.divergence_bound,
            cycle_tol: s.cycle_tol,
            max_period: s.max_period,
            lle_threshold: s.lle_threshold,
            lle_steps: s.lle_steps,
            match_tol: s.match_tol,
            policy: "fixed".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bif1dSection {
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
    pub lle: bool,
}

impl Default for Bif1dSection {
    fn default() -> Self {
        Self {
            param: "alpha1".into(),
            lo: 0.05,
            hi: 0.6,
            n_points: 1101,
            lle: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scan2dSection {
    pub x_param: String,
    pub x_lo: f64,
    pub x_hi: f64,
    pub nx: usize,
    pub y_param: String,
    pub y_lo: f64,
    pub y_hi: f64,
    pub ny: usize,
    /// `period` or `lle`.
    pub mode: String,
}

impl Default for Scan2dSection {
    fn default() -> Self {
        Self {
            x_param: "alpha1".into(),
            x_lo: 0.05,
            x_hi: 0.6,
            nx: 300,
            y_param: "alpha2".into(),
            y_lo: 0.05,
            y_hi: 0.6,
            ny: 300,
            mode: "period".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasinSection {
    pub p1_lo: f64,
    pub p1_hi: f64,
    pub nx: usize,
    pub p2_lo: f64,
    pub p2_hi: f64,
    pub ny: usize,
    pub s0: f64,
    /// With more than one slice, `s(0)` runs over cell centers of
    /// `[s_lo, s_hi]` and `s0` is ignored.
    pub s_slices: usize,
    pub s_lo: f64,
    pub s_hi: f64,
}

impl Default for BasinSection {
    fn default() -> Self {
        Self {
            p1_lo: 0.0,
            p1_hi: 12.0,
            nx: 200,
            p2_lo: 0.0,
            p2_hi: 12.0,
            ny: 200,
            s0: 1.0,
            s_slices: 1,
            s_lo: 0.0,
            s_hi: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionSection {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub n: [usize; 3],
}

impl Default for RegionSection {
    fn default() -> Self {
        Self {
            lo: [0.0; 3],
            hi: [1.0; 3],
            n: [50; 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: String,
    /// Worker threads for grid scans; 0 uses every core.
    pub workers: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: "out".into(),
            workers: 0,
        }
    }
}

/// Everything a subcommand needs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Reserved; every computation is deterministic.
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    pub model: ModelSection,
    pub rates: RatesSection,
    pub orbit: OrbitSection,
    pub bif1d: Bif1dSection,
    pub scan2d: Scan2dSection,
    pub basin: BasinSection,
    pub region: RegionSection,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("cannot parse config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn params(&self) -> ModelParams {
        let m = &self.model;
        ModelParams {
            a: m.a,
            b: m.b,
            theta: m.theta,
            eta: m.eta,
            r: m.r,
        }
    }

    pub fn rates(&self) -> AdjustmentRates {
        AdjustmentRates::new(self.rates.alpha1, self.rates.alpha2, self.rates.alpha3)
    }

    pub fn control(&self) -> Result<Option<ControlParam>, CliError> {
        self.kappa.map(ControlParam::new).transpose().map_err(CliError::from_core)
    }

    pub fn orbit_settings(&self, default_keep: usize) -> OrbitSettings {
        let o = &self.orbit;
        OrbitSettings {
            n_transient: o.n_transient,
            n_keep: o.n_keep.unwrap_or(default_keep),
            divergence_bound: o.divergence_bound,
            cycle_tol: o.cycle_tol,
            max_period: o.max_period,
            lle_threshold: o.lle_threshold,
            lle_steps: o.lle_steps,
            match_tol: o.match_tol,
        }
    }

    pub fn policy(&self) -> Result<InitialPolicy, CliError> {
        match self.orbit.policy.as_str() {
            "fixed" => Ok(InitialPolicy::Fixed),
            "follow" => Ok(InitialPolicy::Follow),
            other => Err(CliError::Config(format!(
                "orbit.policy = {other:?}: expected \"fixed\" or \"follow\""
            ))),
        }
    }

    pub fn scan_mode(&self) -> Result<ScanMode, CliError> {
        match self.scan2d.mode.as_str() {
            "period" => Ok(ScanMode::Period),
            "lle" => Ok(ScanMode::Lle),
            other => Err(CliError::Config(format!(
                "scan2d.mode = {other:?}: expected \"period\" or \"lle\""
            ))),
        }
    }

    pub fn sweep_param(name: &str, field: &str) -> Result<SweepParam, CliError> {
        name.parse()
            .map_err(|_| CliError::Config(format!("{field} = {name:?}: expected alpha1, alpha2, alpha3 or kappa")))
    }

    /// Range checks that apply to every subcommand.
    pub fn validate(&self) -> Result<(), CliError> {
        self.params().validate().map_err(CliError::from_core)?;
        self.rates().validate().map_err(CliError::from_core)?;
        self.control()?;
        self.orbit_settings(64).validate().map_err(CliError::from_core)?;
        self.policy()?;
        if self.orbit.x0.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config("orbit.x0 must be finite".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let c = RunConfig::from_toml("kappa = 0.4\n[model]\na = 3.0\nb = 0.5\ntheta = 0.3\neta = 0.6\nr = 0.7\n").unwrap();
        assert_eq!(c.kappa, Some(0.4));
        assert_eq!(c.model.a, 3.0);
        assert_eq!(c.rates, RatesSection::default());
        assert!(RunConfig::from_toml("[model]\nfoo = 1\n").is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let mut c = RunConfig::default();
        c.model.b = 1.5;
        let msg = c.validate().unwrap_err().to_string();
        assert!(msg.contains("b = 1.5") && msg.contains("0 < b <= 1"), "{msg}");
        let mut c = RunConfig::default();
        c.rates.alpha2 = 0.0;
        assert!(c.validate().unwrap_err().to_string().contains("alpha2"));
        let mut c = RunConfig::default();
        c.orbit.policy = "random".into();
        assert!(c.validate().is_err());
    }
}
