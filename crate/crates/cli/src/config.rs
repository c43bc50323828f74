//! TOML run configuration.

use std::path::Path;

use koenigs::model::validate_spec;
use koenigs::{Constants, SolverSettings, Space, SpaceSpec, Window};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SpaceName {
    #[serde(rename = "K_I", alias = "KI")]
    KI,
    #[serde(rename = "K_II", alias = "KII")]
    KII,
    #[serde(rename = "K_III", alias = "KIII")]
    KIII,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metric {
    pub alpha: Option<f64>,
    pub alpha1: Option<f64>,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Potential {
    pub omega: Option<f64>,
    pub kx: Option<f64>,
    pub ky: Option<f64>,
    pub ky_lin: Option<f64>,
    pub alpha2: Option<f64>,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
}

/// Green-function evaluation points `(r′, φ′)`, `(r″, φ″)` and truncation.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenConfig {
    pub r1: Option<f64>,
    pub phi1: Option<f64>,
    pub r2: Option<f64>,
    pub phi2: Option<f64>,
    pub n_max: Option<u32>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    #[serde(default = "one")]
    pub m: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

/// The file as written.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub space: SpaceName,
    pub constants: Option<ConstantsConfig>,
    pub metric: Metric,
    pub potential: Potential,
    #[serde(default)]
    pub solver: SolverSettings,
    pub window: Option<Window>,
    #[serde(default)]
    pub green: GreenConfig,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: SpaceSpec,
    pub solver: SolverSettings,
    /// Coordinate rectangle given in the file, if any.
    pub window: Option<Window>,
    pub green: GreenConfig,
    /// Validation failures; empty for configs returned by [`RunConfig::from_toml`].
    pub violations: Vec<String>,
}

/// Rectangle used to sample metric positivity when the file gives none.
pub const DEFAULT_WINDOW: Window = Window { x_min: 0.05, x_max: 5.0, y_min: 0.05, y_max: 5.0 };

fn need(v: Option<f64>, field: &str, space: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::config(format!("missing field `{field}` (required for {space})")))
}

impl RunConfig {
    /// Parses and validates; any violation is a configuration error.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg = Self::from_toml_unchecked(text)?;
        if !cfg.violations.is_empty() {
            return Err(CliError::config(cfg.violations.join("; ")));
        }
        Ok(cfg)
    }

    /// Parses, recording validation failures instead of rejecting them.
    /// Missing or malformed fields are still errors.
    pub fn from_toml_unchecked(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::config(e.message().to_string()))?;
        let Metric { alpha, alpha1, beta, gamma, delta } = raw.metric;
        let p = &raw.potential;
        let space = match raw.space {
            SpaceName::KI => Space::KI {
                alpha: need(alpha, "metric.alpha", "K_I")?,
                beta,
                gamma,
                delta,
                omega: need(p.omega, "potential.omega", "K_I")?,
                kx: need(p.kx, "potential.kx", "K_I")?,
                ky: need(p.ky, "potential.ky", "K_I")?,
            },
            SpaceName::KII => Space::KII {
                alpha: need(alpha, "metric.alpha", "K_II")?,
                beta,
                gamma,
                delta,
                omega: need(p.omega, "potential.omega", "K_II")?,
                kx: need(p.kx, "potential.kx", "K_II")?,
                ky_lin: need(p.ky_lin, "potential.ky_lin", "K_II")?,
            },
            SpaceName::KIII => Space::KIII {
                alpha1: need(alpha1, "metric.alpha1", "K_III")?,
                beta,
                gamma,
                delta,
                alpha2: need(p.alpha2, "potential.alpha2", "K_III")?,
                k1: need(p.k1, "potential.k1", "K_III")?,
                k2: need(p.k2, "potential.k2", "K_III")?,
            },
        };
        let constants = raw.constants.map(|c| Constants { m: c.m, hbar: c.hbar }).unwrap_or_default();
        let spec = SpaceSpec::new(space).with_constants(constants);
        let mut violations = raw.solver.problems();
        violations.extend(validate_spec(&spec, &raw.window.unwrap_or(DEFAULT_WINDOW)).violations);
        Ok(RunConfig { spec, solver: raw.solver, window: raw.window, green: raw.green, violations })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_toml(&read(path)?)
    }

    pub fn load_unchecked(path: &Path) -> Result<Self, CliError> {
        Self::from_toml_unchecked(&read(path)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))
}
