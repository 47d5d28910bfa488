//! Scenario configuration: a JSON schema with full defaults, dotted-path
//! overrides, and builders for the typed models the simulator consumes.
//!
//! Every field has a default, so `{}` is a valid config. Unknown keys are
//! rejected both when parsing files and when applying `--set` overrides, so
//! typos fail fast instead of silently running the default.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::Path;

use crate::channel::{RisStrategy, ShadowedRicianParams};
use crate::environment::{
    EnvironmentModel, GmmComponent, GmmModel, LogNormalModel, TransitionParams,
};
use crate::error::{Error, Result};
use crate::linklevel::{self, AlphaMode};
use crate::pathloss::{Distances, LinkBudget, PathLossTable, ZenithAttenuationTable};

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

/// Straight-line link distances in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DistancesSection {
    pub sat_user_m: f64,
    pub sat_ris_m: f64,
    pub bs_user_m: f64,
    pub bs_ris_m: f64,
    pub ris_user_m: f64,
}

impl Default for DistancesSection {
    fn default() -> Self {
        DistancesSection {
            sat_user_m: 550.0e3,
            sat_ris_m: 550.0e3,
            bs_user_m: 500.0,
            bs_ris_m: 450.0,
            ris_user_m: 60.0,
        }
    }
}

impl DistancesSection {
    pub fn to_distances(self) -> Distances {
        Distances {
            sat_user_m: self.sat_user_m,
            sat_ris_m: self.sat_ris_m,
            bs_user_m: self.bs_user_m,
            bs_ris_m: self.bs_ris_m,
            ris_user_m: self.ris_user_m,
        }
    }
}

/// Which user the RIS co-phases for, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RisStrategyName {
    AlignStrongest,
    AlignUser,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RisSection {
    pub strategy: RisStrategyName,
    /// Only read when `strategy` is `align_user`.
    pub target_user: usize,
    /// Common reflection amplitude of every element, in (0, 1].
    pub amplitude: f64,
}

impl Default for RisSection {
    fn default() -> Self {
        RisSection {
            strategy: RisStrategyName::AlignStrongest,
            target_user: 0,
            amplitude: 1.0,
        }
    }
}

impl RisSection {
    pub fn strategy(&self) -> RisStrategy {
        match self.strategy {
            RisStrategyName::AlignStrongest => RisStrategy::AlignStrongest,
            RisStrategyName::AlignUser => RisStrategy::AlignUser(self.target_user),
            RisStrategyName::Random => RisStrategy::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AlphaModeName {
    #[default]
    Power,
    Amplitude,
}

impl AlphaModeName {
    pub fn to_mode(self) -> AlphaMode {
        match self {
            AlphaModeName::Power => AlphaMode::Power,
            AlphaModeName::Amplitude => AlphaMode::Amplitude,
        }
    }
}

/// Shadowed Rician parameters for the satellite-side links.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SatelliteFadingSection {
    pub b_scatter: f64,
    pub m_shadow: f64,
    pub omega_los: f64,
}

impl Default for SatelliteFadingSection {
    fn default() -> Self {
        let p = ShadowedRicianParams::default();
        SatelliteFadingSection {
            b_scatter: p.b_scatter,
            m_shadow: p.m_shadow,
            omega_los: p.omega_los,
        }
    }
}

impl SatelliteFadingSection {
    pub fn to_params(self) -> Result<ShadowedRicianParams> {
        ShadowedRicianParams::new(self.b_scatter, self.m_shadow, self.omega_los)
    }
}

/// Loss-versus-elevation breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElevationTableSection {
    pub elevation_deg: Vec<f64>,
    pub loss_db: Vec<f64>,
}

impl ElevationTableSection {
    pub fn to_table(&self) -> Result<PathLossTable> {
        PathLossTable::new(self.elevation_deg.clone(), self.loss_db.clone())
    }
}

/// Zenith-attenuation-versus-frequency breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyTableSection {
    pub frequency_hz: Vec<f64>,
    pub loss_db: Vec<f64>,
}

impl FrequencyTableSection {
    pub fn to_table(&self) -> Result<ZenithAttenuationTable> {
        ZenithAttenuationTable::new(self.frequency_hz.clone(), self.loss_db.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TablesSection {
    pub zenith: FrequencyTableSection,
    /// Excess loss on the satellite-to-user path.
    pub clutter: ElevationTableSection,
    /// Shadowing on the BS-to-user and RIS-to-user paths.
    pub shadow: ElevationTableSection,
}

impl Default for TablesSection {
    fn default() -> Self {
        let zenith = ZenithAttenuationTable::default();
        let (f, l) = zenith.breakpoints();
        TablesSection {
            zenith: FrequencyTableSection {
                frequency_hz: f.to_vec(),
                loss_db: l.to_vec(),
            },
            clutter: ElevationTableSection {
                elevation_deg: vec![10.0, 30.0, 90.0],
                loss_db: vec![34.3, 25.0, 12.0],
            },
            shadow: ElevationTableSection {
                elevation_deg: vec![10.0, 30.0, 90.0],
                loss_db: vec![6.0, 4.0, 2.0],
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LogNormalSection {
    pub mu_log: f64,
    pub sigma_log: f64,
}

impl Default for LogNormalSection {
    fn default() -> Self {
        LogNormalSection {
            mu_log: 0.5,
            sigma_log: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmmComponentSection {
    pub weight: f64,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentSection {
    pub lognormal: LogNormalSection,
    pub gmm_components: Vec<GmmComponentSection>,
    /// Spread weighting in the transition normalization.
    pub lambda: f64,
    /// Offset in the transition steepness denominator.
    pub c_const: f64,
    /// Transition energy; null derives it from the mean gap.
    pub energy: Option<f64>,
    /// Draw per-user excess attenuation each trial and fold it into the
    /// side of the link budget the elevation regime selects.
    pub inject_attenuation: bool,
}

impl Default for EnvironmentSection {
    fn default() -> Self {
        EnvironmentSection {
            lognormal: LogNormalSection::default(),
            gmm_components: vec![GmmComponentSection {
                weight: 1.0,
                mean: 0.9,
                std: 0.1,
            }],
            lambda: 1.0,
            c_const: 1.0,
            energy: None,
            inject_attenuation: true,
        }
    }
}

impl EnvironmentSection {
    pub fn to_model(&self) -> Result<EnvironmentModel> {
        let lognormal = LogNormalModel::new(self.lognormal.mu_log, self.lognormal.sigma_log)?;
        let components = self
            .gmm_components
            .iter()
            .map(|c| GmmComponent {
                weight: c.weight,
                mean: c.mean,
                std: c.std,
            })
            .collect();
        let gmm = GmmModel::new(components)?;
        Ok(EnvironmentModel {
            lognormal,
            gmm,
            lambda: self.lambda,
            c_const: self.c_const,
            energy: self.energy,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerSection {
    pub theta_low_deg: f64,
    pub theta_high_deg: f64,
    /// Crossover elevation; null means the midpoint of the span.
    pub theta0_deg: Option<f64>,
    /// Open-loop sigmoid steepness.
    pub r: f64,
    /// Base learning rate of the feedback loop.
    pub vartheta: f64,
    /// Error damping of the learning rate.
    pub beta: f64,
    /// Capacity target in bit/s; null calibrates one from the equal-split
    /// baseline.
    pub c_target_bps: Option<f64>,
    /// Capacity swing in bit/s used to seed the gain; null calibrates it.
    pub delta_c_max_bps: Option<f64>,
}

impl Default for ControllerSection {
    fn default() -> Self {
        ControllerSection {
            theta_low_deg: 10.0,
            theta_high_deg: 90.0,
            theta0_deg: None,
            r: 0.08,
            vartheta: 0.02,
            beta: 1.0,
            c_target_bps: None,
            delta_c_max_bps: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ElevationSweepSection {
    pub start_deg: f64,
    pub stop_deg: f64,
    pub points: usize,
}

impl Default for ElevationSweepSection {
    fn default() -> Self {
        ElevationSweepSection {
            start_deg: 10.0,
            stop_deg: 90.0,
            points: 17,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HistogramSection {
    pub theta_deg: f64,
    pub bins: usize,
}

impl Default for HistogramSection {
    fn default() -> Self {
        HistogramSection {
            theta_deg: 80.0,
            bins: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UserSweepSection {
    pub counts: Vec<usize>,
    pub r_values: Vec<f64>,
    /// Elevation the user-count sweep is evaluated at.
    pub theta_deg: f64,
}

impl Default for UserSweepSection {
    fn default() -> Self {
        UserSweepSection {
            counts: vec![2, 4, 6, 8, 10, 12],
            r_values: vec![0.02, 0.08],
            theta_deg: 80.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FeedbackSection {
    pub steps: usize,
    pub trials_per_step: usize,
    /// Elevation the loop operates at.
    pub theta_deg: f64,
}

impl Default for FeedbackSection {
    fn default() -> Self {
        FeedbackSection {
            steps: 200,
            trials_per_step: 100,
            theta_deg: 80.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RRangeSection {
    pub points: usize,
}

impl Default for RRangeSection {
    fn default() -> Self {
        RRangeSection { points: 9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct SweepsSection {
    pub elevation: ElevationSweepSection,
    pub histogram: HistogramSection,
    pub users: UserSweepSection,
    pub feedback: FeedbackSection,
    pub r_range: RRangeSection,
}

/// Complete scenario description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_temperature_k: f64,
    /// Shared transmit budget in watts.
    pub p_total_w: f64,
    pub users: usize,
    pub bs_antennas: usize,
    pub ris_elements: usize,
    /// Monte Carlo trials per evaluated point.
    pub trials: usize,
    pub seed: u64,
    /// Combined satellite EIRP advantage and ground receive gain in dB,
    /// credited to the two space links.
    pub sat_gain_db: f64,
    pub alpha_mode: AlphaModeName,
    pub distances: DistancesSection,
    pub ris: RisSection,
    pub satellite_fading: SatelliteFadingSection,
    pub tables: TablesSection,
    pub environment: EnvironmentSection,
    pub controller: ControllerSection,
    pub sweeps: SweepsSection,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            frequency_hz: 2.0e9,
            bandwidth_hz: 1.0e6,
            noise_temperature_k: 290.0,
            p_total_w: 1.0,
            users: 10,
            bs_antennas: 6,
            ris_elements: 500,
            trials: 2000,
            seed: 1,
            sat_gain_db: 70.0,
            alpha_mode: AlphaModeName::default(),
            distances: DistancesSection::default(),
            ris: RisSection::default(),
            satellite_fading: SatelliteFadingSection::default(),
            tables: TablesSection::default(),
            environment: EnvironmentSection::default(),
            controller: ControllerSection::default(),
            sweeps: SweepsSection::default(),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing, overrides, hashing
// ---------------------------------------------------------------------------

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("config parse failed: {e}")))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_json_str(&text)
    }

    /// Applies `key.path=value` overrides. The key must already exist in the
    /// schema; the value is parsed as JSON, falling back to a bare string.
    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self.clone());
        }
        let mut tree = serde_json::to_value(self)
            .map_err(|e| Error::config(format!("config serialization failed: {e}")))?;
        for (path, raw) in overrides {
            let leaf: Value =
                serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.clone()));
            set_path(&mut tree, path, leaf)?;
        }
        serde_json::from_value(tree)
            .map_err(|e| Error::config(format!("override produced an invalid config: {e}")))
    }

    /// Pretty JSON of the fully resolved config, for sidecar echoes.
    pub fn to_pretty_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::config(format!("config serialization failed: {e}")))
    }

    /// SHA-256 over the compact JSON rendering, as lowercase hex.
    pub fn hash_hex(&self) -> Result<String> {
        let compact = serde_json::to_string(self)
            .map_err(|e| Error::config(format!("config serialization failed: {e}")))?;
        let digest = Sha256::digest(compact.as_bytes());
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Structural checks that serde cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.users == 0 {
            return Err(Error::config("users must be >= 1"));
        }
        if self.bs_antennas == 0 {
            return Err(Error::config("bs_antennas must be >= 1"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be >= 1"));
        }
        if !(self.p_total_w > 0.0) {
            return Err(Error::config(format!(
                "p_total_w must be positive, got {}",
                self.p_total_w
            )));
        }
        if let RisStrategyName::AlignUser = self.ris.strategy {
            if self.ris.target_user >= self.users {
                return Err(Error::config(format!(
                    "ris.target_user {} out of range for {} users",
                    self.ris.target_user, self.users
                )));
            }
        }
        if !(self.ris.amplitude > 0.0 && self.ris.amplitude <= 1.0) {
            return Err(Error::config(format!(
                "ris.amplitude must lie in (0, 1], got {}",
                self.ris.amplitude
            )));
        }
        let c = &self.controller;
        if !(c.theta_low_deg < c.theta_high_deg) {
            return Err(Error::config(format!(
                "controller span is empty: theta_low {} >= theta_high {}",
                c.theta_low_deg, c.theta_high_deg
            )));
        }
        if let Some(theta0) = c.theta0_deg {
            if !(c.theta_low_deg < theta0 && theta0 < c.theta_high_deg) {
                return Err(Error::config(format!(
                    "controller.theta0_deg {theta0} must lie strictly inside ({}, {})",
                    c.theta_low_deg, c.theta_high_deg
                )));
            }
        }
        if !(c.r > 0.0) || !(c.vartheta > 0.0) || c.beta < 0.0 {
            return Err(Error::config(
                "controller needs r > 0, vartheta > 0, beta >= 0",
            ));
        }
        // Exercise the builders so table and model errors surface here too.
        let budget = self.link_budget()?;
        for theta in [c.theta_low_deg, self.theta0_deg(), c.theta_high_deg] {
            budget.compute_link_losses(theta)?;
        }
        self.environment_model()?;
        self.fading_params()?;
        self.transition_params()?;
        self.noise_w()?;
        Ok(())
    }

    // -- builders -----------------------------------------------------------

    pub fn link_budget(&self) -> Result<LinkBudget> {
        LinkBudget::new(
            self.frequency_hz,
            self.distances.to_distances(),
            self.tables.zenith.to_table()?,
            self.tables.clutter.to_table()?,
            self.tables.shadow.to_table()?,
            self.sat_gain_db,
        )
    }

    pub fn environment_model(&self) -> Result<EnvironmentModel> {
        self.environment.to_model()
    }

    pub fn fading_params(&self) -> Result<ShadowedRicianParams> {
        self.satellite_fading.to_params()
    }

    /// Crossover elevation, defaulting to the middle of the span.
    pub fn theta0_deg(&self) -> f64 {
        self.controller
            .theta0_deg
            .unwrap_or((self.controller.theta_low_deg + self.controller.theta_high_deg) / 2.0)
    }

    pub fn transition_params(&self) -> Result<TransitionParams> {
        self.environment_model()?
            .transition_params(self.theta0_deg())
    }

    pub fn noise_w(&self) -> Result<f64> {
        linklevel::noise_variance(self.bandwidth_hz, self.noise_temperature_k)
    }
}

fn set_path(root: &mut Value, path: &str, leaf: Value) -> Result<()> {
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::config(format!("malformed override key '{path}'")));
    }
    let mut cursor = root;
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        match cursor {
            Value::Object(map) => {
                let slot = map.get_mut(*part).ok_or_else(|| {
                    Error::config(format!("unknown config key '{part}' in '{path}'"))
                })?;
                if last {
                    *slot = leaf;
                    return Ok(());
                }
                cursor = slot;
            }
            Value::Array(items) => {
                let index: usize = part.parse().map_err(|_| {
                    Error::config(format!("'{part}' in '{path}' should be an array index"))
                })?;
                let slot = items.get_mut(index).ok_or_else(|| {
                    Error::config(format!("index {index} out of bounds in '{path}'"))
                })?;
                if last {
                    *slot = leaf;
                    return Ok(());
                }
                cursor = slot;
            }
            _ => {
                return Err(Error::config(format!(
                    "'{path}' descends into a scalar at '{part}'"
                )));
            }
        }
    }
    unreachable!("loop returns on the last path segment");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn overrides(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn test_empty_json_is_the_default() {
        let parsed = ScenarioConfig::from_json_str("{}").unwrap();
        assert_eq!(parsed, ScenarioConfig::default());
        parsed.validate().unwrap();
    }

    #[test]
    fn test_round_trip_preserves_config() {
        let config = ScenarioConfig::default();
        let json = config.to_pretty_json().unwrap();
        let back = ScenarioConfig::from_json_str(&json).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn test_unknown_key_is_rejected() {
        assert!(ScenarioConfig::from_json_str(r#"{"userz": 5}"#).is_err());
        assert!(ScenarioConfig::from_json_str(r#"{"controller": {"rr": 0.1}}"#).is_err());
    }

    #[test]
    fn test_overrides_reach_nested_fields() {
        let base = ScenarioConfig::default();
        let cfg = base
            .with_overrides(&overrides(&[
                ("users", "4"),
                ("controller.r", "0.05"),
                ("ris.strategy", "\"random\""),
                ("environment.inject_attenuation", "false"),
                ("sweeps.users.counts", "[2, 3]"),
                ("tables.clutter.loss_db.1", "26.5"),
            ]))
            .unwrap();
        assert_eq!(cfg.users, 4);
        assert_eq!(cfg.controller.r, 0.05);
        assert_eq!(cfg.ris.strategy, RisStrategyName::Random);
        assert!(!cfg.environment.inject_attenuation);
        assert_eq!(cfg.sweeps.users.counts, vec![2, 3]);
        assert_eq!(cfg.tables.clutter.loss_db[1], 26.5);
    }

    #[test]
    fn test_override_bare_string_needs_no_quotes() {
        let cfg = ScenarioConfig::default()
            .with_overrides(&overrides(&[("ris.strategy", "random")]))
            .unwrap();
        assert_eq!(cfg.ris.strategy, RisStrategyName::Random);
    }

    #[test]
    fn test_override_rejects_unknown_and_mistyped_keys() {
        let base = ScenarioConfig::default();
        assert!(base.with_overrides(&overrides(&[("userz", "4")])).is_err());
        assert!(base
            .with_overrides(&overrides(&[("controller.nope", "1")]))
            .is_err());
        assert!(base
            .with_overrides(&overrides(&[("users", "\"ten\"")]))
            .is_err());
        assert!(base
            .with_overrides(&overrides(&[("users.deeper", "1")]))
            .is_err());
        assert!(base
            .with_overrides(&overrides(&[("sweeps.users.counts.9", "1")]))
            .is_err());
    }

    #[test]
    fn test_hash_tracks_content() {
        let base = ScenarioConfig::default();
        let a = base.hash_hex().unwrap();
        assert_eq!(a.len(), 64);
        assert_eq!(a, base.hash_hex().unwrap());
        let changed = base.with_overrides(&overrides(&[("seed", "2")])).unwrap();
        assert_ne!(a, changed.hash_hex().unwrap());
    }

    #[test]
    fn test_validation_catches_structural_problems() {
        let base = ScenarioConfig::default();
        for (key, value) in [
            ("users", "0"),
            ("trials", "0"),
            ("p_total_w", "0.0"),
            ("ris.amplitude", "1.5"),
            ("controller.theta_low_deg", "95.0"),
            ("controller.theta0_deg", "5.0"),
            ("controller.r", "0.0"),
            ("sat_gain_db", "1000.0"),
        ] {
            let cfg = base.with_overrides(&overrides(&[(key, value)])).unwrap();
            assert!(cfg.validate().is_err(), "{key}={value} should not validate");
        }
        let cfg = base
            .with_overrides(&overrides(&[
                ("ris.strategy", "align_user"),
                ("ris.target_user", "10"),
            ]))
            .unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn test_builders_produce_working_models() {
        let config = ScenarioConfig::default();
        let budget = config.link_budget().unwrap();
        let losses = budget.compute_link_losses(45.0).unwrap();
        assert!(losses.pl_sat_user_db > 0.0);
        assert_eq!(config.theta0_deg(), 50.0);
        let transition = config.transition_params().unwrap();
        assert!(transition.amplitude > 0.0);
        let noise = config.noise_w().unwrap();
        assert!(noise > 0.0 && noise < 1e-12);
        assert_eq!(config.ris.strategy(), RisStrategy::AlignStrongest);
    }

    #[test]
    fn test_validate_surfaces_builder_errors() {
        // Unsorted table breakpoints only fail when the table is built.
        let cfg = ScenarioConfig::default()
            .with_overrides(&overrides(&[(
                "tables.clutter.elevation_deg",
                "[30.0, 10.0, 90.0]",
            )]))
            .unwrap();
        assert!(cfg.validate().is_err());
    }
}
