//! JSON run configuration: a flat object of optional keys layered over the
//! library defaults. Unknown keys are rejected so typos fail loudly.

use serde::Deserialize;

use spherecal_core::{AntennaPattern, RadarParams, SceneConfig, SphereTarget};

use crate::CliError;

/// Standoff distances used when the configuration does not list any, meters.
pub const DEFAULT_STANDOFFS_M: [f64; 4] = [2000.0, 3000.0, 4000.0, 5000.0];

/// The raw JSON shape: every key optional, none beyond these accepted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    standoff_m: Option<Vec<f64>>,
    tether_length_m: Option<f64>,
    elevation_deg: Option<f64>,
    theta_min_deg: Option<f64>,
    theta_max_deg: Option<f64>,
    theta_steps: Option<usize>,
    sphere_radius_m: Option<f64>,
    wavelength_m: Option<f64>,
    beamwidth_deg: Option<f64>,
    pattern_exponent: Option<u32>,
    transmit_power_dbm: Option<f64>,
    radar_constant_db: Option<f64>,
    atmospheric_loss_db_per_km: Option<f64>,
    beamwidth_rule_constant: Option<f64>,
    allow_near_field: Option<bool>,
}

/// A fully resolved run: scene, radar, target, pattern, and standoff list.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scene: SceneConfig,
    pub standoffs_m: Vec<f64>,
    pub params: RadarParams,
    pub target: SphereTarget,
    pub pattern: AntennaPattern,
    pub allow_near_field: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scene: SceneConfig::default(),
            standoffs_m: DEFAULT_STANDOFFS_M.to_vec(),
            params: RadarParams::default(),
            target: SphereTarget::default(),
            pattern: AntennaPattern::default(),
            allow_near_field: false,
        }
    }
}

impl RunConfig {
    /// Validates every component, naming the offending key on failure.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.standoffs_m.is_empty() {
            return Err(CliError::Config(
                "config error: standoff_m: list must not be empty".into(),
            ));
        }
        // Check the list under its configuration name before the scene
        // validator can flag the same problem under its field name.
        for &standoff in &self.standoffs_m {
            if !standoff.is_finite() || standoff <= self.scene.tether_length_m {
                return Err(CliError::Config(format!(
                    "config error: standoff_m: each standoff must be finite and exceed \
                     the tether length {} m (got {standoff})",
                    self.scene.tether_length_m
                )));
            }
        }
        self.scene.validate()?;
        self.params.validate()?;
        self.target.validate()?;
        self.pattern.validate()?;
        Ok(())
    }
}

/// Parses the JSON configuration and layers it over the defaults.
pub fn parse_config(bytes: &[u8]) -> Result<RunConfig, CliError> {
    let raw: RawConfig = serde_json::from_slice(bytes)
        .map_err(|e| CliError::Config(format!("config error: {e}")))?;
    let mut run = RunConfig::default();

    if let Some(standoffs) = raw.standoff_m {
        run.standoffs_m = standoffs;
    }
    if let Some(v) = raw.tether_length_m {
        run.scene.tether_length_m = v;
    }
    if let Some(v) = raw.elevation_deg {
        run.scene.elevation_deg = v;
    }
    if let Some(v) = raw.theta_min_deg {
        run.scene.theta_min_deg = v;
    }
    if let Some(v) = raw.theta_max_deg {
        run.scene.theta_max_deg = v;
    }
    if let Some(v) = raw.theta_steps {
        run.scene.theta_steps = v;
    }
    if let Some(v) = raw.sphere_radius_m {
        run.target = SphereTarget::new(v)?;
    }
    if let Some(v) = raw.wavelength_m {
        run.params.wavelength_m = v;
    }
    if let Some(v) = raw.beamwidth_deg {
        run.params.beamwidth_deg = v;
        run.pattern.beamwidth_deg = v;
    }
    if let Some(v) = raw.pattern_exponent {
        run.pattern.pattern_exponent = v;
    }
    if let Some(v) = raw.transmit_power_dbm {
        run.params.transmit_power_dbm = v;
    }
    if let Some(v) = raw.radar_constant_db {
        run.params.radar_constant_db = v;
    }
    if let Some(v) = raw.atmospheric_loss_db_per_km {
        run.params.atmospheric_loss_db_per_km = v;
    }
    if let Some(v) = raw.beamwidth_rule_constant {
        run.params.beamwidth_rule_constant = v;
    }
    if let Some(v) = raw.allow_near_field {
        run.allow_near_field = v;
    }

    // The sweep scene starts from the first standoff; per-standoff scenes are
    // derived from it later.
    let Some(&first_standoff) = run.standoffs_m.first() else {
        return Err(CliError::Config(
            "config error: standoff_m: list must not be empty".into(),
        ));
    };
    run.scene.standoff_distance_m = first_standoff;
    run.validate()?;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_resolves_to_full_defaults() {
        let run = parse_config(b"{}").unwrap();
        assert_eq!(run.standoffs_m, DEFAULT_STANDOFFS_M.to_vec());
        assert_eq!(run.scene.tether_length_m, 60.0);
        assert_eq!(run.scene.elevation_deg, 2.0);
        assert_eq!(run.scene.theta_min_deg, -10.0);
        assert_eq!(run.scene.theta_max_deg, 10.0);
        assert_eq!(run.scene.theta_steps, 201);
        assert_eq!(run.target.radius_m, 0.15);
        assert_eq!(run.params.wavelength_m, 0.0319);
        assert_eq!(run.pattern.beamwidth_deg, 1.0);
        assert_eq!(run.pattern.pattern_exponent, 2);
        assert!(!run.allow_near_field);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_config(br#"{"standoff_km": [2.0]}"#).unwrap_err();
        match err {
            CliError::Config(message) => assert!(message.contains("standoff_km")),
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_the_position() {
        let err = parse_config(b"{\n  \"tether_length_m\": }").unwrap_err();
        match err {
            CliError::Config(message) => assert!(message.contains("line 2")),
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_values_name_their_key() {
        for (body, key) in [
            (br#"{"tether_length_m": -5}"#.as_slice(), "tether_length_m"),
            (br#"{"pattern_exponent": 3}"#.as_slice(), "pattern_exponent"),
            (br#"{"elevation_deg": 95}"#.as_slice(), "elevation_deg"),
            (br#"{"sphere_radius_m": 0}"#.as_slice(), "sphere_radius_m"),
            (br#"{"standoff_m": []}"#.as_slice(), "standoff_m"),
            (br#"{"standoff_m": [10.0]}"#.as_slice(), "standoff_m"),
            (br#"{"theta_steps": 0}"#.as_slice(), "theta_steps"),
            (br#"{"wavelength_m": -0.03}"#.as_slice(), "wavelength_m"),
        ] {
            let err = parse_config(body).unwrap_err();
            match err {
                CliError::Config(message) => {
                    assert!(message.contains(key), "missing {key} in: {message}")
                }
                other => panic!("expected Config error for {key}, got {other:?}"),
            }
        }
    }

    #[test]
    fn overrides_land_in_every_component() {
        let run = parse_config(
            br#"{
                "standoff_m": [2500.0],
                "tether_length_m": 45.0,
                "elevation_deg": 5.0,
                "theta_min_deg": -5.0,
                "theta_max_deg": 5.0,
                "theta_steps": 51,
                "sphere_radius_m": 0.2,
                "wavelength_m": 0.05,
                "beamwidth_deg": 1.5,
                "pattern_exponent": 1,
                "transmit_power_dbm": 47.0,
                "radar_constant_db": -3.0,
                "atmospheric_loss_db_per_km": 0.01,
                "beamwidth_rule_constant": 65.0,
                "allow_near_field": true
            }"#,
        )
        .unwrap();
        assert_eq!(run.standoffs_m, vec![2500.0]);
        assert_eq!(run.scene.standoff_distance_m, 2500.0);
        assert_eq!(run.scene.tether_length_m, 45.0);
        assert_eq!(run.scene.elevation_deg, 5.0);
        assert_eq!(run.scene.theta_steps, 51);
        assert_eq!(run.target.radius_m, 0.2);
        assert_eq!(run.params.wavelength_m, 0.05);
        assert_eq!(run.params.beamwidth_deg, 1.5);
        assert_eq!(run.pattern.beamwidth_deg, 1.5);
        assert_eq!(run.pattern.pattern_exponent, 1);
        assert_eq!(run.params.transmit_power_dbm, 47.0);
        assert_eq!(run.params.radar_constant_db, -3.0);
        assert_eq!(run.params.atmospheric_loss_db_per_km, 0.01);
        assert_eq!(run.params.beamwidth_rule_constant, 65.0);
        assert!(run.allow_near_field);
    }
}
