//! Radar-equation power budget and the reflectivity (dBZ) chain, including
//! the pattern-induced bias relative to boresight and the far-field gate.

use std::f64::consts::PI;

use crate::antenna::{pattern_loss_db, AntennaPattern};
use crate::error::{Error, Result};
use crate::geometry::SceneState;
use crate::rcs::{equivalent_rcs, SphereTarget};

const FOUR_PI: f64 = 4.0 * PI;

/// Radar system parameters for the power and reflectivity chains.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarParams {
    /// Transmit power, dBm.
    pub transmit_power_dbm: f64,
    /// One-way antenna gain, dB; the power budget applies it twice.
    pub antenna_gain_db: f64,
    /// Operating wavelength, meters.
    pub wavelength_m: f64,
    /// Lumped calibration offset absorbing system and target constants, dB.
    pub radar_constant_db: f64,
    /// Two-way atmospheric attenuation rate, dB per kilometer.
    pub atmospheric_loss_db_per_km: f64,
    /// Antenna beamwidth parameter, degrees (shared with the pattern model).
    pub beamwidth_deg: f64,
    /// Constant k in the aperture rule `D = k * lambda / beamwidth_deg`,
    /// used by the far-field bound.
    pub beamwidth_rule_constant: f64,
}

impl Default for RadarParams {
    fn default() -> Self {
        Self {
            transmit_power_dbm: 50.0,
            antenna_gain_db: 40.0,
            wavelength_m: 0.0319,
            radar_constant_db: 0.0,
            atmospheric_loss_db_per_km: 0.02,
            beamwidth_deg: 1.0,
            beamwidth_rule_constant: 70.0,
        }
    }
}

impl RadarParams {
    /// Checks every field invariant, naming the offending key on failure.
    pub fn validate(&self) -> Result<()> {
        if !self.wavelength_m.is_finite() || self.wavelength_m <= 0.0 {
            return Err(Error::config(
                "wavelength_m",
                format!("must be positive and finite (got {})", self.wavelength_m),
            ));
        }
        if !self.atmospheric_loss_db_per_km.is_finite() || self.atmospheric_loss_db_per_km < 0.0 {
            return Err(Error::config(
                "atmospheric_loss_db_per_km",
                format!(
                    "must be non-negative and finite (got {})",
                    self.atmospheric_loss_db_per_km
                ),
            ));
        }
        if !self.beamwidth_deg.is_finite() || self.beamwidth_deg <= 0.0 {
            return Err(Error::config(
                "beamwidth_deg",
                format!("must be positive and finite (got {})", self.beamwidth_deg),
            ));
        }
        if !self.beamwidth_rule_constant.is_finite() || self.beamwidth_rule_constant <= 0.0 {
            return Err(Error::config(
                "beamwidth_rule_constant",
                format!(
                    "must be positive and finite (got {})",
                    self.beamwidth_rule_constant
                ),
            ));
        }
        for (key, value) in [
            ("transmit_power_dbm", self.transmit_power_dbm),
            ("radar_constant_db", self.radar_constant_db),
            ("antenna_gain_db", self.antenna_gain_db),
        ] {
            if !value.is_finite() {
                return Err(Error::config(key, format!("must be finite (got {value})")));
            }
        }
        Ok(())
    }
}

/// Reflectivity of the sphere at one scene state.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectivityResult {
    /// Reflectivity after the 10 log10 transform, dBZ.
    pub z_dbz: f64,
    /// Bias relative to the boresight reference, dB; non-negative inside the
    /// main lobe.
    pub delta_z_db: f64,
    /// Echo-power diagnostic from the point-target radar equation, dB, using
    /// the equivalent (pattern-weighted) cross section.
    pub received_power_db: f64,
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::domain(format!(
            "{name} must be positive and finite (got {value})"
        )));
    }
    Ok(())
}

/// Echo power from the point-target radar equation, evaluated as a sum of
/// decibel terms: `P_t G^2 lambda^2 sigma / ((4 pi)^3 R^4)` with `P_t` taken
/// from `transmit_power_dbm`. The result shares that dB reference.
pub fn received_power_db(params: &RadarParams, rcs_m2: f64, range_m: f64) -> Result<f64> {
    params.validate()?;
    check_positive("radar cross section", rcs_m2)?;
    check_positive("range", range_m)?;
    Ok(params.transmit_power_dbm
        + 2.0 * params.antenna_gain_db
        + 20.0 * params.wavelength_m.log10()
        + 10.0 * rcs_m2.log10()
        - 30.0 * FOUR_PI.log10()
        - 40.0 * range_m.log10())
}

/// The same power budget as a product of linear factors. Kept independent of
/// [`received_power_db`] so the two routes can cross-check each other.
pub fn received_power_linear(params: &RadarParams, rcs_m2: f64, range_m: f64) -> Result<f64> {
    params.validate()?;
    check_positive("radar cross section", rcs_m2)?;
    check_positive("range", range_m)?;
    let p_t = 10.0_f64.powf(params.transmit_power_dbm / 10.0);
    let gain = 10.0_f64.powf(params.antenna_gain_db / 10.0);
    let lambda2 = params.wavelength_m * params.wavelength_m;
    Ok(p_t * gain * gain * lambda2 * rcs_m2 / (FOUR_PI.powi(3) * range_m.powi(4)))
}

/// The dB reflectivity chain at one range and pattern loss:
/// `Z = C + P_t + 20 log10(R_km) + R_km * A_t - loss`.
fn z_chain(params: &RadarParams, range_m: f64, pattern_loss: f64) -> f64 {
    let r_km = range_m / 1000.0;
    params.radar_constant_db
        + params.transmit_power_dbm
        + 20.0 * r_km.log10()
        + params.atmospheric_loss_db_per_km * r_km
        - pattern_loss
}

/// Reflectivity of the sphere at one scene state, in dBZ, with the bias
/// relative to the boresight (theta = 0) state whose slant range is
/// `boresight_range_m`.
///
/// The range enters the chain in kilometers in both the spreading and the
/// attenuation terms. Unless `allow_near_field` is set, the slant range must
/// satisfy the far-field bound.
pub fn sphere_reflectivity_dbz(
    params: &RadarParams,
    target: &SphereTarget,
    state: &SceneState,
    pattern: &AntennaPattern,
    boresight_range_m: f64,
    allow_near_field: bool,
) -> Result<ReflectivityResult> {
    params.validate()?;
    target.validate()?;
    pattern.validate()?;
    check_positive("boresight range", boresight_range_m)?;
    check_positive("slant range", state.slant_range_m)?;

    let min_range = far_field_min_range_m(params)?;
    if !allow_near_field && state.slant_range_m < min_range {
        return Err(Error::NearField {
            range_m: state.slant_range_m,
            min_range_m: min_range,
        });
    }

    let loss = pattern_loss_db(state.off_axis_deg, pattern)?;
    let z = z_chain(params, state.slant_range_m, loss);
    let z_boresight = z_chain(params, boresight_range_m, 0.0);
    let sigma_eff = equivalent_rcs(target, state.off_axis_deg, pattern)?;
    Ok(ReflectivityResult {
        z_dbz: z,
        delta_z_db: z_boresight - z,
        received_power_db: received_power_db(params, sigma_eff, state.slant_range_m)?,
    })
}

/// Signed calibration bias: measured minus ideal, dB.
pub fn compare_reflectivity(measured_dbz: f64, ideal_dbz: f64) -> f64 {
    measured_dbz - ideal_dbz
}

/// `10 log10` of a linear reflectivity (mm^6 m^-3) into dBZ.
pub fn linear_to_dbz(z_linear: f64) -> Result<f64> {
    if !z_linear.is_finite() || z_linear <= 0.0 {
        return Err(Error::domain(format!(
            "linear reflectivity must be positive and finite (got {z_linear})"
        )));
    }
    Ok(10.0 * z_linear.log10())
}

/// Inverse of [`linear_to_dbz`].
pub fn dbz_to_linear(z_dbz: f64) -> f64 {
    10.0_f64.powf(z_dbz / 10.0)
}

/// Minimum range for far-field operation: `2 D^2 / lambda`, with the
/// aperture `D` inferred from the beamwidth rule
/// `D = k * lambda / beamwidth_deg`.
pub fn far_field_min_range_m(params: &RadarParams) -> Result<f64> {
    params.validate()?;
    let aperture = params.beamwidth_rule_constant * params.wavelength_m / params.beamwidth_deg;
    Ok(2.0 * aperture * aperture / params.wavelength_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{scene_state, SceneConfig};

    fn chain_result(standoff_m: f64, theta_deg: f64) -> ReflectivityResult {
        let cfg = SceneConfig::default().with_standoff(standoff_m);
        let boresight = scene_state(&cfg, 0.0).unwrap().slant_range_m;
        let state = scene_state(&cfg, theta_deg).unwrap();
        sphere_reflectivity_dbz(
            &RadarParams::default(),
            &SphereTarget::default(),
            &state,
            &AntennaPattern::default(),
            boresight,
            false,
        )
        .unwrap()
    }

    #[test]
    fn constructed_identity_gives_unit_power() {
        let params = RadarParams {
            transmit_power_dbm: 0.0,
            antenna_gain_db: 0.0,
            wavelength_m: 1.0,
            ..RadarParams::default()
        };
        let sigma = FOUR_PI.powi(3);
        let linear = received_power_linear(&params, sigma, 1.0).unwrap();
        assert_eq!(linear, 1.0);
        let db = received_power_db(&params, sigma, 1.0).unwrap();
        assert!(db.abs() < 1e-12);
    }

    #[test]
    fn range_doubling_costs_the_r4_law() {
        let params = RadarParams::default();
        let base = received_power_db(&params, 0.07, 1000.0).unwrap();
        let doubled = received_power_db(&params, 0.07, 2000.0).unwrap();
        let expected = -40.0 * 2.0_f64.log10(); // -12.0412 dB
        assert!((doubled - base - expected).abs() < 1e-12);
    }

    #[test]
    fn wavelength_doubling_gains_the_lambda2_factor() {
        let params = RadarParams::default();
        let doubled = RadarParams {
            wavelength_m: 2.0 * params.wavelength_m,
            ..params.clone()
        };
        let base = received_power_db(&params, 0.07, 1000.0).unwrap();
        let gained = received_power_db(&doubled, 0.07, 1000.0).unwrap();
        let expected = 20.0 * 2.0_f64.log10(); // +6.0206 dB
        assert!((gained - base - expected).abs() < 1e-12);
    }

    #[test]
    fn db_and_linear_routes_agree() {
        let params = RadarParams::default();
        for (sigma, range) in [(0.07, 2000.0), (0.5, 350.0), (1e-3, 9000.0)] {
            let db = received_power_db(&params, sigma, range).unwrap();
            let linear = received_power_linear(&params, sigma, range).unwrap();
            assert!((db - 10.0 * linear.log10()).abs() < 1e-10);
        }
    }

    #[test]
    fn boresight_reflectivity_matches_the_chain_arithmetic() {
        let result = chain_result(2000.0, 0.0);
        // C + P_t + 20 log10(2) + 2 km * 0.02 dB/km
        assert!((result.z_dbz - 56.060599913279624).abs() < 1e-9);
        assert_eq!(result.delta_z_db, 0.0);

        let far = chain_result(5000.0, 0.0);
        assert!((far.z_dbz - 64.07940008672037).abs() < 1e-9);
        assert_eq!(far.delta_z_db, 0.0);
    }

    #[test]
    fn swing_bias_matches_the_chain_oracle() {
        let near = chain_result(2000.0, 10.0);
        assert!((near.delta_z_db - 5.923474837704518).abs() < 1e-6);
        // Evaluating the loss at the rounded swing amplitude 0.2994 deg
        // gives 5.91 dB; stay inside that coarser band too.
        assert!((near.delta_z_db - 5.91).abs() < 0.10);

        let far = chain_result(5000.0, 10.0);
        assert!((far.delta_z_db - 0.8368886416115231).abs() < 1e-6);
        assert!((far.delta_z_db - 0.84).abs() < 0.05);
    }

    #[test]
    fn bias_decomposes_into_pattern_loss_plus_small_range_terms() {
        for standoff in [2000.0, 3000.0, 4000.0, 5000.0] {
            for theta in [-10.0, -4.0, 1.0, 10.0] {
                let cfg = SceneConfig::default().with_standoff(standoff);
                let state = scene_state(&cfg, theta).unwrap();
                let loss = pattern_loss_db(state.off_axis_deg, &AntennaPattern::default()).unwrap();
                let result = chain_result(standoff, theta);
                assert!(
                    (result.delta_z_db - loss).abs() < 0.01,
                    "range terms too large at L={standoff}, theta={theta}"
                );
            }
        }
    }

    #[test]
    fn compare_is_a_signed_difference() {
        assert_eq!(compare_reflectivity(56.06, 56.06), 0.0);
        assert!((compare_reflectivity(50.15, 56.06) - (-5.91)).abs() < 1e-12);
        assert!((compare_reflectivity(57.0, 56.06) - 0.94).abs() < 1e-12);
    }

    #[test]
    fn dbz_transform_and_round_trip() {
        assert_eq!(linear_to_dbz(1.0).unwrap(), 0.0);
        assert_eq!(linear_to_dbz(100.0).unwrap(), 20.0);
        assert!((linear_to_dbz(3.1622776601683795).unwrap() - 5.0).abs() < 1e-12);
        for z in [1e-3, 0.5, 1.0, 42.0, 1e6] {
            let round = dbz_to_linear(linear_to_dbz(z).unwrap());
            assert!(((round - z) / z).abs() < 1e-12);
        }
        assert!(linear_to_dbz(0.0).is_err());
        assert!(linear_to_dbz(-1.0).is_err());
    }

    #[test]
    fn far_field_bound_matches_the_beamwidth_rule() {
        let params = RadarParams::default();
        let min_range = far_field_min_range_m(&params).unwrap();
        assert!((min_range - 312.62).abs() < 1e-9);

        let wide = RadarParams {
            beamwidth_deg: 2.0,
            ..params.clone()
        };
        assert!((far_field_min_range_m(&wide).unwrap() - 78.155).abs() < 1e-9);

        let stretched = RadarParams {
            wavelength_m: 2.0 * params.wavelength_m,
            ..params
        };
        let doubled = far_field_min_range_m(&stretched).unwrap();
        assert!((doubled / min_range - 2.0).abs() < 1e-12);
    }

    #[test]
    fn near_field_ranges_are_gated_unless_overridden() {
        let cfg = SceneConfig::default().with_standoff(200.0);
        let state = scene_state(&cfg, 1.0).unwrap();
        let gated = sphere_reflectivity_dbz(
            &RadarParams::default(),
            &SphereTarget::default(),
            &state,
            &AntennaPattern::default(),
            200.0,
            false,
        );
        assert!(matches!(gated, Err(Error::NearField { .. })));

        let overridden = sphere_reflectivity_dbz(
            &RadarParams::default(),
            &SphereTarget::default(),
            &state,
            &AntennaPattern::default(),
            200.0,
            true,
        );
        assert!(overridden.is_ok());
    }

    #[test]
    fn out_of_lobe_states_propagate_the_lobe_error() {
        let cfg = SceneConfig {
            tether_length_m: 300.0,
            standoff_distance_m: 2000.0,
            theta_min_deg: -80.0,
            theta_max_deg: 80.0,
            ..SceneConfig::default()
        };
        let state = scene_state(&cfg, 80.0).unwrap();
        assert!(state.off_axis_deg > 0.5);
        let result = sphere_reflectivity_dbz(
            &RadarParams::default(),
            &SphereTarget::default(),
            &state,
            &AntennaPattern::default(),
            2000.0,
            false,
        );
        assert!(matches!(result, Err(Error::OutOfLobe { .. })));
    }

    #[test]
    fn received_power_rejects_nonpositive_inputs() {
        let params = RadarParams::default();
        assert!(received_power_db(&params, 0.0, 100.0).is_err());
        assert!(received_power_db(&params, 0.1, 0.0).is_err());
        assert!(received_power_linear(&params, -0.1, 100.0).is_err());
    }

    #[test]
    fn params_validation_names_the_offending_key() {
        let bad_wavelength = RadarParams {
            wavelength_m: 0.0,
            ..RadarParams::default()
        };
        match bad_wavelength.validate() {
            Err(Error::InvalidConfig { key, .. }) => assert_eq!(key, "wavelength_m"),
            other => panic!("expected InvalidConfig, got {other:?}"),
        }
        let bad_loss = RadarParams {
            atmospheric_loss_db_per_km: -0.1,
            ..RadarParams::default()
        };
        assert!(bad_loss.validate().is_err());
    }
}
