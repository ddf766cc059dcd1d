//! Normalized-sinc antenna pattern: off-boresight attenuation factors and
//! the resulting reflectivity loss in decibels.

use crate::error::{Error, Result};

/// Pencil-beam pattern model.
///
/// The first null of the one-way pattern sits at half of `beamwidth_deg`;
/// `pattern_exponent` counts how many sinc factors multiply the received
/// power (2 = pattern applied on transmit and receive, 1 = one way).
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaPattern {
    /// Beamwidth parameter, degrees.
    pub beamwidth_deg: f64,
    /// Number of pattern factors applied to power; 1 or 2.
    pub pattern_exponent: u32,
}

impl Default for AntennaPattern {
    fn default() -> Self {
        Self {
            beamwidth_deg: 1.0,
            pattern_exponent: 2,
        }
    }
}

impl AntennaPattern {
    /// Checks the field invariants, naming the offending key on failure.
    pub fn validate(&self) -> Result<()> {
        if !self.beamwidth_deg.is_finite() || self.beamwidth_deg <= 0.0 {
            return Err(Error::config(
                "beamwidth_deg",
                format!("must be positive and finite (got {})", self.beamwidth_deg),
            ));
        }
        if self.pattern_exponent != 1 && self.pattern_exponent != 2 {
            return Err(Error::config(
                "pattern_exponent",
                format!("must be 1 or 2 (got {})", self.pattern_exponent),
            ));
        }
        Ok(())
    }

    /// Angle of the pattern's first null, degrees.
    pub fn first_null_deg(&self) -> f64 {
        self.beamwidth_deg / 2.0
    }
}

/// `sin(pi x) / (pi x)` with the removable singularity filled: exactly 1 at
/// `x = 0` and exactly 0 at every other integer.
pub fn normalized_sinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x == x.trunc() {
        return 0.0;
    }
    let px = std::f64::consts::PI * x;
    px.sin() / px
}

/// One-way pattern attenuation at `beta_deg` off boresight: the magnitude of
/// the normalized sinc evaluated against half the beamwidth, clamped into
/// `[0, 1]`. Callers pass angle magnitudes; the pattern is even.
pub fn pattern_factor(beta_deg: f64, pattern: &AntennaPattern) -> Result<f64> {
    pattern.validate()?;
    if !beta_deg.is_finite() || beta_deg < 0.0 {
        return Err(Error::domain(format!(
            "off-axis angle must be finite and non-negative (got {beta_deg})"
        )));
    }
    let x = beta_deg / pattern.first_null_deg();
    Ok(normalized_sinc(x).abs().min(1.0))
}

/// Pattern-induced power loss in dB, non-negative, defined strictly inside
/// the first null. `pattern_exponent` scales the one-way loss.
pub fn pattern_loss_db(beta_deg: f64, pattern: &AntennaPattern) -> Result<f64> {
    let factor = pattern_factor(beta_deg, pattern)?;
    let null_deg = pattern.first_null_deg();
    if beta_deg >= null_deg {
        return Err(Error::OutOfLobe { beta_deg, null_deg });
    }
    // factor > 0 strictly inside the null, so the logarithm is finite.
    let single_db = -10.0 * factor.log10();
    let loss = f64::from(pattern.pattern_exponent) * single_db;
    // log10(1) carries a negative zero through the sign flip; normalize it.
    Ok(if loss == 0.0 { 0.0 } else { loss })
}
