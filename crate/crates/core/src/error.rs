//! Error types shared across the library.

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the simulator library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A configuration field failed validation; `key` names the offending field.
    #[error("config error: {key}: {message}")]
    InvalidConfig { key: String, message: String },

    /// An argument fell outside an operation's mathematical domain.
    #[error("domain error: {message}")]
    Domain { message: String },

    /// The off-axis angle reached or passed the antenna pattern's first null,
    /// where the main-lobe loss model stops being meaningful.
    #[error(
        "off-axis angle {beta_deg} deg lies at or beyond the pattern's first null at {null_deg} deg"
    )]
    OutOfLobe { beta_deg: f64, null_deg: f64 },

    /// The slant range is short of the far-field minimum and overriding was
    /// not requested.
    #[error(
        "slant range {range_m} m is inside the far-field minimum {min_range_m} m; \
         set allow_near_field to override"
    )]
    NearField { range_m: f64, min_range_m: f64 },

    /// A series evaluation produced a non-finite value at the given order.
    #[error("series evaluation became non-finite at order {order}")]
    NonFiniteSeries { order: usize },

    /// Scene vectors collapsed to zero length, so directions are undefined.
    #[error("degenerate geometry: {message}")]
    DegenerateGeometry { message: String },
}

impl Error {
    /// Convenience constructor for [`Error::InvalidConfig`].
    pub fn config(key: &str, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// Convenience constructor for [`Error::Domain`].
    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain {
            message: message.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_offending_key() {
        let err = Error::config("tether_length_m", "must be positive");
        assert!(err.to_string().contains("tether_length_m"));
    }

    #[test]
    fn non_finite_series_names_the_order() {
        let err = Error::NonFiniteSeries { order: 17 };
        assert!(err.to_string().contains("17"));
    }
}
