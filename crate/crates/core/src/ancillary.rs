//! Reliability calculators that do not depend on a system configuration.

use crate::error::{Error, Result};

const SECONDS_PER_HOUR: f64 = 3600.0;

/// Probability of surviving `t` time units without data loss, `e^(-t/MTTDL)`.
pub fn reliability_at(mttdl: f64, t: f64) -> Result<f64> {
    if mttdl.is_nan() || mttdl <= 0.0 {
        return Err(Error::InvalidArgument("mttdl must be positive"));
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::InvalidArgument("time must be non-negative"));
    }
    Ok(libm::exp(-t / mttdl))
}

/// Probability of reading `bits_read` bits without an unrecoverable read
/// error, `(1 - ber)^bits_read`.
///
/// Evaluated as `exp(bits · ln1p(-ber))`. Forming `1 - ber` first would
/// round away most of a `1e-14` error rate before the power is taken.
pub fn ure_survival_probability(bit_error_rate: f64, bits_read: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&bit_error_rate) {
        return Err(Error::InvalidArgument("bit error rate must be in [0, 1)"));
    }
    if !bits_read.is_finite() || bits_read < 0.0 {
        return Err(Error::InvalidArgument("bits read must be non-negative"));
    }
    if bit_error_rate == 0.0 || bits_read == 0.0 {
        return Ok(1.0);
    }
    Ok(libm::exp(bits_read * libm::log1p(-bit_error_rate)))
}

/// Minimum rebuild time in hours for `capacity` bytes at `io_rate` bytes/s.
pub fn rebuild_time_floor(capacity: f64, io_rate: f64) -> Result<f64> {
    if !capacity.is_finite() || capacity < 0.0 {
        return Err(Error::InvalidArgument("capacity must be non-negative"));
    }
    if !io_rate.is_finite() || io_rate <= 0.0 {
        return Err(Error::InvalidArgument("io rate must be positive"));
    }
    Ok(capacity / io_rate / SECONDS_PER_HOUR)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reliability() {
        assert_eq!(reliability_at(123.0, 0.0).unwrap(), 1.0);
        assert!((reliability_at(50.0, 50.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        // 0.977980142944... from 50-digit arithmetic.
        assert!((reliability_at(4491.17, 100.0).unwrap() - 0.977_980_142_944).abs() < 1e-12);
        assert!(reliability_at(0.0, 1.0).is_err());
        assert!(reliability_at(-5.0, 1.0).is_err());
        assert!(reliability_at(5.0, -1.0).is_err());
        assert!(reliability_at(5.0, f64::NAN).is_err());
    }

    #[test]
    fn ure() {
        // 50-digit references: 0.527292424043..., 0.938004999531...
        let eight_tb = 8.0 * 8.0e12;
        assert!(
            (ure_survival_probability(1e-14, eight_tb).unwrap() - 0.527_292_424_043).abs() < 1e-11
        );
        assert!(
            (ure_survival_probability(1e-15, 6.4e13).unwrap() - 0.938_004_999_531).abs() < 1e-11
        );
        assert_eq!(ure_survival_probability(0.0, 1e30).unwrap(), 1.0);
        assert_eq!(ure_survival_probability(1e-3, 0.0).unwrap(), 1.0);
        assert!(ure_survival_probability(1.0, 1.0).is_err());
        assert!(ure_survival_probability(-1e-14, 1.0).is_err());
        assert!(ure_survival_probability(1e-14, -1.0).is_err());
    }

    #[test]
    fn rebuild_floor() {
        let h = rebuild_time_floor(1e12, 1e8).unwrap();
        assert!((h - 2.777_777_777_777_778).abs() < 1e-12);
        assert_eq!(rebuild_time_floor(0.0, 5.0).unwrap(), 0.0);
        let h = rebuild_time_floor(750e9, 63e6).unwrap();
        assert!((h - 3.3069).abs() < 1e-4);
        assert!(rebuild_time_floor(1.0, 0.0).is_err());
        assert!(rebuild_time_floor(-1.0, 1.0).is_err());
    }
}
