use crate::error::{Error, Result};

/// Largest device count accepted. Binomial coefficients beyond this point
/// lose too much precision in `f64` to be trusted.
pub const MAX_DEVICES: u32 = 1000;

/// A k-of-n system: `n` devices, of which at least `k` must be operational,
/// each with exponential failures of mean `mttf` and repairs of mean `mttr`.
///
/// MTTF and MTTR are in the same, otherwise unspecified, time unit (hours by
/// convention). Every MTTDL produced from a config is in that unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    n: u32,
    k: u32,
    mttf: f64,
    mttr: f64,
}

impl SystemConfig {
    pub fn new(n: u32, k: u32, mttf: f64, mttr: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1"));
        }
        if n > MAX_DEVICES {
            return Err(Error::InvalidConfig("n must not exceed 1000"));
        }
        if k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1"));
        }
        if k > n {
            return Err(Error::InvalidConfig("k must not exceed n"));
        }
        if !(mttf.is_finite() && mttf > 0.0) {
            return Err(Error::InvalidConfig("mttf must be positive and finite"));
        }
        if !(mttr.is_finite() && mttr > 0.0) {
            return Err(Error::InvalidConfig("mttr must be positive and finite"));
        }
        Ok(Self { n, k, mttf, mttr })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mttf(&self) -> f64 {
        self.mttf
    }

    pub fn mttr(&self) -> f64 {
        self.mttr
    }

    /// Fault tolerance `n - k`: simultaneous failures survived.
    pub fn fault_tolerance(&self) -> u32 {
        self.n - self.k
    }

    /// Per-device failure rate λ = 1/MTTF.
    pub fn failure_rate(&self) -> f64 {
        1.0 / self.mttf
    }

    /// Per-device repair rate μ = 1/MTTR.
    pub fn repair_rate(&self) -> f64 {
        1.0 / self.mttr
    }

    /// MTTF / MTTR.
    pub fn ratio(&self) -> f64 {
        self.mttf / self.mttr
    }

    /// The same system with both MTTF and MTTR multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.n, self.k, self.mttf * factor, self.mttr * factor)
    }
}
