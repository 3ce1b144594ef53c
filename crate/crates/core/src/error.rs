use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A [`SystemConfig`](crate::SystemConfig) invariant does not hold.
    InvalidConfig(&'static str),
    /// An argument to one of the ancillary calculators is out of range.
    InvalidArgument(&'static str),
    /// A [`SimulationSpec`](crate::SimulationSpec) invariant does not hold.
    InvalidSpec(&'static str),
    /// The result is not representable as a finite, positive `f64`.
    Overflow { model: &'static str },
    /// Tridiagonal elimination produced a non-positive or non-finite pivot.
    NumericInstability { state: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid simulation spec: {msg}"),
            Error::Overflow { model } => {
                write!(
                    f,
                    "{model}: result is not representable in double precision"
                )
            }
            Error::NumericInstability { state } => {
                write!(f, "linear system: non-positive pivot at state {state}")
            }
        }
    }
}

impl core::error::Error for Error {}
