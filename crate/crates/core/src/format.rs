//! Number formatting used by the comparison tables.

use alloc::format;
use alloc::string::String;

/// Four significant digits in `d.dddEx` form, e.g. `9.438E6`.
pub fn scientific(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.3E}")
    } else {
        format!("{value}")
    }
}

/// Two decimal places, e.g. `4491.17`.
pub fn fixed(value: f64) -> String {
    format!("{value:.2}")
}

/// Fixed notation below `10^4`, scientific from there on.
pub fn auto(value: f64) -> String {
    if value.abs() < 1e4 {
        fixed(value)
    } else {
        scientific(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    Scientific,
    Fixed,
    #[default]
    Auto,
}

impl Notation {
    pub fn format(self, value: f64) -> String {
        match self {
            Notation::Scientific => scientific(value),
            Notation::Fixed => fixed(value),
            Notation::Auto => auto(value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(scientific(9_437_500.0), "9.438E6");
        assert_eq!(scientific(200.0), "2.000E2");
        assert_eq!(scientific(44_444.44), "4.444E4");
        assert_eq!(scientific(0.00012346), "1.235E-4");
        assert_eq!(scientific(f64::INFINITY), "inf");
        assert_eq!(fixed(4491.166666), "4491.17");
        assert_eq!(fixed(0.655), "0.66");
        assert_eq!(auto(4491.166666), "4491.17");
        assert_eq!(auto(9_437_500.0), "9.438E6");
        assert_eq!(Notation::Scientific.format(200.0), "2.000E2");
    }
}
