//! Decimal (SI) byte quantities such as `1TB` or `100MB/s`.

use crate::error::{Error, Result};

const SUFFIXES: [(&str, f64); 6] = [
    ("P", 1e15),
    ("T", 1e12),
    ("G", 1e9),
    ("M", 1e6),
    ("K", 1e3),
    ("", 1.0),
];

/// Parses a byte count with an optional SI prefix (powers of ten), an
/// optional `B` and, for rates, an optional `/s`.
pub fn parse_bytes(text: &str) -> Result<f64> {
    let trimmed = text.trim();
    let body = trimmed.strip_suffix("/s").unwrap_or(trimmed).trim_end();
    let upper = body.to_ascii_uppercase();
    let upper = upper.strip_suffix('B').unwrap_or(&upper);
    let split = upper
        .find(|c: char| c.is_ascii_alphabetic() && c != 'E')
        .unwrap_or(upper.len());
    let (number, prefix) = upper.split_at(split);
    let scale = SUFFIXES
        .iter()
        .find(|(s, _)| *s == prefix.trim())
        .map(|(_, m)| *m)
        .ok_or_else(|| Error::Usage(format!("unknown size suffix in '{text}'")))?;
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("cannot parse size '{text}'")))?;
    Ok(value * scale)
}
