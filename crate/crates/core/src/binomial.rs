use alloc::vec::Vec;

/// C(n, r) by the multiplicative method, never through factorials.
#[cfg(test)]
pub(crate) fn binomial(n: u32, r: u32) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    let base = f64::from(n - r);
    (1..=r).fold(1.0, |acc, i| {
        let i = f64::from(i);
        acc * (base + i) / i
    })
}

/// `[C(n, 0), C(n, 1), ..., C(n, upto)]`, built with the same running
/// product as a single coefficient.
pub(crate) fn binomial_row(n: u32, upto: u32) -> Vec<f64> {
    let mut row = Vec::with_capacity(upto as usize + 1);
    let mut c = 1.0;
    row.push(c);
    for j in 1..=upto {
        c = c * f64::from(n - j + 1) / f64::from(j);
        row.push(c);
    }
    row
}
