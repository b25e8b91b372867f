use num_traits::Float;

use crate::{Error, Result};

pub const DEFAULT_FACTORIAL_CAP: u32 = 400;

/// `ln n!` for `n <= DEFAULT_FACTORIAL_CAP`.
pub fn log_factorial(n: u32) -> Result<f64> {
    log_factorial_capped(n, DEFAULT_FACTORIAL_CAP)
}

pub fn log_factorial_capped(n: u32, cap: u32) -> Result<f64> {
    if n > cap {
        return Err(Error::FactorialCap { n, cap });
    }
    if n <= 20 {
        // exact in u64, a single rounding to f64 before the log
        let exact: u64 = (2..=u64::from(n)).product();
        return Ok((exact as f64).ln());
    }
    let mut acc = (2_432_902_008_176_640_000u64 as f64).ln();
    for k in 21..=n {
        acc += f64::from(k).ln();
    }
    Ok(acc)
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn log_binomial(n: u32, k: u32) -> Result<f64> {
    if k > n {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(log_factorial(n)? - log_factorial(k)? - log_factorial(n - k)?)
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u32, k: u32) -> Result<f64> {
    if k > n {
        return Ok(0.0);
    }
    if let Some(exact) = binomial_exact(n, k) {
        return Ok(exact as f64);
    }
    Ok(log_binomial(n, k)?.exp().round())
}

/// `C(n, k)` as an exact integer, `None` on overflow.
pub(crate) fn binomial_exact(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..u128::from(k) {
        acc = acc.checked_mul(u128::from(n) - i)? / (i + 1);
    }
    Some(acc)
}
